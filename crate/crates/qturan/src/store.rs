//! On-disk cache of extremal records: one JSON document per (n, canonical
//! forbidden graph) key plus a graph6 sidecar listing every referenced
//! graph, one per line. Entries with a stale version stamp are recomputed.

use crate::canon::canonical_graph;
use crate::enumerate::{extremal_record, ExtremalRecord, RECORD_VERSION};
use crate::error::{Error, Result};
use crate::exec::Parallelism;
use crate::graph::{graph6_encode, Graph};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

pub struct RecordStore {
    dir: PathBuf,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecordSummary {
    pub key: String,
    pub n: usize,
    pub forbidden: String,
    pub ex: usize,
    pub ex_ssp: f64,
    pub classes: u64,
    pub version: u32,
}

impl RecordStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        RecordStore { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn key(n: usize, f_canonical_g6: &str) -> String {
        let hex: String = f_canonical_g6.bytes().map(|b| format!("{b:02x}")).collect();
        format!("n{n}-f{hex}")
    }

    fn json_path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Load the cached record, if present and current.
    pub fn load(&self, n: usize, f: &Graph) -> Result<Option<ExtremalRecord>> {
        let f6 = graph6_encode(&canonical_graph(f)?)?;
        let path = self.json_path(&Self::key(n, &f6));
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&path)
            .map_err(|e| Error::Store(format!("read {}: {e}", path.display())))?;
        let rec: ExtremalRecord = serde_json::from_str(&text)
            .map_err(|e| Error::Store(format!("parse {}: {e}", path.display())))?;
        if rec.version != RECORD_VERSION || rec.n != n || rec.forbidden != f6 {
            return Ok(None);
        }
        Ok(Some(rec))
    }

    /// Write the record and its graph6 sidecar.
    pub fn save(&self, rec: &ExtremalRecord) -> Result<()> {
        fs::create_dir_all(&self.dir)
            .map_err(|e| Error::Store(format!("create {}: {e}", self.dir.display())))?;
        let key = Self::key(rec.n, &rec.forbidden);
        let path = self.json_path(&key);
        let text = serde_json::to_string_pretty(rec)
            .map_err(|e| Error::Store(format!("serialize: {e}")))?;
        fs::write(&path, text)
            .map_err(|e| Error::Store(format!("write {}: {e}", path.display())))?;
        let mut lines: BTreeSet<&str> = BTreeSet::new();
        for g6 in rec
            .ex_graphs
            .iter()
            .chain(&rec.ex_ssp_graphs)
            .chain(&rec.near_ties)
        {
            lines.insert(g6);
        }
        let mut sidecar = String::new();
        for l in lines {
            sidecar.push_str(l);
            sidecar.push('\n');
        }
        let g6path = self.dir.join(format!("{key}.g6"));
        fs::write(&g6path, sidecar)
            .map_err(|e| Error::Store(format!("write {}: {e}", g6path.display())))?;
        Ok(())
    }

    /// Cached lookup or full recomputation.
    pub fn get_or_compute(
        &self,
        n: usize,
        f: &Graph,
        tol: f64,
        budget: Option<u64>,
        par: &Parallelism,
    ) -> Result<ExtremalRecord> {
        if let Some(rec) = self.load(n, f)? {
            return Ok(rec);
        }
        let rec = extremal_record(n, f, tol, budget, par)?;
        self.save(&rec)?;
        Ok(rec)
    }

    /// Summaries of every current record in the cache directory.
    pub fn list(&self) -> Result<Vec<RecordSummary>> {
        let mut out = Vec::new();
        let entries = match fs::read_dir(&self.dir) {
            Ok(e) => e,
            Err(_) => return Ok(out),
        };
        for entry in entries.flatten() {
            let path = entry.path();
            if path.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            let Ok(text) = fs::read_to_string(&path) else {
                continue;
            };
            let Ok(rec) = serde_json::from_str::<ExtremalRecord>(&text) else {
                continue;
            };
            out.push(RecordSummary {
                key: path
                    .file_stem()
                    .and_then(|s| s.to_str())
                    .unwrap_or_default()
                    .to_string(),
                n: rec.n,
                forbidden: rec.forbidden.clone(),
                ex: rec.ex,
                ex_ssp: rec.ex_ssp,
                classes: rec.classes,
                version: rec.version,
            });
        }
        out.sort_by(|a, b| (a.n, &a.forbidden).cmp(&(b.n, &b.forbidden)));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_version_gate() {
        let dir = std::env::temp_dir().join(format!("qturan-store-test-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let store = RecordStore::new(&dir);
        let par = Parallelism::default();
        let k3 = Graph::complete(3);

        assert!(store.load(5, &k3).unwrap().is_none());
        let rec = store.get_or_compute(5, &k3, 1e-10, None, &par).unwrap();
        assert_eq!(rec.ex, 6);
        // second call hits the cache
        let rec2 = store.load(5, &k3).unwrap().expect("cached");
        assert_eq!(rec2.ex_graphs, rec.ex_graphs);

        // sidecar exists and lists whole graphs
        let summaries = store.list().unwrap();
        assert_eq!(summaries.len(), 1);
        let g6 = dir.join(format!("{}.g6", summaries[0].key));
        let sidecar = fs::read_to_string(g6).unwrap();
        assert!(sidecar.lines().count() >= 2);
        for line in sidecar.lines() {
            crate::graph::graph6_decode(line).unwrap();
        }

        // stale version forces recomputation
        let path = dir.join(format!("{}.json", summaries[0].key));
        let mut doc: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        doc["version"] = serde_json::json!(0);
        fs::write(&path, doc.to_string()).unwrap();
        assert!(store.load(5, &k3).unwrap().is_none());

        let _ = fs::remove_dir_all(&dir);
    }
}
