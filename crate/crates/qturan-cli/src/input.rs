//! Flag parsing helpers: forbidden-graph specs and n ranges.

use anyhow::{anyhow, bail, Result};
use qturan::families::FamilySpec;
use qturan::graph::{graph6_decode, Graph};

/// `family:<spec>`, `g6:<string>`, or a bare family spec.
pub fn parse_forbidden(text: &str) -> Result<(Graph, String)> {
    if let Some(g6) = text.strip_prefix("g6:") {
        let g = graph6_decode(g6).map_err(|e| anyhow!("bad graph6 {g6:?}: {e}"))?;
        return Ok((g, format!("g6:{g6}")));
    }
    let famtext = text.strip_prefix("family:").unwrap_or(text);
    let spec = FamilySpec::parse(famtext).map_err(|e| anyhow!("bad family spec {famtext:?}: {e}"))?;
    let label = format!("family:{spec}");
    Ok((spec.resolved, label))
}

/// `7` or `4..9` (inclusive on both ends).
pub fn parse_n_range(text: &str) -> Result<(usize, usize)> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse()?;
        let hi: usize = hi.trim().parse()?;
        if lo > hi {
            bail!("empty range {text:?}");
        }
        Ok((lo, hi))
    } else {
        let n: usize = text.trim().parse()?;
        Ok((n, n))
    }
}
