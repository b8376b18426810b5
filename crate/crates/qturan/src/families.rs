//! Constructors for the named graph families: Turán graphs, complete
//! multipartite graphs, fans, books, odd cycles, complete split graphs and
//! the two fan-extremal constructions G¹/G² (a bipartite Turán graph with a
//! prescribed graph embedded in one side).
//!
//! Labeling convention: parts are consecutive label blocks, largest part
//! first; embedded cliques occupy the lowest labels of part 1.

use crate::error::{Error, Result};
use crate::graph::{cycle, Graph};
use serde::{Deserialize, Serialize};

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Balanced part sizes of T_r(n), largest first.
pub fn turan_sizes(r: usize, n: usize) -> Vec<usize> {
    let q = n / r;
    let t = n % r;
    let mut sizes = vec![q + 1; t];
    sizes.extend(vec![q; r - t]);
    sizes
}

/// t_r(n): edge count of the Turán graph.
pub fn turan_edge_count(r: usize, n: usize) -> usize {
    choose2(n) - turan_sizes(r, n).iter().map(|&s| choose2(s)).sum::<usize>()
}

/// Complete multipartite graph with the given part sizes as consecutive
/// label blocks.
pub fn complete_multipartite(sizes: &[usize]) -> Result<Graph> {
    if sizes.is_empty() || sizes.iter().any(|&s| s == 0) {
        return Err(Error::invalid("part sizes must be nonempty and positive"));
    }
    let n: usize = sizes.iter().sum();
    if n > crate::graph::MAX_VERTICES {
        return Err(Error::Capacity {
            what: "multipartite vertices",
            limit: crate::graph::MAX_VERTICES,
            got: n,
        });
    }
    let mut g = Graph::complete(n);
    let mut start = 0;
    for &s in sizes {
        for u in start..start + s {
            for v in (u + 1)..start + s {
                g = g.without_edge(u, v);
            }
        }
        start += s;
    }
    Ok(g)
}

/// Turán graph T_r(n): balanced complete r-partite graph on n vertices.
pub fn turan(r: usize, n: usize) -> Result<Graph> {
    if r == 0 || r > n {
        return Err(Error::invalid(format!("need 1 <= r <= n, got r={r}, n={n}")));
    }
    complete_multipartite(&turan_sizes(r, n))
}

/// (k,t)-fan: k cliques K_t sharing exactly one common vertex (label 0).
pub fn fan(k: usize, t: usize) -> Result<Graph> {
    if k < 1 || t < 2 {
        return Err(Error::invalid("fan needs k >= 1 and t >= 2"));
    }
    let n = (t - 1) * k + 1;
    if n > crate::graph::MAX_VERTICES {
        return Err(Error::Capacity {
            what: "fan vertices",
            limit: crate::graph::MAX_VERTICES,
            got: n,
        });
    }
    let mut edges = Vec::new();
    for c in 0..k {
        let block: Vec<usize> = std::iter::once(0)
            .chain((1 + c * (t - 1))..(1 + (c + 1) * (t - 1)))
            .collect();
        for i in 0..block.len() {
            for j in (i + 1)..block.len() {
                edges.push((block[i], block[j]));
            }
        }
    }
    Ok(Graph::from_edges(n, &edges))
}

/// Book B_k = K_2 ∨ K̄_k: k triangles sharing one common edge.
pub fn book(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::invalid("book needs k >= 1"));
    }
    Graph::complete(2).join(&Graph::empty(k))
}

/// Odd cycle C_{2k+1}.
pub fn odd_cycle(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::invalid("odd cycle needs k >= 1"));
    }
    if 2 * k + 1 > crate::graph::MAX_VERTICES {
        return Err(Error::Capacity {
            what: "cycle vertices",
            limit: crate::graph::MAX_VERTICES,
            got: 2 * k + 1,
        });
    }
    Ok(cycle(2 * k + 1))
}

/// Complete split graph K_a ∨ K̄_{n-a}.
pub fn complete_split(a: usize, n: usize) -> Result<Graph> {
    if a == 0 || a >= n {
        return Err(Error::invalid(format!("need 1 <= a < n, got a={a}, n={n}")));
    }
    Graph::complete(a).join(&Graph::empty(n - a))
}

/// The deterministic "almost (k-1)-regular" graph on 2k-1 vertices with
/// k² - 3k/2 edges and maximum degree k-1, for even k: edges are taken
/// greedily in circulant order (distance 1, 2, ...) subject to the degree
/// cap, until the edge budget is reached.
fn g2_embedded(k: usize) -> Graph {
    debug_assert!(k >= 2 && k % 2 == 0);
    let m = 2 * k - 1;
    let target = k * k - 3 * k / 2;
    let cap = k - 1;
    let mut g = Graph::empty(m);
    let mut count = 0;
    'outer: for d in 1..m {
        for i in 0..m {
            let j = (i + d) % m;
            let (u, v) = (i.min(j), i.max(j));
            if u == v || g.has_edge(u, v) || g.degree(u) >= cap || g.degree(v) >= cap {
                continue;
            }
            g = g.with_edge(u, v);
            count += 1;
            if count == target {
                break 'outer;
            }
        }
    }
    assert_eq!(g.edge_count(), target, "greedy circulant missed the edge budget");
    assert!(g.max_degree() <= cap);
    g
}

/// Fan-extremal graph: T_2(n) with, on one side, either two disjoint K_k
/// (odd k, n >= 4k-1) or the k² - 3k/2 edge graph from [`g2_embedded`]
/// (even k, n >= 4k-3). Labels 0..⌈n/2⌉ are the side carrying the embedding.
pub fn efgg_extremal(n: usize, k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::invalid("fan-extremal construction needs k >= 2"));
    }
    let threshold = if k % 2 == 1 { 4 * k - 1 } else { 4 * k - 3 };
    if n < threshold {
        return Err(Error::invalid(format!(
            "fan-extremal construction needs n >= {threshold} for k = {k}, got n = {n}"
        )));
    }
    let mut g = turan(2, n)?;
    if k % 2 == 1 {
        // two vertex-disjoint K_k on the lowest labels of part 1
        for copy in 0..2 {
            let base = copy * k;
            for u in base..base + k {
                for v in (u + 1)..base + k {
                    g = g.with_edge(u, v);
                }
            }
        }
    } else {
        let h = g2_embedded(k);
        for (u, v) in h.edges() {
            g = g.with_edge(u, v);
        }
    }
    Ok(g)
}

/// A named family with its resolved graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyKind {
    Turan { r: usize, n: usize },
    CompleteMultipartite { sizes: Vec<usize> },
    Fan { k: usize, t: usize },
    Book { k: usize },
    OddCycle { k: usize },
    CompleteSplit { a: usize, n: usize },
    G1 { n: usize, k: usize },
    G2 { n: usize, k: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub resolved: Graph,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind) -> Result<Self> {
        let resolved = match &kind {
            FamilyKind::Turan { r, n } => turan(*r, *n)?,
            FamilyKind::CompleteMultipartite { sizes } => complete_multipartite(sizes)?,
            FamilyKind::Fan { k, t } => fan(*k, *t)?,
            FamilyKind::Book { k } => book(*k)?,
            FamilyKind::OddCycle { k } => odd_cycle(*k)?,
            FamilyKind::CompleteSplit { a, n } => complete_split(*a, *n)?,
            FamilyKind::G1 { n, k } => {
                if k % 2 == 0 {
                    return Err(Error::invalid("G1 takes odd k"));
                }
                efgg_extremal(*n, *k)?
            }
            FamilyKind::G2 { n, k } => {
                if k % 2 == 1 {
                    return Err(Error::invalid("G2 takes even k"));
                }
                efgg_extremal(*n, *k)?
            }
        };
        Ok(FamilySpec { kind, resolved })
    }

    /// Parse the compact text form used by CLI flags, e.g. "turan:3,7",
    /// "fan:2,4", "book:3", "cycle:5", "clique:4", "split:2,12",
    /// "multipartite:3,2,2", "efgg:12,3".
    pub fn parse(text: &str) -> Result<Self> {
        let (name, args) = text
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("family spec without ':': {text}")))?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| {
                a.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::invalid(format!("bad number {a:?} in family spec")))
            })
            .collect::<Result<_>>()?;
        let arity = |want: usize| -> Result<()> {
            if nums.len() == want {
                Ok(())
            } else {
                Err(Error::invalid(format!(
                    "{name} takes {want} parameter(s), got {}",
                    nums.len()
                )))
            }
        };
        let kind = match name {
            "turan" => {
                arity(2)?;
                FamilyKind::Turan { r: nums[0], n: nums[1] }
            }
            "multipartite" => FamilyKind::CompleteMultipartite { sizes: nums },
            "fan" => {
                arity(2)?;
                FamilyKind::Fan { k: nums[0], t: nums[1] }
            }
            "book" => {
                arity(1)?;
                FamilyKind::Book { k: nums[0] }
            }
            "cycle" => {
                arity(1)?;
                let m = nums[0];
                if m < 3 || m % 2 == 0 {
                    return Err(Error::invalid(format!(
                        "cycle:{m} is not an odd cycle; use g6 input for other graphs"
                    )));
                }
                FamilyKind::OddCycle { k: (m - 1) / 2 }
            }
            "oddcycle" => {
                arity(1)?;
                FamilyKind::OddCycle { k: nums[0] }
            }
            "clique" | "turan-clique" => {
                arity(1)?;
                FamilyKind::Turan { r: nums[0], n: nums[0] }
            }
            "split" => {
                arity(2)?;
                FamilyKind::CompleteSplit { a: nums[0], n: nums[1] }
            }
            "efgg" => {
                arity(2)?;
                let (n, k) = (nums[0], nums[1]);
                if k % 2 == 1 {
                    FamilyKind::G1 { n, k }
                } else {
                    FamilyKind::G2 { n, k }
                }
            }
            other => {
                return Err(Error::invalid(format!("unknown family {other:?}")));
            }
        };
        FamilySpec::new(kind)
    }
}

impl std::fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.kind {
            FamilyKind::Turan { r, n } if r == n => write!(f, "clique:{r}"),
            FamilyKind::Turan { r, n } => write!(f, "turan:{r},{n}"),
            FamilyKind::CompleteMultipartite { sizes } => {
                let s: Vec<String> = sizes.iter().map(|x| x.to_string()).collect();
                write!(f, "multipartite:{}", s.join(","))
            }
            FamilyKind::Fan { k, t } => write!(f, "fan:{k},{t}"),
            FamilyKind::Book { k } => write!(f, "book:{k}"),
            FamilyKind::OddCycle { k } => write!(f, "cycle:{}", 2 * k + 1),
            FamilyKind::CompleteSplit { a, n } => write!(f, "split:{a},{n}"),
            FamilyKind::G1 { n, k } | FamilyKind::G2 { n, k } => write!(f, "efgg:{n},{k}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turan_pinned_values() {
        let t = turan(3, 7).unwrap();
        assert_eq!(turan_sizes(3, 7), vec![3, 2, 2]);
        assert_eq!(t.edge_count(), 16);
        assert_eq!(turan_edge_count(3, 7), 16);

        assert_eq!(turan(2, 4).unwrap(), complete_multipartite(&[2, 2]).unwrap());
        assert_eq!(turan(2, 4).unwrap().edge_count(), 4);
        assert_eq!(turan(5, 5).unwrap(), Graph::complete(5));
        assert!(turan(8, 7).is_err());

        // parts are independent sets: one part of size 3 induces K̄_3
        let part = crate::graph::VertexSet::from_iter([0, 1, 2]);
        assert_eq!(t.induced(part).unwrap().edge_count(), 0);
    }

    #[test]
    fn turan_edge_bound() {
        // (1 - 1/r) n²/2 - r/8 <= t_r(n) <= (1 - 1/r) n²/2
        for r in 1..=6usize {
            for n in r..=60 {
                let t = turan_edge_count(r, n) as f64;
                let lead = (1.0 - 1.0 / r as f64) * (n * n) as f64 / 2.0;
                assert!(t <= lead + 1e-9, "upper bound fails r={r} n={n}");
                assert!(t >= lead - r as f64 / 8.0 - 1e-9, "lower bound fails r={r} n={n}");
            }
        }
    }

    #[test]
    fn fan_pinned_values() {
        assert_eq!(fan(1, 3).unwrap(), Graph::complete(3));
        let f23 = fan(2, 3).unwrap();
        assert_eq!((f23.n(), f23.edge_count()), (5, 6));
        let f24 = fan(2, 4).unwrap();
        assert_eq!((f24.n(), f24.edge_count()), (7, 12));
        // every clique shares exactly the hub
        assert_eq!(f24.degree(0), 6);
        assert!(fan(0, 3).is_err());
        assert!(fan(2, 1).is_err());
    }

    #[test]
    fn book_cycle_split_pinned_values() {
        let b2 = book(2).unwrap();
        assert_eq!((b2.n(), b2.edge_count()), (4, 5));
        assert_eq!(book(1).unwrap(), Graph::complete(3));

        assert_eq!(odd_cycle(2).unwrap(), crate::graph::cycle(5));

        let s = complete_split(2, 12).unwrap();
        assert_eq!(s.edge_count(), 21);
        assert!(complete_split(12, 12).is_err());
    }

    #[test]
    fn efgg_pinned_values() {
        // odd k = 3: t_2(12) + 2·C(3,2) = 36 + 6
        let g = efgg_extremal(12, 3).unwrap();
        assert_eq!(g.edge_count(), 42);
        // even k = 2: t_2(13) + (4 - 3) = 42 + 1
        let g = efgg_extremal(13, 2).unwrap();
        assert_eq!(g.edge_count(), 43);
        // below threshold
        assert!(efgg_extremal(10, 3).is_err());
        assert!(efgg_extremal(4, 2).is_err());
    }

    #[test]
    fn g2_embedded_degree_budget() {
        for k in [2usize, 4, 6] {
            let g = g2_embedded(k);
            assert_eq!(g.n(), 2 * k - 1);
            assert_eq!(g.edge_count(), k * k - 3 * k / 2);
            assert!(g.max_degree() <= k - 1);
        }
    }

    #[test]
    fn family_spec_parsing() {
        for (text, n, e) in [
            ("turan:3,7", 7, 16),
            ("fan:2,4", 7, 12),
            ("book:3", 5, 7),
            ("cycle:5", 5, 5),
            ("clique:4", 4, 6),
            ("turan-clique:4", 4, 6),
            ("split:2,12", 12, 21),
            ("multipartite:3,2,2", 7, 16),
            ("efgg:12,3", 12, 42),
        ] {
            let spec = FamilySpec::parse(text).unwrap();
            assert_eq!((spec.resolved.n(), spec.resolved.edge_count()), (n, e), "{text}");
        }
        assert!(FamilySpec::parse("cycle:4").is_err());
        assert!(FamilySpec::parse("wheel:5").is_err());
        assert!(FamilySpec::parse("turan:3").is_err());
        assert!(FamilySpec::parse("turan").is_err());

        // round-trip through Display
        let spec = FamilySpec::parse("fan:2,4").unwrap();
        assert_eq!(FamilySpec::parse(&spec.to_string()).unwrap().kind, spec.kind);
    }
}
