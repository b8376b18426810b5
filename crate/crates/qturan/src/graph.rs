//! Labeled simple graphs on at most 64 vertices, stored as one bitset row
//! per vertex, plus the graph6 interchange format.
//!
//! Everything downstream (spectra, enumeration, partitions) operates on this
//! type. A `Graph` is immutable after construction; "mutating" helpers return
//! a new value.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Hard vertex cap: one neighborhood is one machine word.
pub const MAX_VERTICES: usize = 64;

/// Set of vertices out of `0..n`, as a single word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet(0)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_iter(vs: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = 0u64;
        for v in vs {
            debug_assert!(v < MAX_VERTICES);
            bits |= 1 << v;
        }
        VertexSet(bits)
    }

    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && (self.0 >> v) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.0 |= 1 << v;
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(&self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn is_disjoint(&self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset_of(&self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Iterate members in increasing order.
    pub fn iter(&self) -> BitIter {
        BitIter(self.0)
    }
}

/// Iterator over set bits, lowest first.
pub struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// Undirected simple graph with adjacency bitset rows.
///
/// Invariants (checked on construction):
/// - `adj.len() == n`, `n <= 64`
/// - symmetry: `u ∈ adj[v] ⇔ v ∈ adj[u]`
/// - zero diagonal: `v ∉ adj[v]`
/// - no bits at positions `>= n`
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, e={}, [", self.n, self.edge_count())?;
        let mut first = true;
        for (u, v) in self.edges() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
            first = false;
        }
        write!(f, "])")
    }
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "vertex cap is {MAX_VERTICES}");
        Graph {
            n,
            adj: vec![0; n],
        }
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        let full = VertexSet::full(n).0;
        let adj = (0..n).map(|v| full & !(1 << v)).collect();
        Graph { n, adj }
    }

    /// Build from an edge list. Panics on out-of-range or loop edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            assert!(u < n && v < n && u != v, "bad edge ({u},{v}) for n={n}");
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        g
    }

    /// Build from raw adjacency rows, validating all invariants.
    pub fn from_adj(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "vertices",
                limit: MAX_VERTICES,
                got: n,
            });
        }
        let mask = VertexSet::full(n).0;
        for (v, &row) in adj.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::invalid(format!("adjacency row {v} has bits >= n")));
            }
            if (row >> v) & 1 == 1 {
                return Err(Error::invalid(format!("self-loop at vertex {v}")));
            }
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if (adj[u] >> v) & 1 != (adj[v] >> u) & 1 {
                    return Err(Error::invalid(format!("asymmetric adjacency at ({u},{v})")));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Neighborhood of `v` as a bitset.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && (self.adj[u] >> v) & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as ordered pairs (u < v), lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut higher = self.adj[u] & !(VertexSet::full(u + 1).0);
            while higher != 0 {
                let v = higher.trailing_zeros() as usize;
                higher &= higher - 1;
                out.push((u, v));
            }
        }
        out
    }

    /// Non-edges as ordered pairs (u < v).
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Copy with one extra edge. Panics if the edge is present or invalid.
    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        assert!(u < self.n && v < self.n && u != v && !self.has_edge(u, v));
        let mut g = self.clone();
        g.adj[u] |= 1 << v;
        g.adj[v] |= 1 << u;
        g
    }

    /// Copy with one edge removed. Panics if the edge is absent.
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        assert!(self.has_edge(u, v));
        let mut g = self.clone();
        g.adj[u] &= !(1 << v);
        g.adj[v] &= !(1 << u);
        g
    }

    /// Join: disjoint union plus all edges between the two vertex blocks.
    /// `self` keeps labels `0..n1`, `other` moves to `n1..n1+n2`.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let n1 = self.n;
        let n2 = other.n;
        if n1 + n2 > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "join vertices",
                limit: MAX_VERTICES,
                got: n1 + n2,
            });
        }
        let n = n1 + n2;
        let block2 = VertexSet::full(n).0 & !VertexSet::full(n1).0;
        let mut adj = Vec::with_capacity(n);
        for v in 0..n1 {
            adj.push(self.adj[v] | block2);
        }
        for v in 0..n2 {
            adj.push((other.adj[v] << n1) | VertexSet::full(n1).0);
        }
        Ok(Graph { n, adj })
    }

    /// Disjoint union, `other` relabeled to `n1..n1+n2`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n1 = self.n;
        let n = n1 + other.n;
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "union vertices",
                limit: MAX_VERTICES,
                got: n,
            });
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| r << n1));
        Ok(Graph { n, adj })
    }

    /// Complement within the same vertex set. Involution.
    pub fn complement(&self) -> Graph {
        let mask = VertexSet::full(self.n).0;
        let adj = (0..self.n)
            .map(|v| !self.adj[v] & mask & !(1u64 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Induced subgraph on `s`, relabeled by increasing original label.
    pub fn induced(&self, s: VertexSet) -> Result<Graph> {
        if s.is_empty() {
            return Err(Error::invalid("induced subgraph of the empty set"));
        }
        if !s.is_subset_of(VertexSet::full(self.n)) {
            return Err(Error::invalid("vertex set not within 0..n"));
        }
        let verts: Vec<usize> = s.iter().collect();
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
            }
        }
        Ok(g)
    }

    /// Induced subgraph with one vertex removed (labels above it shift down).
    pub fn delete_vertex(&self, v: usize) -> Graph {
        assert!(v < self.n && self.n > 0);
        let s = VertexSet(VertexSet::full(self.n).0 & !(1 << v));
        if s.is_empty() {
            return Graph::empty(0);
        }
        self.induced(s).expect("nonempty by construction")
    }

    /// Relabel by `perm`, where `perm[old] = new`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            let (pu, pv) = (perm[u], perm[v]);
            g.adj[pu] |= 1 << pv;
            g.adj[pv] |= 1 << pu;
        }
        g
    }

    /// Number of edges inside `s`.
    pub fn edges_within(&self, s: VertexSet) -> usize {
        s.iter()
            .map(|v| (self.adj[v] & s.0).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Number of edges between disjoint sets `a` and `b`.
    pub fn edges_between(&self, a: VertexSet, b: VertexSet) -> usize {
        debug_assert!(a.is_disjoint(b));
        a.iter().map(|v| (self.adj[v] & b.0).count_ones() as usize).sum()
    }

    /// Degree of `u` into the set `a`.
    pub fn degree_into(&self, u: usize, a: VertexSet) -> usize {
        (self.adj[u] & a.0).count_ones() as usize
    }

    /// Connected components as vertex sets, ordered by least vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 0..self.n {
            if (seen >> v) & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << v;
            loop {
                let mut grown = comp;
                let mut t = comp;
                while t != 0 {
                    let u = t.trailing_zeros() as usize;
                    t &= t - 1;
                    grown |= self.adj[u];
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
            out.push(VertexSet(comp));
        }
        out
    }

    /// Per-class internal edge counts and per-pair cross edge counts for a
    /// partition of all `n` vertices. Cross counts are indexed by (i, j),
    /// i < j, in lexicographic order.
    pub fn edge_counts(&self, classes: &[VertexSet]) -> Result<(Vec<usize>, Vec<usize>)> {
        let mut covered = 0u64;
        for (i, c) in classes.iter().enumerate() {
            if covered & c.0 != 0 {
                return Err(Error::invalid(format!("class {i} overlaps an earlier class")));
            }
            covered |= c.0;
        }
        if covered != VertexSet::full(self.n).0 {
            return Err(Error::invalid("classes do not cover all vertices"));
        }
        let internal: Vec<usize> = classes.iter().map(|c| self.edges_within(*c)).collect();
        let mut cross = Vec::new();
        for i in 0..classes.len() {
            for j in (i + 1)..classes.len() {
                cross.push(self.edges_between(classes[i], classes[j]));
            }
        }
        Ok((internal, cross))
    }
}

// ---------------------------------------------------------------------------
// graph6 (headerless short form, n <= 62)
// ---------------------------------------------------------------------------

/// Largest order encodable in the short form.
pub const GRAPH6_MAX: usize = 62;

/// Encode in graph6 short form: byte `n + 63`, then the upper triangle
/// x(i,j) for j = 1..n-1, i < j, packed into 6-bit groups offset by 63.
pub fn graph6_encode(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX {
        return Err(Error::Capacity {
            what: "graph6 order",
            limit: GRAPH6_MAX,
            got: n,
        });
    }
    let mut out = Vec::new();
    out.push((n as u8) + 63);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Decode graph6 short form. Bit-exact inverse of [`graph6_encode`]:
/// rejects bytes outside 63..=126, truncated input, trailing bytes and
/// nonzero padding bits, reporting the byte offset.
pub fn graph6_decode(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6 {
            offset: 0,
            reason: "empty input".into(),
        });
    }
    let check = |offset: usize| -> Result<u8> {
        let b = bytes[offset];
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6 {
                offset,
                reason: format!("byte {b} outside graph6 range 63..=126"),
            });
        }
        Ok(b - 63)
    };
    let n = check(0)? as usize;
    if n > GRAPH6_MAX {
        return Err(Error::Graph6 {
            offset: 0,
            reason: format!("order {n} exceeds short form"),
        });
    }
    let nbits = n * (n.saturating_sub(1)) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() < 1 + nbytes {
        return Err(Error::Graph6 {
            offset: bytes.len(),
            reason: format!("truncated: need {} bytes, got {}", 1 + nbytes, bytes.len()),
        });
    }
    if bytes.len() > 1 + nbytes {
        return Err(Error::Graph6 {
            offset: 1 + nbytes,
            reason: "trailing bytes after bit vector".into(),
        });
    }
    let mut adj = vec![0u64; n];
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = check(1 + bit / 6)?;
            if (byte >> (5 - bit % 6)) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    if nbits > 0 {
        let last = check(nbytes)?;
        let pad = nbytes * 6 - nbits;
        if pad > 0 && last & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6 {
                offset: nbytes,
                reason: "nonzero padding bits".into(),
            });
        }
    }
    Graph::from_adj(adj)
}

/// Standard small graphs used throughout the tests and the CLI.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n - 1, 0));
    Graph::from_edges(n, &edges)
}
