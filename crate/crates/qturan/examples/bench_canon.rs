use qturan::canon::canonical_form;
use qturan::graph::Graph;

fn main() {
    // random graphs at n=9
    let t0 = std::time::Instant::now();
    let mut sink = 0u128;
    for seed in 0..20000u64 {
        let g = rg(9, seed * 7 + 1);
        sink ^= canonical_form(&g).unwrap().code;
    }
    println!("20000 random n=9 canons: {:?} (sink {sink})", t0.elapsed());

    // pathological symmetric cases
    for (name, g) in [
        ("empty9", Graph::empty(9)),
        ("complete9", Graph::complete(9)),
        ("k333", qturan::families::turan(3, 9).unwrap()),
        ("matching8", Graph::from_edges(8, &[(0,1),(2,3),(4,5),(6,7)])),
        ("2k4", Graph::complete(4).disjoint_union(&Graph::complete(4)).unwrap()),
        ("3k3", Graph::complete(3).disjoint_union(&Graph::complete(3)).unwrap().disjoint_union(&Graph::complete(3)).unwrap()),
        ("cycle9", qturan::graph::cycle(9)),
        ("petersen-ish", Graph::from_edges(10, &[(0,1),(1,2),(2,3),(3,4),(4,0),(5,7),(7,9),(9,6),(6,8),(8,5),(0,5),(1,6),(2,7),(3,8),(4,9)])),
    ] {
        let t = std::time::Instant::now();
        let mut s = 0u128;
        for _ in 0..1000 { s ^= canonical_form(&g).unwrap().code; }
        println!("{name}: 1000 canons in {:?} (sink {s})", t.elapsed());
    }
}

fn rg(n: usize, seed: u64) -> Graph {
    let mut state = seed | 1;
    let mut next = || { state ^= state << 13; state ^= state >> 7; state ^= state << 17; state };
    let mut edges = Vec::new();
    for u in 0..n { for v in (u+1)..n { if next() & 1 == 1 { edges.push((u,v)); } } }
    Graph::from_edges(n, &edges)
}
