use qturan::canon::canonical_code;
use qturan::containment::is_free;
use qturan::enumerate::enumerate_ffree_collect;
use qturan::exec::Parallelism;
use qturan::graph::Graph;
use std::collections::HashSet;

fn main() {
    let par = Parallelism::default();
    for (fname, f) in [("K3", Graph::complete(3)), ("K4", Graph::complete(4))] {
        for n in 4usize..=6 {
            // brute force: all labeled graphs, filter F-free, group by canonical code
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
            let mut codes = HashSet::new();
            for bits in 0u64..(1 << pairs.len()) {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (bits >> i) & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges);
                if is_free(&g, &f) {
                    codes.insert(canonical_code(&g).unwrap());
                }
            }
            let stream = enumerate_ffree_collect(n, Some(&f), None, &par).unwrap();
            println!(
                "{fname}-free n={n}: brute {} vs stream {} -> {}",
                codes.len(),
                stream.len(),
                if codes.len() == stream.len() { "MATCH" } else { "MISMATCH" }
            );
        }
    }
}
