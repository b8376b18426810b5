use qturan::enumerate::extremal_record;
use qturan::exec::Parallelism;
use qturan::graph::Graph;

fn main() {
    let par = Parallelism::default();
    let k3 = Graph::complete(3);
    println!("=== K3-free ===");
    for n in 3..=8 {
        let r = extremal_record(n, &k3, 1e-10, None, &par).unwrap();
        println!(
            "n={n}: ex={} Ex={:?} ex_ssp={:.9} Ex_ssp={:?} near={:?}",
            r.ex, r.ex_graphs, r.ex_ssp, r.ex_ssp_graphs, r.near_ties
        );
    }
    let k4 = Graph::complete(4);
    println!("=== K4-free ===");
    for n in 4..=9 {
        let t = std::time::Instant::now();
        let r = extremal_record(n, &k4, 1e-10, None, &par).unwrap();
        println!(
            "n={n}: ex={} Ex={:?} ex_ssp={:.9} Ex_ssp={:?} near={:?} classes={} ({:?})",
            r.ex, r.ex_graphs, r.ex_ssp, r.ex_ssp_graphs, r.near_ties, r.classes, t.elapsed()
        );
    }
}
