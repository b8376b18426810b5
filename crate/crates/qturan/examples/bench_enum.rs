use qturan::enumerate::enumerate_ffree_collect;
use qturan::exec::Parallelism;
use qturan::graph::Graph;

fn main() {
    let par = Parallelism::default();
    let t = std::time::Instant::now();
    let got = enumerate_ffree_collect(7, None, None, &par).unwrap();
    println!("n=7 unrestricted: {} classes in {:?}", got.len(), t.elapsed());

    let k3 = Graph::complete(3);
    for n in [8usize, 9] {
        let t = std::time::Instant::now();
        let got = enumerate_ffree_collect(n, Some(&k3), None, &par).unwrap();
        println!("n={n} triangle-free: {} classes in {:?}", got.len(), t.elapsed());
    }

    let k4 = Graph::complete(4);
    for n in [8usize, 9] {
        let t = std::time::Instant::now();
        let got = enumerate_ffree_collect(n, Some(&k4), None, &par).unwrap();
        println!("n={n} K4-free: {} classes in {:?}", got.len(), t.elapsed());
    }
}
