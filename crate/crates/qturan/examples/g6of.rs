use qturan::families::FamilySpec;
use qturan::graph::graph6_encode;

fn main() {
    let arg = std::env::args().nth(1).expect("family spec");
    let spec = FamilySpec::parse(&arg).unwrap();
    println!("{}", graph6_encode(&spec.resolved).unwrap());
}
