use std::sync::Arc;
use std::time::Instant;
use dq_core::graded::*;
use dq_core::orbit::*;
use dq_core::qlie::*;
use dq_core::scalars::rat;
fn main() {
    let n: usize = std::env::args().nth(1).map(|s| s.parse().unwrap()).unwrap_or(2);
    let d: usize = std::env::args().nth(2).map(|s| s.parse().unwrap()).unwrap_or(4);
    let t0 = Instant::now();
    let ql = Arc::new(QuantumLie::new(n).unwrap());
    let g = GradedContext::new(ql.clone()).unwrap();
    let eig = if n == 2 { vec![rat(1, 1), rat(-1, 1)] } else { vec![rat(1, 1), rat(0, 1), rat(-1, 1)] };
    let o = OrbitContext::new(&g, OrbitSpec::new(n, eig).unwrap(), d).unwrap();
    println!("ctx {:?} {:?}", t0.elapsed(), o.character);
    let all = o.all_certs(d, &dq_core::certify::parse_specializations("generic").unwrap()).unwrap();
    for c in &all { println!("{c:?}"); }
    println!("pass {}", all.iter().all(|c| c.pass || c.info));
    println!("done {:?}", t0.elapsed());
}
