use std::sync::Arc;
use std::time::Instant;
use dq_core::derham::*;
use dq_core::graded::*;
use dq_core::qlie::*;
fn main() {
    let n: usize = std::env::args().nth(1).map(|s| s.parse().unwrap()).unwrap_or(2);
    let k: usize = std::env::args().nth(2).map(|s| s.parse().unwrap()).unwrap_or(3);
    let m: usize = std::env::args().nth(3).map(|s| s.parse().unwrap()).unwrap_or(3);
    let t0 = Instant::now();
    let ql = Arc::new(QuantumLie::new(n).unwrap());
    let g = GradedContext::new(ql.clone()).unwrap();
    let dr = DeRham::quantum(&g).unwrap();
    let mut all = component_certs(&dr, k.max(m)).unwrap();
    println!("comp {:?}", t0.elapsed());
    all.extend(d_squared_cert(&dr, k, m).unwrap());
    println!("d2 {:?}", t0.elapsed());
    all.extend(exactness_cert(&dr, k, m).unwrap());
    println!("exact {:?}", t0.elapsed());
    all.extend(classical_rank_certs(&dr, k, m).unwrap());
    all.extend(classical_limit_cert(&dr, m).unwrap());
    all.push(equivariance_cert(&dr, &g, 1, 1).unwrap());
    println!("cl {:?}", t0.elapsed());
    if n == 2 { all.extend(associativity_cert(&dr, 4).unwrap()); }
    println!("assoc {:?}", t0.elapsed());
    for c in &all { if !c.pass || c.context.contains("cohom") { println!("{c:?}"); } }
    println!("n={} pass {}", all.len(), all.iter().all(|c| c.pass || c.info));
    println!("done {:?}", t0.elapsed());
}
