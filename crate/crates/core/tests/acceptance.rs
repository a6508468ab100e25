//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use dq_core::cert::{binomial, GradedCert};
use dq_core::certify::{self, RunConfig};
use dq_core::derham::{d_squared_cert, exactness_cert, DeRham};
use dq_core::graded::{graded_dim, GradedContext};
use dq_core::orbit::{OrbitContext, OrbitSpec, Specialization};
use dq_core::qlie::{classical_limit_certs, q_invariance_certs, rmatrix_certs, scale_insensitivity_certs, verify_relations_stable, QuantumLie};
use dq_core::rep::RContext;
use dq_core::scalars::rat;

struct Desk {
    n: usize,
    d: usize,
    k: usize,
    ql: Arc<QuantumLie>,
    g: Arc<GradedContext>,
}

impl Desk {
    fn new(n: usize) -> Self {
        let (d, k) = if n == 2 { (4, 5) } else { (3, 4) };
        let ql = Arc::new(QuantumLie::new(n).expect("quantum Lie algebra"));
        let g = Arc::new(GradedContext::new(ql.clone()).expect("graded context"));
        Desk { n, d, k, ql, g }
    }
}

type Outcome = Result<String, String>;

fn check(certs: &[GradedCert]) -> Outcome {
    match certs.iter().find(|c| !c.pass && !c.info) {
        None => Ok(format!("{} certificates", certs.len())),
        Some(c) => Err(format!("{}[{}]: expected {}, computed {}", c.context, c.degree, c.expected, c.computed)),
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t0 = Instant::now();
    let r = f()?;
    let el = t0.elapsed();
    if el > limit {
        return Err(format!("{r}, took {el:.1?} > {limit:?}"));
    }
    Ok(format!("{r}, {el:.1?}"))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c1() -> Outcome {
    let mut msg = Vec::new();
    for n in [2, 3] {
        msg.push(timed(Duration::from_secs(5), || check(&rmatrix_certs(&RContext::new(n).map_err(err)?).map_err(err)?))?);
    }
    Ok(msg.join("; "))
}

fn c2() -> Outcome {
    let a = check(&q_invariance_certs(&RContext::new(2).map_err(err)?, 5))?;
    let b = timed(Duration::from_secs(30), || check(&q_invariance_certs(&RContext::new(3).map_err(err)?, 4)))?;
    Ok(format!("n=2 K=5 {a}; n=3 K=4 {b}"))
}

fn c3(desks: &[Desk]) -> Outcome {
    let mut msg = Vec::new();
    for d in desks {
        let limit = Duration::from_secs(300);
        msg.push(timed(limit, || {
            let certs = verify_relations_stable(&d.ql, d.k).map_err(err)?;
            let kinds = ["qlie.relation.unnormalized", "qlie.relation.normalized", "qlie.relation.horizon_stable"];
            if !kinds.iter().all(|k| certs.iter().any(|c| c.context == *k)) {
                return Err("missing relation form".into());
            }
            check(&certs)
        })?);
    }
    Ok(msg.join("; "))
}

fn c4(desks: &[Desk]) -> Outcome {
    let mut all = Vec::new();
    for d in desks {
        let certs = classical_limit_certs(&d.ql, d.k).map_err(err)?;
        for k in ["qlie.limit.sigma_flip", "qlie.limit.bracket_structure_constants", "qlie.limit.casimir_identity"] {
            if !certs.iter().any(|c| c.context == k) {
                return Err(format!("missing {k}"));
            }
        }
        all.extend(certs);
    }
    check(&all)
}

fn c5(desks: &[Desk]) -> Outcome {
    let mut all = Vec::new();
    for d in desks {
        all.extend(scale_insensitivity_certs(&d.ql, d.k).map_err(err)?);
    }
    check(&all)
}

fn c6(desks: &[Desk]) -> Outcome {
    let mut all = Vec::new();
    for d in desks {
        let nl = d.g.dim_l();
        for k in 0..=d.d {
            let s = graded_dim(&d.g.v2, nl, k) as u64;
            let e = graded_dim(&d.g.w2.space, nl, k) as u64;
            all.push(GradedCert::new(format!("sym.n{}", d.n), k, binomial((nl + k - 1) as u64, k as u64), s));
            all.push(GradedCert::new(format!("ext.n{}", d.n), k, binomial(nl as u64, k as u64), e));
        }
    }
    check(&all)
}

fn c7(desks: &[Desk]) -> Outcome {
    let mut all = Vec::new();
    for d in desks {
        let certs = d.g.pbw_check(&d.g.sym_t(), d.d, d.k).map_err(err)?;
        if !certs.iter().any(|c| c.context.ends_with("filtered_dim.t1")) {
            return Err("missing filtered dims".into());
        }
        all.extend(certs);
    }
    check(&all)
}

fn c8(n2: &Desk) -> Outcome {
    timed(Duration::from_secs(300), || {
        let dr = DeRham::quantum(&n2.g).map_err(err)?;
        let mut certs = d_squared_cert(&dr, n2.d, 3).map_err(err)?;
        certs.extend(exactness_cert(&dr, n2.d, 3).map_err(err)?);
        let h00 = certs.iter().find(|c| c.context == "derham.cohomology.m0" && c.degree == 0).map(|c| c.computed);
        if h00 != Some(1) {
            return Err(format!("constants at (0,0): {h00:?}"));
        }
        check(&certs)
    })
}

fn orbit_n2(n2: &Desk) -> Result<OrbitContext<'_>, String> {
    OrbitContext::new(&n2.g, OrbitSpec::new(2, vec![rat(1, 1), rat(-1, 1)]).map_err(err)?, n2.d).map_err(err)
}

fn c9(n2: &Desk) -> Outcome {
    timed(Duration::from_secs(300), || {
        let o = orbit_n2(n2)?;
        let h = o.inv.hilbert();
        if h != [1, 0, 1, 0, 1] {
            return Err(format!("invariant Hilbert function {h:?}"));
        }
        let mut certs = o.centrality_cert().map_err(err)?;
        for s in Specialization::STANDARD {
            let dims = o.quotient_dims(s).map_err(err)?;
            for k in 0..=3 {
                certs.push(GradedCert::new(format!("quotient.{s}"), k, ((k + 1) * (k + 1)) as u64, dims[k] as u64));
            }
        }
        certs.extend(o.classical_ring_cert().map_err(err)?);
        check(&certs)
    })
}

fn c10(n2: &Desk) -> Outcome {
    let o = orbit_n2(n2)?;
    check(&[o.kks_cert().map_err(err)?])
}

fn c11() -> Outcome {
    let mut cfg = RunConfig::defaults(2);
    let mut texts = Vec::new();
    for threads in [1, 8] {
        cfg.thread_count = threads;
        let r = certify::run(&cfg).map_err(err)?;
        if !r.pass {
            return Err(format!("report with {threads} threads fails"));
        }
        texts.push(r.to_json());
    }
    if texts[0] != texts[1] {
        return Err("reports differ between 1 and 8 threads".into());
    }
    Ok(format!("{} bytes identical", texts[0].len()))
}

fn main() {
    let t0 = Instant::now();
    let desks = [Desk::new(2), Desk::new(3)];
    let n2 = &desks[0];
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("R-matrix suite (n = 2, 3)", Box::new(c1)),
        ("Q-invariance", Box::new(c2)),
        ("quantum Lie relations and horizon stability", Box::new(|| c3(&desks))),
        ("classical limits", Box::new(|| c4(&desks))),
        ("scalar insensitivity of R", Box::new(|| c5(&desks))),
        ("flatness of Sym and Ext", Box::new(|| c6(&desks))),
        ("PBW quadratic-linear filtered dims", Box::new(|| c7(&desks))),
        ("de Rham d^2 = 0 and exactness (n = 2)", Box::new(|| c8(n2))),
        ("orbit family n = 2, eigenvalues (1,-1)", Box::new(|| c9(n2))),
        ("KKS semiclassical bracket", Box::new(|| c10(n2))),
        ("determinism across 1 and 8 threads", Box::new(c11)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(m) => println!("criterion {:>2} PASS  {name}: {m}", i + 1),
            Err(m) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {m}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass ({:.1?})", criteria.len() - failed, criteria.len(), t0.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
