//! Suite orchestration, JSON reports and report diffs.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cert::{all_pass, binomial, GradedCert};
use crate::derham::{
    associativity_cert, classical_limit_cert, classical_rank_certs, component_certs, d_squared_cert, equivariance_cert, exactness_cert,
    leibniz_info, DeRham,
};
use crate::error::{Error, Result};
use crate::graded::{graded_dim, poisson_certs, GradedContext};
use crate::orbit::{OrbitContext, OrbitSpec, Specialization};
use crate::qlie::{
    braid_residual, classical_limit_certs, equivariance_certs, q_invariance_certs, re_algebra_cross_check, rmatrix_certs,
    scale_insensitivity_certs, sigma_eigen_certs, verify_relations_stable, QuantumLie,
};
use crate::rep::RContext;
use crate::scalars::{rat, BigRat};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SCHEMA: &str = "dq-report/1";

/// Conventions every certificate depends on. Reports carry its hash.
pub const CONVENTION_LEDGER: &str = "\
coproduct: D(E)=E(x)1+K(x)E; D(F)=F(x)K^-1+1(x)F; D(K)=K(x)K
antipode: S(E)=-K^-1E; S(F)=-FK; S(K)=K^-1
dual: rho*(x)=rho(S(x))^T
kron: (i,j) -> i*dim(B)+j
vector R: q on diagonal, (q-q^-1) on i>j off-diagonal, probed
fusion: R_{A(x)A',B}=R13 R23; R_{A,B(x)B'}=R13 R12
monodromy: Q_{V,W}=P R_{W,V} P R_{V,W}
generators: x_a=f(phi_a)/(q-q^-1), f contracts the first leg of Q
W2: braided extension of the invariant form, fallback after product
scalars: Z[q]-primitive coprime numerator/denominator, positive leading coefficient
";

pub fn ledger_hash() -> String {
    hex::encode(Sha256::digest(CONVENTION_LEDGER.as_bytes()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Rmatrix,
    Qlie,
    Flatness,
    Derham,
    Orbit,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Rmatrix, Suite::Qlie, Suite::Flatness, Suite::Derham, Suite::Orbit];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rmatrix => "rmatrix",
            Suite::Qlie => "qlie",
            Suite::Flatness => "flatness",
            Suite::Derham => "derham",
            Suite::Orbit => "orbit",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which quadratic algebras the flatness suite covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraSel {
    Sym,
    Ext,
    Both,
    Qlinear,
    All,
}

impl FromStr for AlgebraSel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sym" => AlgebraSel::Sym,
            "ext" => AlgebraSel::Ext,
            "both" => AlgebraSel::Both,
            "qlinear" => AlgebraSel::Qlinear,
            "all" => AlgebraSel::All,
            _ => return Err(Error::Config(format!("unknown algebra `{s}`"))),
        })
    }
}

/// Parses `t0.q1`, `t1.qgen`, `tsym.q1`, or `generic` (all of them).
pub fn parse_specializations(s: &str) -> Result<Vec<Specialization>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part {
            "generic" | "all" => {
                out.extend(Specialization::STANDARD);
                out.push(Specialization::SymbolicT);
            }
            "t0.q1" => out.push(Specialization::AtOne(0)),
            "t1.q1" => out.push(Specialization::AtOne(1)),
            "t0.qgen" => out.push(Specialization::Generic(0)),
            "t1.qgen" => out.push(Specialization::Generic(1)),
            "tsym.q1" => out.push(Specialization::SymbolicT),
            _ => return Err(Error::Config(format!("unknown specialization `{part}`"))),
        }
    }
    out.dedup();
    Ok(out)
}

pub fn parse_eigenvalues(s: &str) -> Result<Vec<BigRat>> {
    s.split(',')
        .map(|p| {
            let p = p.trim();
            let (num, den) = p.split_once('/').unwrap_or((p, "1"));
            let num: i64 = num.parse().map_err(|_| Error::Config(format!("bad eigenvalue `{p}`")))?;
            let den: i64 = den.parse().map_err(|_| Error::Config(format!("bad eigenvalue `{p}`")))?;
            if den == 0 {
                return Err(Error::Config(format!("bad eigenvalue `{p}`")));
            }
            Ok(rat(num, den))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub max_degree: usize,
    pub horizon: usize,
    pub suites: Vec<Suite>,
    pub specializations: Vec<Specialization>,
    pub algebra: AlgebraSel,
    pub derham_max_k: usize,
    pub derham_max_m: usize,
    pub eigenvalues: Vec<BigRat>,
    pub report_path: Option<std::path::PathBuf>,
    pub thread_count: usize,
    /// Include wall times in the report (makes it run-dependent).
    pub timings: bool,
}

impl RunConfig {
    /// Desk-scale defaults for rank `n`.
    pub fn defaults(n: usize) -> Self {
        let (d, k) = if n <= 2 { (4, 5) } else { (3, 4) };
        let (dk, dm) = if n <= 2 { (d, 3) } else { (1, 1) };
        let mut eig: Vec<BigRat> = (1..n as i64).map(|i| rat(i, 1)).collect();
        let s = (1..n as i64).sum::<i64>();
        eig.push(rat(-s, 1));
        RunConfig {
            n,
            max_degree: d,
            horizon: k,
            suites: Suite::ALL.to_vec(),
            specializations: parse_specializations("generic").expect("static"),
            algebra: AlgebraSel::All,
            derham_max_k: dk,
            derham_max_m: dm,
            eigenvalues: eig,
            report_path: None,
            thread_count: 0,
            timings: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Config(format!("n must be at least 2, got {}", self.n)));
        }
        if self.max_degree < 2 {
            return Err(Error::Config("max degree must be at least 2".into()));
        }
        if self.horizon < self.max_degree {
            return Err(Error::Config("horizon must be at least the max degree".into()));
        }
        if self.suites.contains(&Suite::Orbit) {
            OrbitSpec::new(self.n, self.eigenvalues.clone())?;
        }
        Ok(())
    }

    fn echo(&self) -> ConfigEcho {
        let mut suites = self.suites.clone();
        suites.sort();
        suites.dedup();
        ConfigEcho {
            n: self.n,
            max_degree: self.max_degree,
            horizon: self.horizon,
            suites: suites.iter().map(|s| s.name().to_string()).collect(),
            specializations: self.specializations.iter().map(ToString::to_string).collect(),
            algebra: self.algebra,
            derham_max_k: self.derham_max_k,
            derham_max_m: self.derham_max_m,
            eigenvalues: self.eigenvalues.iter().map(ToString::to_string).collect(),
        }
    }
}

/// The part of the configuration that determines the certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub n: usize,
    pub max_degree: usize,
    pub horizon: usize,
    pub suites: Vec<String>,
    pub specializations: Vec<String>,
    pub algebra: AlgebraSel,
    pub derham_max_k: usize,
    pub derham_max_m: usize,
    pub eigenvalues: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
    pub certificates: Vec<GradedCert>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub engine_version: String,
    pub ledger_hash: String,
    pub config: ConfigEcho,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = (&str, &GradedCert)> {
        self.suites.iter().flat_map(|s| s.certificates.iter().filter(|c| !c.pass && !c.info).map(move |c| (s.name.as_str(), c)))
    }
}

/// Lazily built shared state.
struct Engine {
    n: usize,
    ctx: Option<Arc<RContext>>,
    ql: Option<Arc<QuantumLie>>,
    graded: Option<Arc<GradedContext>>,
}

impl Engine {
    fn ctx(&mut self) -> Result<Arc<RContext>> {
        if self.ctx.is_none() {
            self.ctx = Some(Arc::new(RContext::new(self.n)?));
        }
        Ok(self.ctx.clone().unwrap())
    }

    fn ql(&mut self) -> Result<Arc<QuantumLie>> {
        if self.ql.is_none() {
            let ctx = self.ctx()?;
            self.ql = Some(Arc::new(QuantumLie::from_context(ctx)?));
        }
        Ok(self.ql.clone().unwrap())
    }

    fn graded(&mut self) -> Result<Arc<GradedContext>> {
        if self.graded.is_none() {
            let ql = self.ql()?;
            self.graded = Some(Arc::new(GradedContext::new(ql)?));
        }
        Ok(self.graded.clone().unwrap())
    }
}

fn rmatrix_suite(e: &mut Engine, cfg: &RunConfig) -> Result<Vec<GradedCert>> {
    let ctx = e.ctx()?;
    let mut out = rmatrix_certs(&ctx)?;
    out.extend(q_invariance_certs(&ctx, cfg.horizon));
    Ok(out)
}

fn qlie_suite(e: &mut Engine, cfg: &RunConfig) -> Result<Vec<GradedCert>> {
    let ql = e.ql()?;
    let mut out = verify_relations_stable(&ql, cfg.horizon)?;
    out.extend(classical_limit_certs(&ql, cfg.horizon)?);
    out.extend(scale_insensitivity_certs(&ql, cfg.horizon)?);
    out.extend(equivariance_certs(&ql));
    out.extend(sigma_eigen_certs(&ql));
    out.extend(re_algebra_cross_check(&ql, cfg.horizon)?);
    out.push(GradedCert::zero("qlie.sigma.braid_relation", 3, braid_residual(&ql.data.sigma, ql.data.dim_l)).informational(true));
    Ok(out)
}

fn flatness_suite(e: &mut Engine, cfg: &RunConfig) -> Result<Vec<GradedCert>> {
    let g = e.graded()?;
    let nl = g.dim_l();
    let d = cfg.max_degree;
    let mut out = g.degree_two_certs()?;
    let (sym, ext, ql) = match cfg.algebra {
        AlgebraSel::Sym => (true, false, false),
        AlgebraSel::Ext => (false, true, false),
        AlgebraSel::Both => (true, true, false),
        AlgebraSel::Qlinear => (false, false, true),
        AlgebraSel::All => (true, true, true),
    };
    let ks: Vec<usize> = (0..=d).collect();
    if sym {
        let dims: Vec<usize> = rayon_map(&ks, |&k| graded_dim(&g.v2, nl, k));
        for k in 0..=d {
            out.push(GradedCert::new("flatness.sym_dim", k, binomial((nl + k - 1) as u64, k as u64), dims[k] as u64));
        }
    }
    if ext {
        let dims: Vec<usize> = rayon_map(&ks, |&k| graded_dim(&g.w2.space, nl, k));
        for k in 0..=d {
            out.push(GradedCert::new("flatness.ext_dim", k, binomial(nl as u64, k as u64), dims[k] as u64));
        }
    }
    if ql {
        out.extend(g.pbw_check(&g.sym_t(), d, cfg.horizon)?);
        out.extend(poisson_certs(&g)?);
    }
    Ok(out)
}

fn rayon_map<T: Sync, U: Send>(xs: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    use rayon::prelude::*;
    xs.par_iter().map(f).collect()
}

fn derham_suite(e: &mut Engine, cfg: &RunConfig) -> Result<Vec<GradedCert>> {
    let g = e.graded()?;
    let dr = DeRham::quantum(&g)?;
    let (k, m) = (cfg.derham_max_k, cfg.derham_max_m);
    let mut out = component_certs(&dr, k.max(m))?;
    out.extend(exactness_cert(&dr, k, m)?);
    out.extend(d_squared_cert(&dr, k, m)?);
    out.extend(classical_rank_certs(&dr, k, m)?);
    out.extend(classical_limit_cert(&dr, m + 1)?);
    if k >= 1 {
        out.push(equivariance_cert(&dr, &g, 1, m.min(1))?);
    }
    if cfg.n == 2 {
        out.extend(associativity_cert(&dr, (k + m).min(4))?);
        out.push(leibniz_info(&dr)?);
    }
    Ok(out)
}

fn orbit_suite(e: &mut Engine, cfg: &RunConfig) -> Result<Vec<GradedCert>> {
    let g = e.graded()?;
    let spec = OrbitSpec::new(cfg.n, cfg.eigenvalues.clone())?;
    let o = OrbitContext::new(&g, spec, cfg.max_degree)?;
    o.all_certs(cfg.max_degree, &cfg.specializations)
}

/// Runs the requested suites in dependency order. Errors inside a suite are
/// recorded as a failing certificate; configuration errors are returned.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let body = || {
        let mut e = Engine { n: cfg.n, ctx: None, ql: None, graded: None };
        let mut suites = Vec::new();
        for s in Suite::ALL {
            if !cfg.suites.contains(&s) {
                continue;
            }
            let t0 = Instant::now();
            let res = match s {
                Suite::Rmatrix => rmatrix_suite(&mut e, cfg),
                Suite::Qlie => qlie_suite(&mut e, cfg),
                Suite::Flatness => flatness_suite(&mut e, cfg),
                Suite::Derham => derham_suite(&mut e, cfg),
                Suite::Orbit => orbit_suite(&mut e, cfg),
            };
            let mut certs = match res {
                Ok(c) => c,
                Err(Error::Config(m)) => return Err(Error::Config(m)),
                Err(err) => vec![GradedCert::holds(format!("{}.error: {err}", s.name()), 0, false)],
            };
            certs.sort_by(|a, b| (&a.context, a.degree).cmp(&(&b.context, b.degree)));
            let wall = t0.elapsed().as_millis() as u64;
            suites.push(SuiteReport { name: s.name().into(), pass: all_pass(&certs), wall_ms: cfg.timings.then_some(wall), certificates: certs });
        }
        let pass = suites.iter().all(|s| s.pass);
        Ok(Report {
            schema: SCHEMA.into(),
            engine_version: ENGINE_VERSION.into(),
            ledger_hash: ledger_hash(),
            config: cfg.echo(),
            suites,
            pass,
        })
    };
    if cfg.thread_count == 0 {
        body()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.thread_count)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        pool.install(body)
    }
}

/// Structural diff: one line per differing header field or certificate.
pub fn diff_reports(a: &Report, b: &Report) -> Vec<String> {
    let mut out = Vec::new();
    let mut field = |name: &str, x: String, y: String| {
        if x != y {
            out.push(format!("{name}: {x} -> {y}"));
        }
    };
    field("schema", a.schema.clone(), b.schema.clone());
    field("engine_version", a.engine_version.clone(), b.engine_version.clone());
    field("ledger_hash", a.ledger_hash.clone(), b.ledger_hash.clone());
    field("config", serde_json::to_string(&a.config).unwrap(), serde_json::to_string(&b.config).unwrap());
    field("pass", a.pass.to_string(), b.pass.to_string());
    let key = |c: &GradedCert| (c.context.clone(), c.degree);
    let mut names: Vec<&str> = a.suites.iter().chain(&b.suites).map(|s| s.name.as_str()).collect();
    names.sort();
    names.dedup();
    for name in names {
        let empty = Vec::new();
        let ca = a.suite(name).map(|s| &s.certificates).unwrap_or(&empty);
        let cb = b.suite(name).map(|s| &s.certificates).unwrap_or(&empty);
        let ma: std::collections::BTreeMap<_, _> = ca.iter().map(|c| (key(c), c)).collect();
        let mb: std::collections::BTreeMap<_, _> = cb.iter().map(|c| (key(c), c)).collect();
        for (k, x) in &ma {
            match mb.get(k) {
                None => out.push(format!("- {name} {}[{}] {}/{}", k.0, k.1, x.expected, x.computed)),
                Some(y) if y != x => {
                    out.push(format!("~ {name} {}[{}] {}/{} -> {}/{}", k.0, k.1, x.expected, x.computed, y.expected, y.computed))
                }
                _ => {}
            }
        }
        for (k, y) in &mb {
            if !ma.contains_key(k) {
                out.push(format!("+ {name} {}[{}] {}/{}", k.0, k.1, y.expected, y.computed));
            }
        }
    }
    out
}

/// Thread count from `DQ_THREADS`, 0 (rayon default) when unset or invalid.
pub fn threads_from_env() -> usize {
    std::env::var("DQ_THREADS").ok().and_then(|v| v.parse().ok()).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(RunConfig::defaults(2).validate().is_ok());
        assert!(RunConfig::defaults(1).validate().is_err());
        let mut c = RunConfig::defaults(2);
        c.horizon = 3;
        assert!(c.validate().is_err());
        c = RunConfig::defaults(2);
        c.eigenvalues = vec![rat(1, 1), rat(1, 1)];
        assert!(c.validate().is_err());
    }

    #[test]
    fn parsers() {
        assert_eq!(parse_eigenvalues("1,-1").unwrap(), vec![rat(1, 1), rat(-1, 1)]);
        assert_eq!(parse_eigenvalues("1/2,-1/2").unwrap(), vec![rat(1, 2), rat(-1, 2)]);
        assert!(parse_eigenvalues("x").is_err());
        assert_eq!(parse_specializations("generic").unwrap().len(), 5);
        assert!(parse_specializations("t2.q1").is_err());
        assert_eq!("derham".parse::<Suite>().unwrap(), Suite::Derham);
    }

    #[test]
    fn diff_detects_changes() {
        let mut c = RunConfig::defaults(2);
        c.suites = vec![Suite::Rmatrix];
        c.horizon = 4;
        c.max_degree = 2;
        let a = run(&c).unwrap();
        assert!(a.pass);
        assert!(diff_reports(&a, &a).is_empty());
        let mut b = a.clone();
        b.suites[0].certificates[0].computed += 1;
        assert_eq!(diff_reports(&a, &b).len(), 1);
        assert_eq!(Report::from_json(&a.to_json()).unwrap(), a);
    }
}
