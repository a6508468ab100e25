use std::collections::BTreeMap;

use super::GradedContext;
use crate::cert::GradedCert;
use crate::error::Result;
use crate::scalars::{rat, BigRat};

/// A commutative polynomial: sorted exponent multisets to coefficients.
type Poly = BTreeMap<Vec<usize>, BigRat>;

fn add_term(p: &mut Poly, mono: Vec<usize>, c: BigRat) {
    let mut m = mono;
    m.sort_unstable();
    let e = p.entry(m.clone()).or_insert_with(|| rat(0, 1));
    *e += c;
    if e == &rat(0, 1) {
        p.remove(&m);
    }
}

/// Biderivation bracket given on generators by `gen_bracket[a][b]`.
fn bracket(gen: &[Vec<Poly>], f: &Poly, g: &Poly) -> Poly {
    let mut out = Poly::new();
    for (mf, cf) in f {
        for (mg, cg) in g {
            for (i, &a) in mf.iter().enumerate() {
                for (j, &b) in mg.iter().enumerate() {
                    let mut rest: Vec<usize> = mf.iter().enumerate().filter(|x| x.0 != i).map(|x| *x.1).collect();
                    rest.extend(mg.iter().enumerate().filter(|x| x.0 != j).map(|x| *x.1));
                    for (m, c) in &gen[a][b] {
                        let mut mono = rest.clone();
                        mono.extend(m);
                        add_term(&mut out, mono, cf * cg * c);
                    }
                }
            }
        }
    }
    out
}

fn mono(a: usize) -> Poly {
    let mut p = Poly::new();
    p.insert(vec![a], rat(1, 1));
    p
}

fn cyclic_jacobi(p1: &[Vec<Poly>], p2: &[Vec<Poly>], n: usize) -> usize {
    let mut bad = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut total = Poly::new();
                for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                    for (outer, inner) in [(p1, p2), (p2, p1)] {
                        let inner_v = &inner[y][z];
                        for (m, v) in bracket(outer, &mono(x), inner_v) {
                            add_term(&mut total, m, v);
                        }
                    }
                }
                bad += total.len();
            }
        }
    }
    bad
}

impl GradedContext {
    /// The linear bracket (from `[·,·]` at `q = 1`) and the quadratic
    /// bracket (from `dσ/dq` at `q = 1`) on `S(g)`: each satisfies Jacobi and
    /// the two are compatible.
    pub fn poisson_brackets(&self) -> Result<(Vec<Vec<Poly>>, Vec<Vec<Poly>>)> {
        let nl = self.dim_l();
        let one = rat(1, 1);
        let b1 = self.ql.data.bracket.eval_at(&one)?;
        let ds = self.ql.data.sigma.map(|x| x.derivative()).eval_at(&one)?;
        let mut lin = vec![vec![Poly::new(); nl]; nl];
        let mut quad = vec![vec![Poly::new(); nl]; nl];
        for (d, ab, v) in b1.entries() {
            add_term(&mut lin[ab / nl][ab % nl], vec![d], v.as_constant().unwrap());
        }
        // x_a x_b − x_b x_a = (q − 1) m(σ₁(x_a⊗x_b)) + …
        for (dc, ab, v) in ds.entries() {
            add_term(&mut quad[ab / nl][ab % nl], vec![dc / nl, dc % nl], v.as_constant().unwrap());
        }
        Ok((lin, quad))
    }
}

pub fn poisson_certs(g: &GradedContext) -> Result<Vec<GradedCert>> {
    let nl = g.dim_l();
    let (lin, quad) = g.poisson_brackets()?;
    let antisym = |p: &[Vec<Poly>]| -> usize {
        let mut bad = 0;
        for a in 0..nl {
            for b in 0..nl {
                let mut s = p[a][b].clone();
                for (m, v) in &p[b][a] {
                    add_term(&mut s, m.clone(), v.clone());
                }
                bad += s.len();
            }
        }
        bad
    };
    Ok(vec![
        GradedCert::zero("graded.poisson.linear.antisymmetric", 2, antisym(&lin)),
        GradedCert::zero("graded.poisson.quadratic.antisymmetric", 2, antisym(&quad)),
        GradedCert::zero("graded.poisson.linear.jacobi", 3, cyclic_jacobi(&lin, &lin, nl) / 2),
        GradedCert::zero("graded.poisson.quadratic.jacobi", 3, cyclic_jacobi(&quad, &quad, nl) / 2),
        GradedCert::zero("graded.poisson.compatible", 3, cyclic_jacobi(&lin, &quad, nl)),
    ])
}
