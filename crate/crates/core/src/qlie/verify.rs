use rayon::prelude::*;

use super::structure::{QuantumLie, Realization};
use crate::cert::{binomial, GradedCert};
use crate::error::Result;
use crate::linalg::{left_kernel, rank, row_from_dense, ExactMatrix, SparseRow, Subspace};
use crate::rep::{embed13, flip, RContext, RepAction, Word};
use crate::scalars::{rat, RatFunc};
use std::sync::Arc;

/// `Σ sigma[(d,c), col] x_d x_c` given all products `prods[d·N + c]`.
fn sigma_image(sigma: &ExactMatrix, col: usize, prods: &[ExactMatrix], dim: usize) -> ExactMatrix {
    let mut acc = ExactMatrix::zeros(dim, dim);
    for (r, c, v) in sigma.entries() {
        if c == col {
            acc = acc.axpy(v, &prods[r]);
        }
    }
    acc
}

fn bracket_image(bracket: &ExactMatrix, col: usize, lin: &[ExactMatrix], dim: usize) -> ExactMatrix {
    let mut acc = ExactMatrix::zeros(dim, dim);
    for (d, c, v) in bracket.entries() {
        if c == col {
            acc = acc.axpy(v, &lin[d]);
        }
    }
    acc
}

/// Residual counts `(unnormalized, normalized)` of the quadratic-linear
/// relations on one realization:
/// `x_a x_b − m∘σ(x_a⊗x_b) − [x_a, x_b]·C_V` and the same with `x̃ = C_V⁻¹x`
/// and no `C_V` factor.
pub fn relation_residuals(ql: &QuantumLie, r: &Realization) -> (usize, usize) {
    let nl = ql.data.dim_l;
    let dim = r.c.rows();
    let prods = |xs: &[ExactMatrix]| -> Vec<ExactMatrix> {
        (0..nl * nl).into_par_iter().map(|i| xs[i / nl].mul(&xs[i % nl])).collect()
    };
    let check = |xs: &[ExactMatrix], lin: &[ExactMatrix]| -> usize {
        let p = prods(xs);
        (0..nl * nl)
            .into_par_iter()
            .map(|ab| {
                let s = sigma_image(&ql.data.sigma, ab, &p, dim);
                let b = bracket_image(&ql.data.bracket, ab, lin, dim);
                p[ab].sub(&s).sub(&b).nnz()
            })
            .sum()
    };
    let xc: Vec<ExactMatrix> = r.x.iter().map(|x| x.mul(&r.c)).collect();
    let un = check(&r.x, &xc);
    let xt = r.normalized();
    let no = check(&xt, &xt);
    (un, no)
}

/// Relation certificates on `V^{⊗k}` for `k = 0..=horizon`.
pub fn verify_relations(ql: &QuantumLie, horizon: usize) -> Result<Vec<GradedCert>> {
    let mut out = Vec::new();
    for k in 0..=horizon {
        let r = ql.realize_power(k)?;
        let (un, no) = relation_residuals(ql, &r);
        out.push(GradedCert::zero("qlie.relation.unnormalized", k, un));
        out.push(GradedCert::zero("qlie.relation.normalized", k, no));
    }
    Ok(out)
}

/// Relation certificates at horizons `K` and `K + 1`, plus a stability row
/// recording that the two agree on their common range and both pass.
pub fn verify_relations_stable(ql: &QuantumLie, horizon: usize) -> Result<Vec<GradedCert>> {
    let a = verify_relations(ql, horizon)?;
    let b = verify_relations(ql, horizon + 1)?;
    let stable = b[..a.len()] == a[..] && b.iter().all(|c| c.pass);
    let mut out = a;
    out.push(GradedCert::holds("qlie.relation.horizon_stable", horizon + 1, stable));
    Ok(out)
}

/// `σ` commutes with `L⊗L`; the bracket intertwines `L⊗L → L`.
pub fn equivariance_certs(ql: &QuantumLie) -> Vec<GradedCert> {
    let l = &ql.data.module;
    let ll = RepAction::tensor(l, l);
    vec![
        GradedCert::zero("qlie.sigma.equivariant", 2, RepAction::intertwining_residual(&ql.data.sigma, &ll, &ll)),
        GradedCert::zero("qlie.bracket.equivariant", 2, RepAction::intertwining_residual(&ql.data.bracket, &ll, l)),
    ]
}

/// `(σ⊗1)(1⊗σ)(σ⊗1) − (1⊗σ)(σ⊗1)(1⊗σ)` on `L^{⊗3}`.
pub fn braid_residual(sigma: &ExactMatrix, nl: usize) -> usize {
    let i = ExactMatrix::identity(nl);
    let s12 = sigma.kron(&i);
    let s23 = i.kron(sigma);
    s12.mul(&s23).mul(&s12).sub(&s23.mul(&s12).mul(&s23)).nnz()
}

/// Ranks of `1 − σ` and its kernel against `dim Λ²g` and `dim S²g`.
pub fn sigma_eigen_certs(ql: &QuantumLie) -> Vec<GradedCert> {
    let nl = ql.data.dim_l as u64;
    let m = ExactMatrix::identity((nl * nl) as usize).sub(&ql.data.sigma);
    let r = rank(&m) as u64;
    vec![
        GradedCert::new("qlie.sigma.image_dim", 2, binomial(nl, 2), r),
        GradedCert::new("qlie.sigma.kernel_dim", 2, binomial(nl + 1, 2), nl * nl - r),
    ]
}

/// Structure constants of `[X_a, X_b] = Σ f_ab^d X_d` for matrices spanning a
/// Lie algebra, as a `dim × dim²` matrix.
pub fn structure_constants(xs: &[ExactMatrix]) -> Option<ExactMatrix> {
    let nl = xs.len();
    let dim = xs[0].rows();
    let basis: Vec<SparseRow> = xs.iter().map(|x| x.vectorize()).collect();
    let sub = Subspace::from_spanning(dim * dim, &basis);
    // Coordinates in the given basis: solve through the RREF basis.
    let to_rref = ExactMatrix::from_dense(basis.iter().map(|b| sub.coords(b)).collect::<Option<Vec<_>>>()?);
    let change = crate::linalg::inverse(&to_rref).ok()?;
    let mut trips = Vec::new();
    for a in 0..nl {
        for b in 0..nl {
            let c = xs[a].commutator(&xs[b]).vectorize();
            let rc = sub.coords(&c)?;
            for (d, v) in change.left_apply(&row_from_dense(&rc)) {
                trips.push((d, a * nl + b, v));
            }
        }
    }
    Some(ExactMatrix::from_triplets(nl, nl * nl, trips))
}

/// `σ|_{q=1}` is the flip, `[·,·]|_{q=1}` are the structure constants of the
/// classical generators on `V`, and `C_V|_{q=1} = 1` on `V^{⊗k}`,
/// `k ≤ horizon`.
pub fn classical_limit_certs(ql: &QuantumLie, horizon: usize) -> Result<Vec<GradedCert>> {
    let one = rat(1, 1);
    let nl = ql.data.dim_l;
    let s1 = ql.data.sigma.eval_at(&one)?;
    let mut out = vec![GradedCert::zero("qlie.limit.sigma_flip", 2, s1.sub(&flip(nl, nl)).nnz())];
    let v = ql.realize_power(1)?;
    let x1: Vec<ExactMatrix> = v.x.iter().map(|x| x.eval_at(&one)).collect::<Result<_>>()?;
    let b1 = ql.data.bracket.eval_at(&one)?;
    let ok = structure_constants(&x1).map(|f| f.sub(&b1).nnz());
    out.push(GradedCert::zero("qlie.limit.bracket_structure_constants", 2, ok.unwrap_or(usize::MAX)));
    // The classical generators span sl(n).
    let span = Subspace::from_spanning(ql.ctx.n * ql.ctx.n, &x1.iter().map(|x| x.vectorize()).collect::<Vec<_>>());
    out.push(GradedCert::new("qlie.limit.generators_span_sl", 1, nl as u64, span.dim() as u64));
    for k in 0..=horizon {
        let r = ql.realize_power(k)?;
        let c1 = r.c.eval_at(&one)?;
        out.push(GradedCert::zero("qlie.limit.casimir_identity", k, c1.sub(&ExactMatrix::identity(c1.rows())).nnz()));
    }
    Ok(out)
}

/// Rebuilds everything with `R` scaled by `q²`; `σ`, the bracket and the
/// relation certificates must be unchanged.
pub fn scale_insensitivity_certs(ql: &QuantumLie, horizon: usize) -> Result<Vec<GradedCert>> {
    let scaled = QuantumLie::from_context(Arc::new(RContext::with_scale(ql.ctx.n, RatFunc::q_pow(2))?))?;
    let a = verify_relations(ql, horizon)?;
    let b = verify_relations(&scaled, horizon)?;
    Ok(vec![
        GradedCert::zero("qlie.scale.sigma", 2, ql.data.sigma.sub(&scaled.data.sigma).nnz()),
        GradedCert::zero("qlie.scale.bracket", 2, ql.data.bracket.sub(&scaled.data.bracket).nnz()),
        GradedCert::holds("qlie.scale.relations", horizon, a == b && b.iter().all(|c| c.pass)),
    ])
}

/// Independent route to the quadratic relations: all linear dependencies
/// among `x̃_a x̃_b`, `x̃_a`, `1` in the realization on `⊕_{k≤K} V^{⊗k}`.
/// Their quadratic parts must span exactly `Im(1 − σ)`, with no dependency
/// lacking a quadratic part.
pub fn re_algebra_cross_check(ql: &QuantumLie, horizon: usize) -> Result<Vec<GradedCert>> {
    let nl = ql.data.dim_l;
    let reals: Vec<Arc<Realization>> = (0..=horizon).map(|k| ql.realize_power(k)).collect::<Result<_>>()?;
    let mut elems: Vec<Vec<ExactMatrix>> = vec![Vec::new(); nl * nl + nl + 1];
    for r in &reals {
        let xt = r.normalized();
        for a in 0..nl {
            for b in 0..nl {
                elems[a * nl + b].push(xt[a].mul(&xt[b]));
            }
        }
        for a in 0..nl {
            elems[nl * nl + a].push(xt[a].clone());
        }
        elems[nl * nl + nl].push(ExactMatrix::identity(r.c.rows()));
    }
    let rows: Vec<SparseRow> = elems
        .iter()
        .map(|parts| {
            let mut row = Vec::new();
            let mut off = 0;
            for m in parts {
                row.extend(m.vectorize().into_iter().map(|(j, v)| (j + off, v)));
                off += m.rows() * m.cols();
            }
            row
        })
        .collect();
    let total: usize = reals.iter().map(|r| r.c.rows() * r.c.rows()).sum();
    let rel = left_kernel(&ExactMatrix::from_rows(total, rows));
    let quad: Vec<SparseRow> =
        rel.basis_rows().iter().map(|r| r.iter().filter(|(j, _)| *j < nl * nl).cloned().collect()).collect();
    let quad = Subspace::from_spanning(nl * nl, &quad);
    let v2 = Subspace::column_space(&ExactMatrix::identity(nl * nl).sub(&ql.data.sigma));
    Ok(vec![
        GradedCert::new("qlie.cross.relation_dim", 2, binomial(nl as u64, 2), rel.dim() as u64),
        GradedCert::new("qlie.cross.quadratic_part_dim", 2, rel.dim() as u64, quad.dim() as u64),
        GradedCert::holds("qlie.cross.matches_image", 2, quad == v2),
    ])
}

/// `Q` on `V⊗W` commutes with the action, for every word `W` in `V, V*` of
/// length `1..=max_len`.
pub fn q_invariance_certs(ctx: &RContext, max_len: usize) -> Vec<GradedCert> {
    let mut words = vec![Word::default()];
    let mut all = Vec::new();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &words {
            for l in [crate::rep::Letter::V, crate::rep::Letter::D] {
                let mut w2 = w.clone();
                w2.0.push(l);
                next.push(w2);
            }
        }
        all.extend(next.iter().cloned());
        words = next;
    }
    let v = ctx.module(&Word::power(1));
    let res: Vec<(usize, usize)> = all
        .par_iter()
        .map(|w| {
            let m = RepAction::tensor(&v, &ctx.module(w));
            (w.len(), RepAction::intertwining_residual(&ctx.q_on(w), &m, &m))
        })
        .collect();
    (1..=max_len)
        .map(|k| GradedCert::zero("rmatrix.q_invariance", k, res.iter().filter(|r| r.0 == k).map(|r| r.1).sum()))
        .collect()
}

/// Yang-Baxter, Hecke, intertwining and `R|_{q=1} = 1` for the vector
/// R-matrix, the base blocks and the mixed Yang-Baxter triples.
pub fn rmatrix_certs(ctx: &RContext) -> Result<Vec<GradedCert>> {
    let n = ctx.n;
    let r = crate::rep::r_matrix(n)?;
    let v = ctx.module(&Word::power(1));
    let mut out = vec![
        GradedCert::zero("rmatrix.yang_baxter", 3, crate::rep::yang_baxter_residual(&r, n).nnz()),
        GradedCert::zero("rmatrix.hecke", 2, crate::rep::hecke_residual(&r, n).nnz()),
        GradedCert::zero("rmatrix.intertwining", 2, crate::rep::intertwining_residual(&r, &v, &v)),
        GradedCert::zero("rmatrix.classical_identity", 2, r.eval_at(&rat(1, 1))?.sub(&ExactMatrix::identity(n * n)).nnz()),
    ];
    use crate::rep::Letter::{D, V};
    let mut base_res = 0;
    for a in [V, D] {
        for b in [V, D] {
            base_res += crate::rep::intertwining_residual(ctx.base(a, b), ctx.letter_rep(a), ctx.letter_rep(b));
        }
    }
    out.push(GradedCert::zero("rmatrix.base_blocks_intertwining", 2, base_res));
    let mut yb = 0;
    for t in [[V, D, V], [D, V, D], [V, V, D]] {
        let w: Vec<Word> = t.iter().map(|l| Word(vec![*l])).collect();
        let r12 = ctx.fused(&w[0], &w[1]).kron(&ExactMatrix::identity(n));
        let r23 = ExactMatrix::identity(n).kron(&ctx.fused(&w[1], &w[2]));
        let r13 = embed13(&ctx.fused(&w[0], &w[2]), n, n, n);
        yb += r12.mul(&r13).mul(&r23).sub(&r23.mul(&r13).mul(&r12)).nnz();
    }
    out.push(GradedCert::zero("rmatrix.mixed_yang_baxter", 3, yb));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::all_pass;

    #[test]
    fn n2_relations_and_checks() {
        let ql = QuantumLie::new(2).unwrap();
        assert!(all_pass(&verify_relations(&ql, 3).unwrap()));
        assert!(all_pass(&equivariance_certs(&ql)));
        // The split braiding is not a braid operator.
        assert_ne!(braid_residual(&ql.data.sigma, 3), 0);
        assert!(all_pass(&sigma_eigen_certs(&ql)));
        assert!(all_pass(&classical_limit_certs(&ql, 3).unwrap()));
        assert!(all_pass(&re_algebra_cross_check(&ql, 3).unwrap()));
    }

    #[test]
    fn n2_rmatrix_and_q() {
        let ctx = RContext::new(2).unwrap();
        assert!(all_pass(&rmatrix_certs(&ctx).unwrap()));
        assert!(all_pass(&q_invariance_certs(&ctx, 3)));
    }

    #[test]
    fn n2_scale() {
        let ql = QuantumLie::new(2).unwrap();
        assert!(all_pass(&scale_insensitivity_certs(&ql, 2).unwrap()));
    }
}
