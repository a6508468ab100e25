use crate::error::{Error, Result};
use crate::linalg::{inverse, ExactMatrix};
use crate::rep::{quantum_trace, RContext, Word};
use crate::scalars::{rat, RatFunc};

/// `((φ∘ρ)⊗π)(Q)` given `Q` on `V⊗W`: contracts the first leg against `φ`.
pub fn contract_first_leg(phi: &ExactMatrix, q: &ExactMatrix, n: usize) -> ExactMatrix {
    let d = q.rows() / n;
    let mut out = ExactMatrix::zeros(d, d);
    for (a, b, v) in phi.entries() {
        out = out.axpy(v, &q.block(a * d, (a + 1) * d, b * d, (b + 1) * d));
    }
    out
}

/// The element `f(φ)` realized on the module `word`.
pub fn f_map(ctx: &RContext, phi: &ExactMatrix, word: &Word) -> ExactMatrix {
    contract_first_leg(phi, &ctx.q_on(word), ctx.n)
}

/// `C_V = f(Tr_q)` on `word`.
pub fn c_v(ctx: &RContext, word: &Word) -> ExactMatrix {
    f_map(ctx, &quantum_trace(ctx.n), word)
}

pub fn c_v_inverse(ctx: &RContext, word: &Word) -> Result<ExactMatrix> {
    inverse(&c_v(ctx, word)).map_err(|_| Error::CasimirNotInvertible)
}

/// Basis of `Z* = {φ : φ(id) = 0}`: `e*_{ij}` for `i ≠ j` and
/// `e*_{ii} − e*_{i+1,i+1}`, in lexicographic order of `(i, j)` with
/// `(n, n)` omitted.
pub fn lie_generators(n: usize) -> Result<Vec<ExactMatrix>> {
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i == n - 1 && j == n - 1 {
                continue;
            }
            if i == j {
                out.push(ExactMatrix::unit(n, i, i).sub(&ExactMatrix::unit(n, i + 1, i + 1)));
            } else {
                out.push(ExactMatrix::unit(n, i, j));
            }
        }
    }
    Ok(out)
}

/// `(q − q⁻¹)⁻¹ · m`, checking that the result is regular at `q = 1`.
pub fn divide_by_h(m: &ExactMatrix) -> Result<ExactMatrix> {
    let h = RatFunc::q_minus_qinv().inv()?;
    let x = m.scale(&h);
    x.eval_at(&rat(1, 1)).map_err(|_| Error::GeneratorNotDivisible)?;
    Ok(x)
}

/// Residual count of the equivariance `f(x▷φ) = ad_x f(φ)` over the
/// generators, with `ad_E y = Ey − KyK⁻¹E`, `ad_F y = FyK − yFK`,
/// `ad_K y = KyK⁻¹` (evaluated on `word`).
pub fn f_equivariance_residual(ctx: &RContext, phis: &[ExactMatrix], word: &Word) -> Result<usize> {
    let n = ctx.n;
    let end = crate::rep::RepAction::end_v_dual(n)?;
    let m = ctx.module(word);
    let q = ctx.q_on(word);
    let mut bad = 0;
    let unvec = |v: &crate::linalg::SparseRow| ExactMatrix::from_triplets(n, n, v.iter().map(|(j, x)| (j / n, j % n, x.clone())));
    for phi in phis {
        let fphi = contract_first_leg(phi, &q, n);
        for i in 0..n - 1 {
            let (e, f, k, ki) = (&m.e[i], &m.f[i], &m.k[i], &m.k_inv[i]);
            let ad = [
                (&end.e[i], e.mul(&fphi).sub(&k.mul(&fphi).mul(ki).mul(e))),
                (&end.f[i], f.mul(&fphi).mul(k).sub(&fphi.mul(f).mul(k))),
                (&end.k[i], k.mul(&fphi).mul(ki)),
            ];
            for (act, want) in ad {
                let moved = unvec(&act.apply(&phi.vectorize()));
                bad += contract_first_leg(&moved, &q, n).sub(&want).nnz();
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Subspace;

    #[test]
    fn casimir_on_vector_is_a_unit_scalar() {
        let ctx = RContext::new(2).unwrap();
        let c = c_v(&ctx, &Word::power(1));
        let s = c.get(0, 0);
        assert_eq!(c, ExactMatrix::identity(2).scale(&s));
        assert_eq!(s.eval_at(&rat(1, 1)).unwrap(), rat(1, 1));
        assert!(c.mul(&c_v_inverse(&ctx, &Word::power(1)).unwrap()) == ExactMatrix::identity(2));
    }

    #[test]
    fn generators_classical_limit() {
        for n in [2, 3] {
            let ctx = RContext::new(n).unwrap();
            let gens = lie_generators(n).unwrap();
            assert_eq!(gens.len(), n * n - 1);
            let xs: Vec<_> = gens.iter().map(|g| divide_by_h(&f_map(&ctx, g, &Word::power(1))).unwrap()).collect();
            let lim: Vec<_> = xs.iter().map(|x| x.eval_at(&rat(1, 1)).unwrap().vectorize()).collect();
            let span = Subspace::from_spanning(n * n, &lim);
            assert_eq!(span.dim(), n * n - 1);
            assert!(!span.contains(&ExactMatrix::identity(n).vectorize()));
        }
    }

    #[test]
    fn f_is_equivariant() {
        let ctx = RContext::new(2).unwrap();
        let mut phis = lie_generators(2).unwrap();
        phis.push(quantum_trace(2));
        assert_eq!(f_equivariance_residual(&ctx, &phis, &Word::power(1)).unwrap(), 0);
        assert_eq!(f_equivariance_residual(&ctx, &phis, &"V,V*".parse().unwrap()).unwrap(), 0);
    }

    #[test]
    fn f_images_span_end_v() {
        let ctx = RContext::new(2).unwrap();
        let rows: Vec<_> = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| f_map(&ctx, &ExactMatrix::unit(2, i, j), &Word::power(1)).vectorize())
            .collect();
        assert_eq!(Subspace::from_spanning(4, &rows).dim(), 4);
    }
}
