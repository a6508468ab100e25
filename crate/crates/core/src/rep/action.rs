use crate::error::{Error, Result};
use crate::linalg::{inverse, kernel, ExactMatrix, Subspace};
use crate::scalars::RatFunc;

/// A finite-dimensional `U_q(sl n)`-module given by generator matrices.
///
/// Matrices act on column vectors. Index `i` of `e`, `f`, `k`, `k_inv` is the
/// simple root `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepAction {
    pub n: usize,
    pub dim: usize,
    pub e: Vec<ExactMatrix>,
    pub f: Vec<ExactMatrix>,
    pub k: Vec<ExactMatrix>,
    pub k_inv: Vec<ExactMatrix>,
    pub label: String,
}

/// Generator kinds, in the order used by every equivariance check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    E,
    F,
    K,
    KInv,
}

fn check_rank(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    Ok(())
}

fn cartan(i: usize, j: usize) -> i64 {
    if i == j {
        2
    } else if i.abs_diff(j) == 1 {
        -1
    } else {
        0
    }
}

impl RepAction {
    pub fn trivial(n: usize) -> Self {
        let one = ExactMatrix::identity(1);
        let zero = ExactMatrix::zeros(1, 1);
        RepAction {
            n,
            dim: 1,
            e: vec![zero.clone(); n - 1],
            f: vec![zero; n - 1],
            k: vec![one.clone(); n - 1],
            k_inv: vec![one; n - 1],
            label: "1".into(),
        }
    }

    /// The vector representation `V`.
    pub fn vector(n: usize) -> Result<Self> {
        check_rank(n)?;
        let mut e = Vec::new();
        let mut f = Vec::new();
        let mut k = Vec::new();
        let mut k_inv = Vec::new();
        for i in 0..n - 1 {
            e.push(ExactMatrix::unit(n, i, i + 1));
            f.push(ExactMatrix::unit(n, i + 1, i));
            let mut d = vec![RatFunc::one(); n];
            d[i] = RatFunc::q();
            d[i + 1] = RatFunc::q_pow(-1);
            let di: Vec<RatFunc> = d.iter().map(|x| x.inv().unwrap()).collect();
            k.push(ExactMatrix::diagonal(&d));
            k_inv.push(ExactMatrix::diagonal(&di));
        }
        Ok(RepAction { n, dim: n, e, f, k, k_inv, label: "V".into() })
    }

    /// `a ⊗ b` via `Δ(E) = E⊗1 + K⊗E`, `Δ(F) = F⊗K⁻¹ + 1⊗F`, `Δ(K) = K⊗K`.
    pub fn tensor(a: &RepAction, b: &RepAction) -> RepAction {
        if a.dim == 1 && a.label == "1" {
            return b.clone();
        }
        if b.dim == 1 && b.label == "1" {
            return a.clone();
        }
        let ia = ExactMatrix::identity(a.dim);
        let ib = ExactMatrix::identity(b.dim);
        let r = 0..a.n - 1;
        RepAction {
            n: a.n,
            dim: a.dim * b.dim,
            e: r.clone().map(|i| a.e[i].kron(&ib).add(&a.k[i].kron(&b.e[i]))).collect(),
            f: r.clone().map(|i| a.f[i].kron(&b.k_inv[i]).add(&ia.kron(&b.f[i]))).collect(),
            k: r.clone().map(|i| a.k[i].kron(&b.k[i])).collect(),
            k_inv: r.map(|i| a.k_inv[i].kron(&b.k_inv[i])).collect(),
            label: format!("{}⊗{}", a.label, b.label),
        }
    }

    /// Dual module: `x ↦ (action of γ(x))ᵀ`, with `γ(E) = −K⁻¹E`,
    /// `γ(F) = −FK`, `γ(K) = K⁻¹`.
    pub fn dual(a: &RepAction) -> RepAction {
        let m1 = RatFunc::from_int(-1);
        let r = 0..a.n - 1;
        RepAction {
            n: a.n,
            dim: a.dim,
            e: r.clone().map(|i| a.k_inv[i].mul(&a.e[i]).scale(&m1).transpose()).collect(),
            f: r.clone().map(|i| a.f[i].mul(&a.k[i]).scale(&m1).transpose()).collect(),
            k: r.clone().map(|i| a.k_inv[i].transpose()).collect(),
            k_inv: r.map(|i| a.k[i].transpose()).collect(),
            label: if a.dim == 1 && a.label == "1" { "1".into() } else { format!("({})*", a.label) },
        }
    }

    /// `End(V)*` with `(xφ)(a) = φ(γ(x₁) a x₂)`, on the coordinate basis
    /// `e*_{ij}` (index `i·n + j`).
    pub fn end_v_dual(n: usize) -> Result<RepAction> {
        let v = Self::vector(n)?;
        let nn = n * n;
        // Right action a ◁ x = γ(x₁) a x₂ on elementary matrices.
        let build = |g: &dyn Fn(&ExactMatrix) -> ExactMatrix| {
            let mut trips = Vec::new();
            for k in 0..n {
                for l in 0..n {
                    let b = g(&ExactMatrix::unit(n, k, l));
                    for (i, j, x) in b.entries() {
                        trips.push((k * n + l, i * n + j, x.clone()));
                    }
                }
            }
            ExactMatrix::from_triplets(nn, nn, trips)
        };
        let mut out = RepAction { n, dim: nn, e: vec![], f: vec![], k: vec![], k_inv: vec![], label: "End(V)*".into() };
        for i in 0..n - 1 {
            let (e, f, k, ki) = (&v.e[i], &v.f[i], &v.k[i], &v.k_inv[i]);
            out.k.push(build(&|a| ki.mul(a).mul(k)));
            out.k_inv.push(build(&|a| k.mul(a).mul(ki)));
            out.e.push(build(&|a| ki.mul(a).mul(e).sub(&ki.mul(e).mul(a))));
            out.f.push(build(&|a| a.mul(f).sub(&f.mul(k).mul(a).mul(ki))));
        }
        Ok(out)
    }

    /// All generator matrices in a fixed order.
    pub fn generators(&self) -> Vec<(Gen, usize, &ExactMatrix)> {
        let mut out = Vec::new();
        for i in 0..self.n - 1 {
            out.push((Gen::E, i, &self.e[i]));
            out.push((Gen::F, i, &self.f[i]));
            out.push((Gen::K, i, &self.k[i]));
            out.push((Gen::KInv, i, &self.k_inv[i]));
        }
        out
    }

    /// Checks `K K⁻¹ = 1`, `K_i E_j K_i⁻¹ = q^{a_ij} E_j`, the `F` analogue, and
    /// `[E_i, F_j] = δ_ij (K_i − K_i⁻¹)/(q − q⁻¹)`. Returns the number of
    /// failing identities.
    pub fn relation_failures(&self) -> usize {
        let id = ExactMatrix::identity(self.dim);
        let h = RatFunc::q_minus_qinv().inv().unwrap();
        let mut bad = 0;
        for i in 0..self.n - 1 {
            bad += usize::from(self.k[i].mul(&self.k_inv[i]) != id);
            for j in 0..self.n - 1 {
                let c = RatFunc::q_pow(cartan(i, j));
                let ci = RatFunc::q_pow(-cartan(i, j));
                let kek = self.k[i].mul(&self.e[j]).mul(&self.k_inv[i]);
                bad += usize::from(kek != self.e[j].scale(&c));
                let kfk = self.k[i].mul(&self.f[j]).mul(&self.k_inv[i]);
                bad += usize::from(kfk != self.f[j].scale(&ci));
                let comm = self.e[i].commutator(&self.f[j]);
                let want = if i == j { self.k[i].sub(&self.k_inv[i]).scale(&h) } else { ExactMatrix::zeros(self.dim, self.dim) };
                bad += usize::from(comm != want);
                bad += usize::from(self.k[i].mul(&self.k[j]) != self.k[j].mul(&self.k[i]));
            }
        }
        bad
    }

    /// Conjugated module `t⁻¹ · x · t`, for `t` invertible.
    pub fn conjugate(&self, t: &ExactMatrix, label: &str) -> Result<RepAction> {
        let ti = inverse(t)?;
        let c = |m: &ExactMatrix| ti.mul(m).mul(t);
        Ok(RepAction {
            n: self.n,
            dim: t.cols(),
            e: self.e.iter().map(c).collect(),
            f: self.f.iter().map(c).collect(),
            k: self.k.iter().map(c).collect(),
            k_inv: self.k_inv.iter().map(c).collect(),
            label: label.into(),
        })
    }

    /// Restriction to the span of the columns of `basis` (which must be
    /// invariant); the result uses those columns as its basis.
    pub fn restrict_to_columns(&self, basis: &ExactMatrix, label: &str) -> Result<RepAction> {
        let sub = Subspace::column_space(basis);
        if sub.dim() != basis.cols() {
            return Err(Error::Construction("restriction basis is not independent".into()));
        }
        let coords_of = |m: &ExactMatrix| -> Result<ExactMatrix> { coords_in_columns(basis, &m.mul(basis)) };
        Ok(RepAction {
            n: self.n,
            dim: basis.cols(),
            e: self.e.iter().map(coords_of).collect::<Result<_>>()?,
            f: self.f.iter().map(coords_of).collect::<Result<_>>()?,
            k: self.k.iter().map(coords_of).collect::<Result<_>>()?,
            k_inv: self.k_inv.iter().map(coords_of).collect::<Result<_>>()?,
            label: label.into(),
        })
    }

    /// Whether `m` commutes with the action: `m·x_A = x_B·m` for `m: A → B`.
    pub fn intertwines(m: &ExactMatrix, a: &RepAction, b: &RepAction) -> bool {
        a.generators().iter().zip(b.generators()).all(|((_, _, x), (_, _, y))| m.mul(x) == y.mul(m))
    }

    /// Sum of nonzero residual entries of `m·x_A − x_B·m` over generators.
    pub fn intertwining_residual(m: &ExactMatrix, a: &RepAction, b: &RepAction) -> usize {
        a.generators().iter().zip(b.generators()).map(|((_, _, x), (_, _, y))| m.mul(x).sub(&y.mul(m)).nnz()).sum()
    }
}

/// Solves `basis · Y = m` for `Y`, where `basis` has independent columns.
pub fn coords_in_columns(basis: &ExactMatrix, m: &ExactMatrix) -> Result<ExactMatrix> {
    let sub = Subspace::column_space(basis);
    // The RREF of the column space reads coordinates at pivot rows; map them
    // back to the given columns.
    let bt = basis.transpose();
    let to_rref: Vec<Vec<RatFunc>> = bt
        .row_data()
        .iter()
        .map(|r| sub.coords(r).ok_or_else(|| Error::Construction("basis column outside its span".into())))
        .collect::<Result<_>>()?;
    let change = inverse(&ExactMatrix::from_dense(to_rref))?; // rref coords -> basis coords (row form)
    let mt = m.transpose();
    let mut rows = Vec::with_capacity(mt.rows());
    for r in mt.row_data() {
        let c = sub.coords(r).ok_or_else(|| Error::Construction("column outside the span".into()))?;
        rows.push(change.left_apply(&crate::linalg::row_from_dense(&c)));
    }
    Ok(ExactMatrix::from_rows(basis.cols(), rows).transpose())
}

/// Joint invariants: `E v = 0`, `F v = 0`, `K v = v` for all simple roots.
pub fn invariants(a: &RepAction) -> Subspace {
    let id = ExactMatrix::identity(a.dim);
    let mut parts = Vec::new();
    for i in 0..a.n - 1 {
        parts.push(a.e[i].clone());
        parts.push(a.f[i].clone());
        parts.push(a.k[i].sub(&id));
    }
    let refs: Vec<&ExactMatrix> = parts.iter().collect();
    kernel(&ExactMatrix::vstack(&refs))
}

/// Basis of `Hom(A, B)`: matrices `T` (`B.dim × A.dim`) with `T x_A = x_B T`.
pub fn hom_space(a: &RepAction, b: &RepAction) -> Vec<ExactMatrix> {
    // Row-major vec: vec(T X) = (I ⊗ Xᵀ) vec T, vec(Y T) = (Y ⊗ I) vec T.
    let ia = ExactMatrix::identity(a.dim);
    let ib = ExactMatrix::identity(b.dim);
    let mut parts = Vec::new();
    for ((_, _, x), (_, _, y)) in a.generators().into_iter().zip(b.generators()) {
        parts.push(ib.kron(&x.transpose()).sub(&y.kron(&ia)));
    }
    let refs: Vec<&ExactMatrix> = parts.iter().collect();
    let ker = kernel(&ExactMatrix::vstack(&refs));
    ker.basis_rows()
        .iter()
        .map(|r| ExactMatrix::from_triplets(b.dim, a.dim, r.iter().map(|(j, v)| (j / a.dim, j % a.dim, v.clone()))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_rep_weights_and_relations() {
        let v = RepAction::vector(2).unwrap();
        assert_eq!(v.k[0], ExactMatrix::diagonal(&[RatFunc::q(), RatFunc::q_pow(-1)]));
        assert_eq!(v.relation_failures(), 0);
        assert_eq!(RepAction::vector(3).unwrap().relation_failures(), 0);
        assert!(matches!(RepAction::vector(1), Err(Error::InvalidRank(1))));
    }

    #[test]
    fn ef_commutator_at_one_is_h() {
        let v = RepAction::vector(2).unwrap();
        let c = v.e[0].commutator(&v.f[0]).eval_at(&crate::scalars::rat(1, 1)).unwrap();
        assert_eq!(c, ExactMatrix::from_i64(&[&[1, 0], &[0, -1]]));
    }

    #[test]
    fn tensor_weights_and_associativity() {
        let v = RepAction::vector(2).unwrap();
        let vv = RepAction::tensor(&v, &v);
        let w: Vec<RatFunc> = (0..4).map(|i| vv.k[0].get(i, i)).collect();
        assert_eq!(w, vec![RatFunc::q_pow(2), RatFunc::one(), RatFunc::one(), RatFunc::q_pow(-2)]);
        let l = RepAction::tensor(&vv, &v);
        let r = RepAction::tensor(&v, &vv);
        assert_eq!((l.e, l.f, l.k), (r.e, r.f, r.k));
    }

    #[test]
    fn dual_and_end_modules() {
        for n in [2, 3] {
            let v = RepAction::vector(n).unwrap();
            let d = RepAction::dual(&v);
            assert_eq!(d.relation_failures(), 0);
            assert_eq!(invariants(&RepAction::tensor(&d, &v)).dim(), 1);
            assert_eq!(invariants(&v).dim(), 0);
            let end = RepAction::end_v_dual(n).unwrap();
            assert_eq!(end.relation_failures(), 0);
            assert_eq!(invariants(&end).dim(), 1);
        }
        assert_eq!(invariants(&RepAction::trivial(2)).dim(), 1);
    }
}
