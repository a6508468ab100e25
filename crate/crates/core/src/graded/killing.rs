use crate::error::{Error, Result};
use crate::linalg::{determinant, inverse, regularize_at, ExactMatrix, Subspace};
use crate::qlie::QuantumLie;
use crate::rep::{coords_in_columns, flip, invariants, Letter, RepAction, Word};
use crate::scalars::{rat, RatFunc};

/// The invariant bilinear form on `L`, normalized so that at `q = 1` it is
/// the trace form `tr(X_a X_b)` of the classical generators on `V`
/// (`1/(2n)` times the Killing form).
pub fn killing_form(ql: &QuantumLie) -> Result<ExactMatrix> {
    let l = &ql.data.module;
    let nl = l.dim;
    // Invariant functionals on L⊗L are invariant vectors of (L⊗L)*.
    let ll_dual = RepAction::dual(&RepAction::tensor(l, l));
    let inv = invariants(&ll_dual);
    if inv.dim() != 1 {
        return Err(Error::InvariantFormNotUnique(inv.dim()));
    }
    let one = rat(1, 1);
    let v = regularize_at(&inv.basis_rows()[0], &one);
    let b = ExactMatrix::from_triplets(nl, nl, v.iter().map(|(j, x)| (j / nl, j % nl, x.clone())));
    let xs = ql.realize_power(1)?;
    let x1: Vec<ExactMatrix> = xs.x.iter().map(|x| x.eval_at(&one)).collect::<Result<_>>()?;
    let b1 = b.eval_at(&one)?;
    for (i, j, v) in b1.entries() {
        let tr = x1[i].mul(&x1[j]);
        let t = (0..tr.rows()).fold(RatFunc::zero(), |acc, k| acc.add(&tr.get(k, k)));
        if !t.is_zero() {
            return Ok(b.scale(&t.div(v)?));
        }
    }
    Err(Error::Construction("invariant form vanishes at q = 1".into()))
}

pub fn is_nondegenerate(b: &ExactMatrix) -> bool {
    determinant(b).map(|d| !d.is_zero()).unwrap_or(false)
}

/// Embedding `L → V⊗V*` through `End(V)*`.
pub fn lie_embedding(ql: &QuantumLie) -> ExactMatrix {
    let nl = ql.data.dim_l;
    let cols: Vec<usize> = (0..nl).collect();
    let rows: Vec<usize> = (0..ql.phi.rows()).collect();
    ql.t.mul(&ql.phi.select(&rows, &cols))
}

/// `R_{L,L}`: the fused R-matrix on `(V⊗V*)⊗(V⊗V*)` restricted to `L⊗L`.
pub fn r_on_lie(ql: &QuantumLie) -> Result<ExactMatrix> {
    let w = Word(vec![Letter::V, Letter::D]);
    let e = lie_embedding(ql);
    let ee = e.kron(&e);
    let r = ql.ctx.fused(&w, &w);
    coords_in_columns(&ee, &r.mul(&ee))
}

/// Braided flip `Ř = τ R_{L,L}` on `L⊗L`.
pub fn braided_flip(ql: &QuantumLie) -> Result<ExactMatrix> {
    let nl = ql.data.dim_l;
    Ok(flip(nl, nl).mul(&r_on_lie(ql)?))
}

/// Extension conventions of `B` to `L⊗L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extension {
    /// `B(a,c) B(b,d)`.
    Product,
    /// `(B⊗B)(a ⊗ Ř(b⊗c) ⊗ d)`.
    Braided,
    /// `B(b,c) B(a,d)`.
    Nested,
}

impl Extension {
    pub fn name(self) -> &'static str {
        match self {
            Extension::Product => "product",
            Extension::Braided => "braided",
            Extension::Nested => "nested",
        }
    }
}

/// The degree-2 form as an `N² × N²` matrix on `(a,b), (c,d)`.
pub fn extend_form(b: &ExactMatrix, ext: Extension, rcheck: Option<&ExactMatrix>) -> Result<ExactMatrix> {
    let nl = b.rows();
    let mut trips = Vec::new();
    match ext {
        Extension::Product => return Ok(b.kron(b)),
        Extension::Nested => {
            for (bb, c, v) in b.entries() {
                for (a, d, w) in b.entries() {
                    trips.push((a * nl + bb, c * nl + d, v.mul(w)));
                }
            }
        }
        Extension::Braided => {
            let rc = rcheck.ok_or_else(|| Error::Construction("braided extension needs Ř".into()))?;
            // Σ_{x,y} B[a,x] Ř[(x,y),(b,c)] B[y,d]
            let bt = b.transpose();
            for (xy, bc, r) in rc.entries() {
                let (x, y) = (xy / nl, xy % nl);
                let (bb, c) = (bc / nl, bc % nl);
                for (a, bx) in bt.row(x) {
                    for (d, by) in b.row(y) {
                        trips.push((*a * nl + bb, c * nl + *d, bx.mul(r).mul(by)));
                    }
                }
            }
        }
    }
    Ok(ExactMatrix::from_triplets(nl * nl, nl * nl, trips))
}

/// Right orthogonal complement `{w : B₂(v, w) = 0 ∀ v ∈ V²}`.
pub fn right_orthogonal(v2: &Subspace, b2: &ExactMatrix) -> Subspace {
    let rows: Vec<_> = v2.basis_rows().iter().map(|r| b2.left_apply(r)).collect();
    crate::linalg::kernel(&ExactMatrix::from_rows(b2.cols(), rows))
}

/// Outcome of building `W²` under one extension convention.
#[derive(Clone, Debug)]
pub struct W2Candidate {
    pub extension: Extension,
    pub space: Subspace,
    pub invariant: bool,
    pub direct: bool,
}

impl W2Candidate {
    pub fn ok(&self) -> bool {
        self.invariant && self.direct
    }
}

pub fn w2_candidate(ql: &QuantumLie, v2: &Subspace, b: &ExactMatrix, ext: Extension, rcheck: Option<&ExactMatrix>) -> Result<W2Candidate> {
    let b2 = extend_form(b, ext, rcheck)?;
    let w = right_orthogonal(v2, &b2);
    let ll = RepAction::tensor(&ql.data.module, &ql.data.module);
    let invariant = ll.generators().iter().all(|(_, _, g)| w.is_invariant_under(g));
    let sum = v2.sum(&w)?;
    let direct = v2.intersect(&w)?.dim() == 0 && sum.dim() == v2.ambient();
    Ok(W2Candidate { extension: ext, space: w, invariant, direct })
}

/// `W²`: the primary product extension if it is invariant and
/// complementary, otherwise the braided extension.
pub fn w2_complement(ql: &QuantumLie, v2: &Subspace, b: &ExactMatrix) -> Result<(W2Candidate, Vec<W2Candidate>)> {
    let prod = w2_candidate(ql, v2, b, Extension::Product, None)?;
    if prod.ok() {
        return Ok((prod.clone(), vec![prod]));
    }
    let rc = braided_flip(ql)?;
    let br = w2_candidate(ql, v2, b, Extension::Braided, Some(&rc))?;
    let tried = vec![prod, br.clone()];
    if br.ok() {
        return Ok((br, tried));
    }
    Err(Error::Construction("no extension convention gives an invariant complement".into()))
}

/// The involution with eigenvalue `−1` on `V²` and `+1` on `W²`.
pub fn sigma_bar(v2: &Subspace, w2: &Subspace) -> Result<ExactMatrix> {
    let amb = v2.ambient();
    let mut cols = Vec::with_capacity(amb);
    cols.extend(v2.basis_rows().iter().cloned());
    cols.extend(w2.basis_rows().iter().cloned());
    let m = ExactMatrix::from_rows(amb, cols).transpose();
    let minv = inverse(&m)?;
    let signs: Vec<RatFunc> = (0..amb).map(|i| RatFunc::from_int(if i < v2.dim() { -1 } else { 1 })).collect();
    Ok(m.mul(&ExactMatrix::diagonal(&signs)).mul(&minv))
}

pub fn trace(m: &ExactMatrix) -> RatFunc {
    (0..m.rows()).fold(RatFunc::zero(), |acc, i| acc.add(&m.get(i, i)))
}
