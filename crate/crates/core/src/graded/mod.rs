//! Quadratic and quadratic-linear algebras over `L`: `(Sg)_h`, `(Sg)_{t,h}`,
//! `(Λg)_h`, the invariant form, `W²` and `σ̄`.

mod killing;
mod pbw;
mod poisson;
mod tensor;

use std::sync::Arc;

pub use killing::{
    braided_flip, extend_form, is_nondegenerate, killing_form, lie_embedding, r_on_lie, right_orthogonal, sigma_bar, trace, w2_candidate,
    w2_complement, Extension, W2Candidate,
};
pub use pbw::{beta_on_v2, cumulative_sym, filtered_dims, ideal_rows, offsets, pbw_structural, realization_filtered_rank, FilteredRelations};
pub use poisson::poisson_certs;
pub use tensor::{graded_dim, ideal_component, intersection_component, on_leg, span};

use crate::cert::{binomial, GradedCert};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Subspace};
use crate::qlie::QuantumLie;
use crate::rep::{invariants, RepAction};

/// Which algebra a relation space presents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Sym,
    Ext,
    SymT,
}

/// Generators, quadratic relations and, for `(Sg)_{t,h}`, the linear part.
///
/// For `SymT` the relations are `A u − t·B u` for `u ∈ L⊗L` with `A = 1 − σ`
/// and `B` the bracket.
#[derive(Clone, Debug)]
pub struct QuadraticData {
    pub kind: AlgebraKind,
    pub gen_dim: usize,
    pub rel2: Subspace,
    pub linear_part: Option<(ExactMatrix, ExactMatrix)>,
}

/// `Im(1 − σ)`, checked to have dimension `dim Λ²g`.
pub fn sym_relations(ql: &QuantumLie) -> Result<QuadraticData> {
    let nl = ql.data.dim_l;
    let a = ExactMatrix::identity(nl * nl).sub(&ql.data.sigma);
    let rel2 = Subspace::column_space(&a);
    let want = binomial(nl as u64, 2) as usize;
    if rel2.dim() != want {
        return Err(Error::DimensionMismatch { context: "sym relations".into(), expected: want, computed: rel2.dim() });
    }
    Ok(QuadraticData { kind: AlgebraKind::Sym, gen_dim: nl, rel2, linear_part: None })
}

/// Everything degree-2 built on top of the quantum Lie algebra.
pub struct GradedContext {
    pub ql: Arc<QuantumLie>,
    pub killing: ExactMatrix,
    pub v2: Subspace,
    pub w2: W2Candidate,
    pub tried: Vec<W2Candidate>,
    pub sigma_bar: ExactMatrix,
    /// `ker(1 − σ)`, the eigenspace candidate for `W²`.
    pub sigma_fixed: Subspace,
}

impl GradedContext {
    pub fn new(ql: Arc<QuantumLie>) -> Result<Self> {
        let killing = killing_form(&ql)?;
        if !is_nondegenerate(&killing) {
            return Err(Error::Construction("invariant form is degenerate".into()));
        }
        let sym = sym_relations(&ql)?;
        let v2 = sym.rel2;
        let (w2, tried) = w2_complement(&ql, &v2, &killing)?;
        let sigma_bar = sigma_bar(&v2, &w2.space)?;
        let nl = ql.data.dim_l;
        let sigma_fixed = crate::linalg::kernel(&ExactMatrix::identity(nl * nl).sub(&ql.data.sigma));
        Ok(GradedContext { ql, killing, v2, w2, tried, sigma_bar, sigma_fixed })
    }

    pub fn dim_l(&self) -> usize {
        self.ql.data.dim_l
    }

    pub fn sym(&self) -> QuadraticData {
        QuadraticData { kind: AlgebraKind::Sym, gen_dim: self.dim_l(), rel2: self.v2.clone(), linear_part: None }
    }

    pub fn ext(&self) -> QuadraticData {
        QuadraticData { kind: AlgebraKind::Ext, gen_dim: self.dim_l(), rel2: self.w2.space.clone(), linear_part: None }
    }

    pub fn sym_t(&self) -> QuadraticData {
        let nl = self.dim_l();
        let a = ExactMatrix::identity(nl * nl).sub(&self.ql.data.sigma);
        QuadraticData { kind: AlgebraKind::SymT, gen_dim: nl, rel2: self.v2.clone(), linear_part: Some((a, self.ql.data.bracket.clone())) }
    }

    /// `L^{⊗k}` as a module.
    pub fn tensor_power(&self, k: usize) -> RepAction {
        let l = &self.ql.data.module;
        let mut m = RepAction::trivial(l.n);
        for _ in 0..k {
            m = RepAction::tensor(&m, l);
        }
        m
    }

    /// Invariants of `W^k ⊂ L^{⊗k}`.
    pub fn invariant_component(&self, k: usize) -> Subspace {
        let wk = intersection_component(&self.w2.space, self.dim_l(), k);
        let inv = invariants(&self.tensor_power(k));
        wk.intersect(&inv).expect("same ambient")
    }

    /// Degree-2 certificates: form uniqueness, nondegeneracy, `W²`, `σ̄`.
    pub fn degree_two_certs(&self) -> Result<Vec<GradedCert>> {
        let nl = self.dim_l() as u64;
        let one = crate::scalars::rat(1, 1);
        let mut out = vec![
            GradedCert::new("graded.sym_relations_dim", 2, binomial(nl, 2), self.v2.dim() as u64),
            GradedCert::holds("graded.killing.nondegenerate", 2, is_nondegenerate(&self.killing)),
        ];
        for c in &self.tried {
            out.push(GradedCert::holds(format!("graded.w2.{}.invariant_and_direct", c.extension.name()), 2, c.ok()).informational(c.extension != self.w2.extension));
        }
        out.push(GradedCert::new("graded.w2_dim", 2, binomial(nl + 1, 2), self.w2.space.dim() as u64));
        out.push(GradedCert::holds("graded.w2.invariant", 2, self.w2.invariant));
        out.push(GradedCert::holds("graded.w2.direct_sum", 2, self.w2.direct));
        let id = ExactMatrix::identity((nl * nl) as usize);
        out.push(GradedCert::zero("graded.sigma_bar.involution", 2, self.sigma_bar.mul(&self.sigma_bar).sub(&id).nnz()));
        let tr = trace(&self.sigma_bar);
        out.push(GradedCert::holds("graded.sigma_bar.trace_dim_g", 2, tr == crate::scalars::RatFunc::from_int(nl as i64)));
        let sb1 = self.sigma_bar.eval_at(&one)?;
        out.push(GradedCert::zero("graded.sigma_bar.limit_flip", 2, sb1.sub(&crate::rep::flip(nl as usize, nl as usize)).nnz()));
        let w_lim = self.w2.space.limit_at(&one)?;
        let sym_classical = crate::linalg::kernel(&id.sub(&crate::rep::flip(nl as usize, nl as usize)));
        out.push(GradedCert::holds("graded.w2.limit_symmetric", 2, w_lim == sym_classical));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_flat_in_low_degrees() {
        let g = GradedContext::new(Arc::new(QuantumLie::new(2).unwrap())).unwrap();
        let sym: Vec<usize> = (0..=3).map(|k| graded_dim(&g.v2, 3, k)).collect();
        let ext: Vec<usize> = (0..=4).map(|k| graded_dim(&g.w2.space, 3, k)).collect();
        assert_eq!(sym, vec![1, 3, 6, 10]);
        assert_eq!(ext, vec![1, 3, 3, 1, 0]);
        assert!(g.degree_two_certs().unwrap().iter().all(|c| c.pass || c.info));
        assert_eq!(g.w2.space, g.sigma_fixed);
        let inv: Vec<usize> = (0..=3).map(|k| g.invariant_component(k).dim()).collect();
        assert_eq!(inv, vec![1, 0, 1, 0]);
    }

    #[test]
    fn n2_poisson_and_pbw() {
        let g = GradedContext::new(Arc::new(QuantumLie::new(2).unwrap())).unwrap();
        assert!(poisson_certs(&g).unwrap().iter().all(|c| c.pass));
        assert!(g.pbw_check(&g.sym_t(), 3, 3).unwrap().iter().all(|c| c.pass));
    }
}
