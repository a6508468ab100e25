use rayon::prelude::*;

use crate::linalg::{Echelon, ExactMatrix, SparseRow, Subspace};

/// Degree-`k` component of the two-sided ideal generated by `rel ⊂ L⊗L`:
/// `Σ_i L^{⊗i} ⊗ rel ⊗ L^{⊗(k−2−i)}`.
pub fn ideal_component(rel: &Subspace, dim_l: usize, k: usize) -> Subspace {
    let amb = dim_l.pow(k as u32);
    if k < 2 {
        return Subspace::zero(amb);
    }
    // Each summand is already in RREF; merge them.
    let parts: Vec<Subspace> = (0..=k - 2)
        .into_par_iter()
        .map(|i| Subspace::full(dim_l.pow(i as u32)).kron(rel).kron(&Subspace::full(dim_l.pow((k - 2 - i) as u32))))
        .collect();
    let mut acc = parts[0].clone();
    for p in &parts[1..] {
        acc = acc.sum(p).expect("same ambient");
    }
    acc
}

/// `∩_i L^{⊗i} ⊗ s ⊗ L^{⊗(k−2−i)}`, computed as the annihilator of the sum
/// of the annihilated pieces.
pub fn intersection_component(s: &Subspace, dim_l: usize, k: usize) -> Subspace {
    let amb = dim_l.pow(k as u32);
    if k < 2 {
        return Subspace::full(amb);
    }
    let ann = s.annihilator();
    let sum = ideal_component(&ann, dim_l, k);
    sum.annihilator()
}

/// Graded dimension `dim L^{⊗k} − dim(ideal)_k` of `T(L)/⟨rel⟩`.
pub fn graded_dim(rel: &Subspace, dim_l: usize, k: usize) -> usize {
    dim_l.pow(k as u32) - ideal_component(rel, dim_l, k).dim()
}

/// `m` acting on leg `pos` of `L^{⊗k}` (legs of dimension `dim_l`).
pub fn on_leg(m: &ExactMatrix, dim_l: usize, k: usize, pos: usize) -> ExactMatrix {
    let l = ExactMatrix::identity(dim_l.pow(pos as u32));
    let r = ExactMatrix::identity(dim_l.pow((k - pos - 1) as u32));
    l.kron(m).kron(&r)
}

/// Reassembles an echelon basis of the span of `rows` in `ambient`.
pub fn span(ambient: usize, rows: &[SparseRow]) -> Subspace {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    Subspace::from_echelon(ambient, e)
}
