use rayon::prelude::*;

use super::tensor::intersection_component;
use super::{GradedContext, QuadraticData};
use crate::cert::{binomial, GradedCert};
use crate::error::{Error, Result};
use crate::linalg::{rank, rref, row_axpy, row_scale, Echelon, ExactMatrix, SparseRow, Subspace};
use crate::scalars::{BigRat, RatFunc};

/// Pivot columns of `a`: a set of columns spanning its image.
fn pivot_columns(a: &ExactMatrix) -> Vec<usize> {
    let (_, r) = rref(a);
    r.row_data().iter().filter_map(|row| row.first().map(|x| x.0)).collect()
}

/// `β` on `V² = Im A`: `β(v) = B u` for any `u` with `A u = v`. Returned as
/// the images of the RREF basis of `V²`. Also returns the residual count of
/// `B` on `ker A`, which must vanish for `β` to be well defined.
pub fn beta_on_v2(a: &ExactMatrix, b: &ExactMatrix, v2: &Subspace) -> Result<(Vec<SparseRow>, usize)> {
    let ker = crate::linalg::kernel(a);
    let leak: usize = ker.basis_rows().iter().map(|k| b.apply(k).len()).sum();
    let piv = pivot_columns(a);
    let rows: Vec<usize> = (0..a.rows()).collect();
    let aj = a.select(&rows, &piv);
    let mut out = Vec::with_capacity(v2.dim());
    let basis_mat = ExactMatrix::from_rows(a.rows(), v2.basis_rows().to_vec()).transpose();
    let coords = crate::rep::coords_in_columns(&aj, &basis_mat)?;
    let ct = coords.transpose();
    for i in 0..v2.dim() {
        let u: SparseRow = ct.row(i).iter().map(|(j, x)| (piv[*j], x.clone())).collect();
        out.push(b.apply(&u));
    }
    Ok((out, leak))
}

fn beta_apply(v2: &Subspace, beta: &[SparseRow], w: &SparseRow) -> Option<SparseRow> {
    let c = v2.coords(w)?;
    let mut acc = Vec::new();
    for (ci, bi) in c.iter().zip(beta) {
        acc = row_axpy(&acc, ci, bi);
    }
    Some(acc)
}

/// Structural PBW conditions for the relations `v − t β(v)`, `v ∈ R`:
/// `B` vanishes on `ker A`, `(β⊗1 − 1⊗β)(R⊗L ∩ L⊗R) ⊆ R`, and
/// `β∘(β⊗1 − 1⊗β) = 0` there.
pub fn pbw_structural(a: &ExactMatrix, b: &ExactMatrix, r: &Subspace, nl: usize, label: &str) -> Result<Vec<GradedCert>> {
    let (beta, leak) = beta_on_v2(a, b, r)?;
    let inter = intersection_component(r, nl, 3);
    let mut escape = 0usize;
    let mut jacobi = 0usize;
    for w in inter.basis_rows() {
        // (β⊗1)(w) and (1⊗β)(w)
        let mut right: Vec<SparseRow> = vec![Vec::new(); nl];
        let mut left: Vec<SparseRow> = vec![Vec::new(); nl];
        for (idx, v) in w {
            let (ab, c) = (idx / nl, idx % nl);
            right[c].push((ab, v.clone()));
            let (a0, bc) = (idx / (nl * nl), idx % (nl * nl));
            left[a0].push((bc, v.clone()));
        }
        let mut diff: Vec<(usize, RatFunc)> = Vec::new();
        for c in 0..nl {
            let mut wc = std::mem::take(&mut right[c]);
            wc.sort_by_key(|x| x.0);
            let bw = beta_apply(r, &beta, &wc).ok_or_else(|| Error::Construction("intersection not inside R⊗L".into()))?;
            diff.extend(bw.into_iter().map(|(d, x)| (d * nl + c, x)));
        }
        for a0 in 0..nl {
            let wa = std::mem::take(&mut left[a0]);
            let bw = beta_apply(r, &beta, &wa).ok_or_else(|| Error::Construction("intersection not inside L⊗R".into()))?;
            diff.extend(bw.into_iter().map(|(d, x)| (a0 * nl + d, x.neg())));
        }
        let diff = crate::linalg::ExactMatrix::from_triplets(1, nl * nl, diff.into_iter().map(|(j, x)| (0, j, x))).row(0).clone();
        match beta_apply(r, &beta, &diff) {
            None => escape += 1,
            Some(bd) => jacobi += bd.len(),
        }
    }
    Ok(vec![
        GradedCert::zero(format!("{label}.linear_part_well_defined"), 2, leak),
        GradedCert::zero(format!("{label}.pbw.closure"), 3, escape),
        GradedCert::zero(format!("{label}.pbw.jacobi"), 3, jacobi),
    ])
}

/// Relations `A u − t·B u` as elements of the filtered tensor algebra.
pub struct FilteredRelations {
    pub nl: usize,
    pub quad: Vec<SparseRow>,
    pub lin: Vec<SparseRow>,
}

impl FilteredRelations {
    /// One relation per pivot column of `A` (columns in `ker A` add nothing
    /// once `B` vanishes there).
    pub fn new(a: &ExactMatrix, b: &ExactMatrix, t: &RatFunc, nl: usize) -> Self {
        let at = a.transpose();
        let bt = b.transpose();
        let mut quad = Vec::new();
        let mut lin = Vec::new();
        for j in pivot_columns(a) {
            quad.push(at.row(j).clone());
            lin.push(row_scale(bt.row(j), &t.neg()));
        }
        FilteredRelations { nl, quad, lin }
    }

    pub fn specialize(&self, q0: &BigRat) -> Result<Self> {
        let sp = |rows: &[SparseRow]| -> Result<Vec<SparseRow>> { rows.iter().map(|r| crate::linalg::eval_row_at(r, q0)).collect() };
        Ok(FilteredRelations { nl: self.nl, quad: sp(&self.quad)?, lin: sp(&self.lin)? })
    }
}

/// Offsets of `L^{⊗k}` inside `F_d = ⊕_{k≤d} L^{⊗k}`.
pub fn offsets(nl: usize, d: usize) -> Vec<usize> {
    let mut off = vec![0usize; d + 2];
    for k in 0..=d {
        off[k + 1] = off[k] + nl.pow(k as u32);
    }
    off
}

/// `e_α ⊗ r ⊗ e_β` for a row `r` on `L^{⊗m}`, with `α ∈ L^{⊗i}`,
/// `β ∈ L^{⊗j}`, placed in `F_d`.
pub fn sandwich(r: &SparseRow, nl: usize, m: usize, alpha: usize, j: usize, beta: usize, base: usize) -> SparseRow {
    let mid = nl.pow(m as u32);
    let right = nl.pow(j as u32);
    r.iter().map(|(c, v)| (base + (alpha * mid + c) * right + beta, v.clone())).collect()
}

/// Spanning set of the ideal slice in `F_d`: `α ⊗ r ⊗ β` with
/// `deg α + deg β + 2 ≤ d`, each relation contributing its quadratic and
/// linear parts at their own degrees.
pub fn ideal_rows(rels: &FilteredRelations, extra: &[Vec<SparseRow>], d: usize) -> Vec<SparseRow> {
    let nl = rels.nl;
    let off = offsets(nl, d);
    let mut gens: Vec<Vec<SparseRow>> = rels.quad.iter().zip(&rels.lin).map(|(q, l)| vec![Vec::new(), l.clone(), q.clone()]).collect();
    gens.extend(extra.iter().cloned());
    let mut out = Vec::new();
    for g in &gens {
        let top = g.iter().rposition(|p| !p.is_empty()).unwrap_or(0);
        if top > d {
            continue;
        }
        for i in 0..=d - top {
            for j in 0..=d - top - i {
                for alpha in 0..nl.pow(i as u32) {
                    for beta in 0..nl.pow(j as u32) {
                        let mut row = Vec::new();
                        for (m, part) in g.iter().enumerate() {
                            if part.is_empty() {
                                continue;
                            }
                            row.extend(sandwich(part, nl, m, alpha, j, beta, off[i + m + j]));
                        }
                        row.sort_by_key(|x| x.0);
                        out.push(row);
                    }
                }
            }
        }
    }
    out
}

/// Filtered dimensions `dim F_d / (ideal slice)` for `d = 0..=max_d`.
pub fn filtered_dims(rels: &FilteredRelations, extra: &[Vec<SparseRow>], max_d: usize) -> Vec<usize> {
    (0..=max_d)
        .into_par_iter()
        .map(|d| {
            let rows = ideal_rows(rels, extra, d);
            let mut e = Echelon::new();
            for r in &rows {
                e.insert(r);
            }
            offsets(rels.nl, d)[d + 1] - e.rank()
        })
        .collect()
}

/// Rank of the span of the images of ordered monomials of degree `≤ d` in
/// the normalized generators, realized on `⊕_{k≤K} V^{⊗k}` and evaluated at
/// `q = q0`. A lower bound for the generic rank.
pub fn realization_filtered_rank(g: &GradedContext, d: usize, horizon: usize, q0: &BigRat) -> Result<Vec<usize>> {
    let nl = g.dim_l();
    let mut per_k: Vec<(Vec<ExactMatrix>, ExactMatrix)> = Vec::new();
    for k in 0..=horizon {
        let r = g.ql.realize_power(k)?;
        let xt: Vec<ExactMatrix> = r.normalized().iter().map(|x| x.eval_at(q0)).collect::<Result<_>>()?;
        per_k.push((xt, ExactMatrix::identity(r.c.rows())));
    }
    // Monomials built degree by degree: sorted index sequences.
    let mut level: Vec<(Vec<usize>, Vec<ExactMatrix>)> = vec![(vec![], per_k.iter().map(|p| p.1.clone()).collect())];
    let mut all_rows: Vec<SparseRow> = Vec::new();
    let mut ranks = Vec::new();
    let flat = |mats: &[ExactMatrix]| -> SparseRow {
        let mut row = Vec::new();
        let mut off = 0;
        for m in mats {
            row.extend(m.vectorize().into_iter().map(|(j, v)| (j + off, v)));
            off += m.rows() * m.cols();
        }
        row
    };
    for deg in 0..=d {
        if deg > 0 {
            let per_k = &per_k;
            let next: Vec<(Vec<usize>, Vec<ExactMatrix>)> = level
                .par_iter()
                .flat_map_iter(|(idx, mats)| {
                    let start = idx.last().copied().unwrap_or(0);
                    (start..nl).map(move |a| {
                        let mut i2 = idx.clone();
                        i2.push(a);
                        (i2, mats.iter().zip(per_k.iter()).map(|(m, p)| m.mul(&p.0[a])).collect())
                    })
                })
                .collect();
            level = next;
        }
        all_rows.extend(level.iter().map(|(_, m)| flat(m)));
        let total: usize = per_k.iter().map(|p| p.1.rows() * p.1.rows()).sum();
        ranks.push(rank(&ExactMatrix::from_rows(total, all_rows.clone())));
    }
    Ok(ranks)
}

/// Cumulative `Σ_{k≤d} C(N + k − 1, k)`.
pub fn cumulative_sym(nl: u64, d: usize) -> u64 {
    (0..=d as u64).map(|k| binomial(nl + k - 1, k)).sum()
}

impl GradedContext {
    /// Structural and realization PBW certificates up to degree `d`.
    pub fn pbw_check(&self, qd: &QuadraticData, d: usize, horizon: usize) -> Result<Vec<GradedCert>> {
        let (a, b) = qd.linear_part.as_ref().ok_or_else(|| Error::Construction("pbw check needs a linear part".into()))?;
        let nl = self.dim_l();
        let mut out = pbw_structural(a, b, &qd.rel2, nl, "graded.sym_t")?;
        let one = RatFunc::one();
        let dims_t1 = filtered_dims(&FilteredRelations::new(a, b, &one, nl), &[], d);
        let dims_t0 = filtered_dims(&FilteredRelations::new(a, b, &RatFunc::zero(), nl), &[], d);
        for k in 0..=d {
            let want = cumulative_sym(nl as u64, k);
            out.push(GradedCert::new("graded.sym_t.filtered_dim.t1", k, want, dims_t1[k] as u64));
            out.push(GradedCert::new("graded.sym_t.filtered_dim.t0", k, want, dims_t0[k] as u64));
        }
        let real = realization_filtered_rank(self, d, horizon, &crate::scalars::rat(2, 1))?;
        for (k, r) in real.iter().enumerate() {
            out.push(GradedCert::new("graded.sym_t.realization_rank.t1", k, cumulative_sym(nl as u64, k), *r as u64));
        }
        Ok(out)
    }
}
