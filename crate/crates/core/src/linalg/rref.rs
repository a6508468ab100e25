use std::collections::BTreeMap;

use super::matrix::{row_axpy, row_scale, ExactMatrix, SparseRow};
use super::Subspace;
use crate::error::{Error, Result};
use crate::scalars::RatFunc;

/// Incrementally maintained reduced row echelon basis.
///
/// Every stored row has pivot entry 1 and zeros in all other pivot columns,
/// so the final state is the unique RREF of the span of the inserted rows.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Remainder of `v` after eliminating all pivot columns.
    pub fn reduce(&self, v: &SparseRow) -> SparseRow {
        let hits: Vec<(usize, RatFunc)> =
            v.iter().filter(|(j, _)| self.rows.contains_key(j)).cloned().collect();
        let mut out = v.clone();
        for (j, c) in hits {
            out = row_axpy(&out, &c.neg(), &self.rows[&j]);
        }
        out
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseRow) -> bool {
        let r = self.reduce(v);
        let Some((p, lead)) = r.first().cloned() else {
            return false;
        };
        let r = row_scale(&r, &lead.inv().expect("nonzero pivot"));
        for row in self.rows.values_mut() {
            if let Ok(k) = row.binary_search_by_key(&p, |(c, _)| *c) {
                let c = row[k].1.neg();
                *row = row_axpy(row, &c, &r);
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn into_rows(self) -> Vec<SparseRow> {
        self.rows.into_values().collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&usize, &SparseRow)> {
        self.rows.iter()
    }
}

/// Rank and reduced row echelon form.
pub fn rref(m: &ExactMatrix) -> (usize, ExactMatrix) {
    let mut e = Echelon::new();
    for r in m.row_data() {
        e.insert(r);
    }
    let rank = e.rank();
    let mut rows = e.into_rows();
    rows.resize(m.rows().max(rank), Vec::new());
    (rank, ExactMatrix::from_rows(m.cols(), rows))
}

pub fn rank(m: &ExactMatrix) -> usize {
    let mut e = Echelon::new();
    for r in m.row_data() {
        e.insert(r);
    }
    e.rank()
}

/// Right null space `{v : m v = 0}`.
pub fn kernel(m: &ExactMatrix) -> Subspace {
    let mut e = Echelon::new();
    for r in m.row_data() {
        e.insert(r);
    }
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for p in e.pivots() {
        is_pivot[p] = true;
    }
    let mut basis: Vec<SparseRow> = Vec::new();
    // Column-major view of the free-column entries of the pivot rows.
    let mut by_free: BTreeMap<usize, Vec<(usize, RatFunc)>> = BTreeMap::new();
    for (p, row) in e.rows() {
        for (j, v) in row {
            if !is_pivot[*j] {
                by_free.entry(*j).or_default().push((*p, v.neg()));
            }
        }
    }
    for f in (0..cols).filter(|&j| !is_pivot[j]) {
        let mut v: SparseRow = by_free.remove(&f).unwrap_or_default();
        v.push((f, RatFunc::one()));
        v.sort_by_key(|(j, _)| *j);
        basis.push(v);
    }
    Subspace::from_spanning(cols, &basis)
}

/// `{w : w^T m = 0}`.
pub fn left_kernel(m: &ExactMatrix) -> Subspace {
    kernel(&m.transpose())
}

/// Exact inverse of a square matrix.
pub fn inverse(m: &ExactMatrix) -> Result<ExactMatrix> {
    if !m.is_square() {
        return Err(Error::Shape("inverse of non-square matrix".into()));
    }
    let n = m.rows();
    let mut e = Echelon::new();
    for (i, r) in m.row_data().iter().enumerate() {
        let mut aug = r.clone();
        aug.push((n + i, RatFunc::one()));
        e.insert(&aug);
    }
    let rows = e.into_rows();
    if rows.len() != n || rows.iter().enumerate().any(|(i, r)| r.first().map(|x| x.0) != Some(i)) {
        return Err(Error::Construction("matrix is singular".into()));
    }
    let data = rows
        .into_iter()
        .map(|r| r.into_iter().filter(|(j, _)| *j >= n).map(|(j, v)| (j - n, v)).collect())
        .collect();
    Ok(ExactMatrix::from_rows(n, data))
}

/// Determinant by fraction-field Gaussian elimination.
pub fn determinant(m: &ExactMatrix) -> Result<RatFunc> {
    if !m.is_square() {
        return Err(Error::Shape("determinant of non-square matrix".into()));
    }
    let n = m.rows();
    let mut rows: Vec<SparseRow> = m.row_data().to_vec();
    let mut det = RatFunc::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| rows[i].first().is_some_and(|x| x.0 == col)) else {
            return Ok(RatFunc::zero());
        };
        if p != col {
            rows.swap(p, col);
            det = det.neg();
        }
        let piv = rows[col][0].1.clone();
        det = det.mul(&piv);
        let inv = piv.inv()?;
        for i in col + 1..n {
            if rows[i].first().is_some_and(|x| x.0 == col) {
                let c = rows[i][0].1.mul(&inv).neg();
                rows[i] = row_axpy(&rows[i], &c, &rows[col]);
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity_and_zero() {
        let (r, m) = rref(&ExactMatrix::identity(3));
        assert_eq!(r, 3);
        assert_eq!(m, ExactMatrix::identity(3));
        assert_eq!(rref(&ExactMatrix::zeros(3, 4)).0, 0);
    }

    #[test]
    fn kernel_edge_cases() {
        assert_eq!(kernel(&ExactMatrix::identity(3)).dim(), 0);
        assert_eq!(kernel(&ExactMatrix::zeros(3, 5)).dim(), 5);
    }

    #[test]
    fn inverse_of_q_matrix() {
        let q = RatFunc::q();
        let m = ExactMatrix::from_dense(vec![
            vec![q.clone(), RatFunc::one()],
            vec![RatFunc::one(), q.clone()],
        ]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), ExactMatrix::identity(2));
        assert_eq!(determinant(&m).unwrap(), q.mul(&q).sub(&RatFunc::one()));
        assert!(inverse(&ExactMatrix::zeros(2, 2)).is_err());
    }
}
