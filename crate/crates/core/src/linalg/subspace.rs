use super::matrix::{row_axpy, row_kron, row_scale, ExactMatrix, SparseRow};
use super::rref::{left_kernel, Echelon};
use crate::error::{Error, Result};
use crate::scalars::{BigRat, RatFunc, ZPoly};

/// A subspace of `Q(q)^ambient`, stored as its RREF basis.
///
/// The RREF is canonical, so derived equality is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseRow>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_echelon(ambient, {
            let mut e = Echelon::new();
            for i in 0..ambient {
                e.insert(&vec![(i, RatFunc::one())]);
            }
            e
        })
    }

    pub fn from_echelon(ambient: usize, e: Echelon) -> Self {
        let rows = e.into_rows();
        let pivots = rows.iter().map(|r| r[0].0).collect();
        Subspace { ambient, rows, pivots }
    }

    pub fn from_spanning(ambient: usize, vectors: &[SparseRow]) -> Self {
        let mut e = Echelon::new();
        for v in vectors {
            debug_assert!(v.last().is_none_or(|x| x.0 < ambient));
            e.insert(v);
        }
        Self::from_echelon(ambient, e)
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &ExactMatrix) -> Self {
        Self::from_spanning(m.cols(), m.row_data())
    }

    /// Span of the columns of `m`.
    pub fn column_space(m: &ExactMatrix) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.rows.len()
    }

    pub fn basis_rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn basis(&self) -> ExactMatrix {
        ExactMatrix::from_rows(self.ambient, self.rows.clone())
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new();
        for r in &self.rows {
            e.insert(r);
        }
        e
    }

    /// Remainder after reduction by the basis; zero iff `v` is a member.
    pub fn reduce(&self, v: &SparseRow) -> SparseRow {
        let mut out = v.clone();
        for (p, row) in self.pivots.iter().zip(&self.rows) {
            if let Ok(k) = v.binary_search_by_key(p, |(c, _)| *c) {
                out = row_axpy(&out, &v[k].1.neg(), row);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseRow) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Coordinates with respect to the RREF basis (read off the pivot
    /// columns), or `None` if `v` is not a member.
    pub fn coords(&self, v: &SparseRow) -> Option<Vec<RatFunc>> {
        let c: Vec<RatFunc> = self
            .pivots
            .iter()
            .map(|p| match v.binary_search_by_key(p, |(j, _)| *j) {
                Ok(k) => v[k].1.clone(),
                Err(_) => RatFunc::zero(),
            })
            .collect();
        let mut rem = v.clone();
        for (ci, row) in c.iter().zip(&self.rows) {
            rem = row_axpy(&rem, &ci.neg(), row);
        }
        rem.is_empty().then_some(c)
    }

    /// Element with the given coordinates.
    pub fn combine(&self, coords: &[RatFunc]) -> SparseRow {
        let mut out = Vec::new();
        for (c, row) in coords.iter().zip(&self.rows) {
            out = row_axpy(&out, c, row);
        }
        out
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut e = self.echelon();
        for r in &other.rows {
            e.insert(r);
        }
        Ok(Self::from_echelon(self.ambient, e))
    }

    /// Zassenhaus intersection: reduce the rows `(a | a)` and `(b | 0)`; the
    /// reduced rows supported in the right half span the intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Self::zero(self.ambient));
        }
        if self.dim() == self.ambient {
            return Ok(other.clone());
        }
        if other.dim() == other.ambient {
            return Ok(self.clone());
        }
        let d = self.ambient;
        let mut e = Echelon::new();
        for r in &self.rows {
            let mut v = r.clone();
            v.extend(r.iter().map(|(j, x)| (j + d, x.clone())));
            e.insert(&v);
        }
        for r in &other.rows {
            e.insert(r);
        }
        let rows: Vec<SparseRow> = e
            .into_rows()
            .into_iter()
            .filter(|r| r[0].0 >= d)
            .map(|r| r.into_iter().map(|(j, x)| (j - d, x)).collect())
            .collect();
        Ok(Self::from_spanning(d, &rows))
    }

    /// Tensor product of subspaces inside `ambient_a * ambient_b`.
    pub fn kron(&self, other: &Subspace) -> Subspace {
        let mut rows = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.rows {
            for b in &other.rows {
                rows.push(row_kron(a, b, other.ambient));
            }
        }
        // The Kronecker product of two RREF bases is already in RREF.
        let pivots = rows.iter().map(|r: &SparseRow| r[0].0).collect();
        Subspace { ambient: self.ambient * other.ambient, rows, pivots }
    }

    /// Whether `m` (acting on column vectors) maps the subspace into itself.
    pub fn is_invariant_under(&self, m: &ExactMatrix) -> bool {
        self.rows.iter().all(|r| self.contains(&m.apply(r)))
    }

    /// Matrix of `m` restricted to this invariant subspace, in RREF-basis
    /// coordinates (column `j` holds the image of basis vector `j`).
    pub fn restrict(&self, m: &ExactMatrix) -> Result<ExactMatrix> {
        let mut trips = Vec::new();
        for (j, r) in self.rows.iter().enumerate() {
            let img = m.apply(r);
            let c = self
                .coords(&img)
                .ok_or_else(|| Error::Construction("subspace is not invariant".into()))?;
            for (i, v) in c.into_iter().enumerate() {
                trips.push((i, j, v));
            }
        }
        Ok(ExactMatrix::from_triplets(self.dim(), self.dim(), trips))
    }

    /// Orthogonal complement for the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        super::rref::kernel(&self.basis())
    }

    /// The specialization of the subspace at `q = q0`: a basis regular at
    /// `q0` whose values there stay independent is found by repeatedly
    /// dividing vanishing combinations by `(q - q0)`, and its value at `q0`
    /// is returned (a subspace over `Q`, embedded as constants).
    pub fn limit_at(&self, q0: &BigRat) -> Result<Subspace> {
        let rows = self.saturated_rows(q0)?;
        let vals: Vec<SparseRow> = rows.iter().map(|r| eval_row_at(r, q0)).collect::<Result<_>>()?;
        Ok(Subspace::from_spanning(self.ambient, &vals))
    }

    /// A basis of the space, regular at `q0`, whose values at `q0` are
    /// linearly independent.
    pub fn saturated_rows(&self, q0: &BigRat) -> Result<Vec<SparseRow>> {
        let mut rows: Vec<SparseRow> = self.rows.iter().map(|r| regularize_at(r, q0)).collect();
        loop {
            let vals: Vec<SparseRow> = rows.iter().map(|r| eval_row_at(r, q0)).collect::<Result<_>>()?;
            let dep = left_kernel(&ExactMatrix::from_rows(self.ambient, vals));
            let Some(c) = dep.basis_rows().first() else {
                return Ok(rows);
            };
            // Replace the row at the last nonzero coefficient by the combination.
            let (k, _) = *c.last().unwrap();
            let mut comb = Vec::new();
            for (i, ci) in c {
                comb = row_axpy(&comb, ci, &rows[*i]);
            }
            if comb.is_empty() {
                return Err(Error::Construction("degenerate basis in limit".into()));
            }
            rows[k] = regularize_at(&comb, q0);
        }
    }
}

fn linear_factor(q0: &BigRat) -> ZPoly {
    // denom * q - numer
    ZPoly::from_coeffs(vec![-q0.numer().clone(), q0.denom().clone()])
}

fn order_at(f: &RatFunc, q0: &BigRat) -> i64 {
    let lf = linear_factor(q0);
    let mult = |p: &ZPoly| {
        let mut p = p.clone();
        let mut k = 0i64;
        while let Some(r) = p.div_exact(&lf) {
            p = r;
            k += 1;
        }
        k
    };
    mult(f.numer()) - mult(f.denom())
}

/// Rescales by a power of `(q - q0)` so entries are regular at `q0` and not
/// all vanishing.
pub fn regularize_at(r: &SparseRow, q0: &BigRat) -> SparseRow {
    let min = r.iter().map(|(_, v)| order_at(v, q0)).min().unwrap_or(0);
    if min == 0 {
        return r.clone();
    }
    let lf = RatFunc::from_poly(linear_factor(q0));
    let s = lf.pow(-min).expect("nonzero factor");
    row_scale(r, &s)
}

pub fn eval_row_at(r: &SparseRow, q0: &BigRat) -> Result<SparseRow> {
    let mut out = Vec::new();
    for (j, v) in r {
        let x = v.specialize(q0)?;
        if !x.is_zero() {
            out.push((*j, x));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(i: usize) -> SparseRow {
        vec![(i, RatFunc::one())]
    }

    #[test]
    fn lattice_of_coordinate_planes() {
        let a = Subspace::from_spanning(4, &[unit(0), unit(1)]);
        let b = Subspace::from_spanning(4, &[unit(2), unit(3)]);
        assert_eq!(a.intersect(&b).unwrap().dim(), 0);
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(4));
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.sum(&a).unwrap(), a);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::zero(3);
        let b = Subspace::zero(4);
        assert!(matches!(a.intersect(&b), Err(Error::AmbientMismatch(3, 4))));
    }

    #[test]
    fn limit_recovers_degenerating_line() {
        // span{(1, q), (1, 1)}: full at generic q, but the rows collide at
        // q = 1; the limit must still be two-dimensional.
        let q = RatFunc::q();
        let s = Subspace::from_spanning(2, &[vec![(0, RatFunc::one()), (1, q)], vec![(0, RatFunc::one()), (1, RatFunc::one())]]);
        assert_eq!(s.limit_at(&BigRat::from_integer(1.into())).unwrap().dim(), 2);
        // span{(q - 1, 1)} tends to span{(0, 1)}.
        let l = Subspace::from_spanning(2, &[vec![(0, RatFunc::q() - RatFunc::one()), (1, RatFunc::one())]]);
        let lim = l.limit_at(&BigRat::from_integer(1.into())).unwrap();
        assert_eq!(lim, Subspace::from_spanning(2, &[unit(1)]));
    }
}
