use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalars::{BigRat, RatFunc};

/// A sparse row: `(column, value)` pairs sorted by column, no stored zeros.
pub type SparseRow = Vec<(usize, RatFunc)>;

/// Sparse row-major matrix over `Q(q)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

/// `a + c * b` for sparse rows.
pub fn row_axpy(a: &SparseRow, c: &RatFunc, b: &SparseRow) -> SparseRow {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c.mul(&b[j].1)));
            j += 1;
        } else {
            let v = a[i].1.add(&c.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn row_scale(a: &SparseRow, c: &RatFunc) -> SparseRow {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(j, v)| (*j, v.mul(c))).collect()
}

pub fn row_from_dense(v: &[RatFunc]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect()
}

pub fn row_to_dense(r: &SparseRow, len: usize) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::zero(); len];
    for (j, v) in r {
        out[*j] = v.clone();
    }
    out
}

/// Kronecker product of two sparse vectors with lengths `_` and `len_b`.
pub fn row_kron(a: &SparseRow, b: &SparseRow, len_b: usize) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a {
        for (j, y) in b {
            out.push((i * len_b + j, x.mul(y)));
        }
    }
    out
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![RatFunc::one(); n])
    }

    pub fn diagonal(d: &[RatFunc]) -> Self {
        let data = d
            .iter()
            .enumerate()
            .map(|(i, x)| if x.is_zero() { Vec::new() } else { vec![(i, x.clone())] })
            .collect();
        ExactMatrix { rows: d.len(), cols: d.len(), data }
    }

    /// Builds from sparse rows; rows must be sorted and zero-free.
    pub fn from_rows(cols: usize, data: Vec<SparseRow>) -> Self {
        debug_assert!(data.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)
            && r.iter().all(|(j, v)| *j < cols && !v.is_zero())));
        ExactMatrix { rows: data.len(), cols, data }
    }

    pub fn from_dense(rows: Vec<Vec<RatFunc>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().map(|r| row_from_dense(r)).collect();
        ExactMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_dense(
            rows.iter().map(|r| r.iter().map(|&x| RatFunc::from_int(x)).collect()).collect(),
        )
    }

    /// Accumulates `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets(rows: usize, cols: usize, trips: impl IntoIterator<Item = (usize, usize, RatFunc)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, RatFunc>> = vec![BTreeMap::new(); rows];
        for (i, j, v) in trips {
            assert!(i < rows && j < cols, "triplet out of bounds");
            let e = acc[i].entry(j).or_default();
            *e = e.add(&v);
        }
        let data = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        ExactMatrix { rows, cols, data }
    }

    /// The matrix unit `e_{ij}` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        Self::from_triplets(n, n, [(i, j, RatFunc::one())])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.data[i]
    }

    pub fn row_data(&self) -> &[SparseRow] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<SparseRow> {
        self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> RatFunc {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => RatFunc::zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &RatFunc)> {
        self.data.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (i, j, v) in self.entries() {
            data[j].push((i, v.clone()));
        }
        ExactMatrix { rows: self.cols, cols: self.rows, data }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(&RatFunc::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(&RatFunc::from_int(-1), other)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &RatFunc, other: &Self) -> Self {
        self.check_same_shape(other).expect("axpy shape");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| row_axpy(a, c, b)).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| row_scale(r, c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let data = self.data.iter().map(|r| self_row_times(r, other)).collect();
        ExactMatrix { rows: self.rows, cols: other.cols, data }
    }

    /// Matrix-vector product with a sparse column vector given as a row.
    pub fn apply(&self, v: &SparseRow) -> SparseRow {
        let mut out = Vec::new();
        for (i, r) in self.data.iter().enumerate() {
            let mut acc = RatFunc::zero();
            let (mut a, mut b) = (0, 0);
            while a < r.len() && b < v.len() {
                match r[a].0.cmp(&v[b].0) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        acc = acc.add(&r[a].1.mul(&v[b].1));
                        a += 1;
                        b += 1;
                    }
                }
            }
            if !acc.is_zero() {
                out.push((i, acc));
            }
        }
        out
    }

    /// Row vector times matrix: `v^T * self`.
    pub fn left_apply(&self, v: &SparseRow) -> SparseRow {
        self_row_times(v, self)
    }

    /// Kronecker product, index `(i, j) -> i * dim_b + j`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut data = Vec::with_capacity(self.rows * other.rows);
        for ra in &self.data {
            for rb in &other.data {
                data.push(row_kron(ra, rb, other.cols));
            }
        }
        ExactMatrix { rows: self.rows * other.rows, cols: self.cols * other.cols, data }
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, f(v))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn try_map(&self, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<Self> {
        let mut data = Vec::with_capacity(self.rows);
        for r in &self.data {
            let mut row = Vec::with_capacity(r.len());
            for (j, v) in r {
                let x = f(v)?;
                if !x.is_zero() {
                    row.push((*j, x));
                }
            }
            data.push(row);
        }
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Entrywise specialization `q = q0`.
    pub fn eval_at(&self, q0: &BigRat) -> Result<Self> {
        self.try_map(|v| v.specialize(q0))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let data = self.data[r0..r1]
            .iter()
            .map(|r| r.iter().filter(|(j, _)| *j >= c0 && *j < c1).map(|(j, v)| (j - c0, v.clone())).collect())
            .collect();
        ExactMatrix { rows: r1 - r0, cols: c1 - c0, data }
    }

    /// Matrix with rows `r` and columns `c` selected, in the given order.
    pub fn select(&self, r: &[usize], c: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &j) in c.iter().enumerate() {
            pos[j] = k;
        }
        let data = r
            .iter()
            .map(|&i| {
                let mut row: SparseRow =
                    self.data[i].iter().filter(|(j, _)| pos[*j] != usize::MAX).map(|(j, v)| (pos[*j], v.clone())).collect();
                row.sort_by_key(|(j, _)| *j);
                row
            })
            .collect();
        ExactMatrix { rows: r.len(), cols: c.len(), data }
    }

    /// Stacks rows of matrices with equal column count.
    pub fn vstack(parts: &[&ExactMatrix]) -> Self {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut data = Vec::new();
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            data.extend(m.data.iter().cloned());
        }
        ExactMatrix { rows: data.len(), cols, data }
    }

    /// Row-major vectorization as a single sparse row of length `rows * cols`.
    pub fn vectorize(&self) -> SparseRow {
        self.entries().map(|(i, j, v)| (i * self.cols + j, v.clone())).collect()
    }

    /// Simultaneously permutes rows and columns: entry `(i, j)` moves to
    /// `(perm[i], perm[j])`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert!(self.is_square() && perm.len() == self.rows);
        Self::from_triplets(self.rows, self.cols, self.entries().map(|(i, j, v)| (perm[i], perm[j], v.clone())))
    }

    /// Matrix dump: header `rows cols`, then `i j value` per nonzero entry.
    pub fn dump(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for (i, j, v) in self.entries() {
            let _ = writeln!(s, "{i} {j} {v}");
        }
        s
    }

    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let bad = |l: &str| Error::Parse(format!("bad dump line `{l}`"));
        let header = lines.next().ok_or_else(|| Error::Parse("empty dump".into()))?;
        let mut it = header.split_whitespace();
        let rows: usize = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| bad(header))?;
        let cols: usize = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| bad(header))?;
        let mut trips = Vec::new();
        for l in lines {
            let mut parts = l.splitn(3, ' ');
            let i: usize = parts.next().and_then(|x| x.parse().ok()).ok_or_else(|| bad(l))?;
            let j: usize = parts.next().and_then(|x| x.parse().ok()).ok_or_else(|| bad(l))?;
            let v: RatFunc = parts.next().ok_or_else(|| bad(l))?.parse()?;
            if i >= rows || j >= cols {
                return Err(bad(l));
            }
            trips.push((i, j, v));
        }
        Ok(Self::from_triplets(rows, cols, trips))
    }
}

fn self_row_times(r: &SparseRow, m: &ExactMatrix) -> SparseRow {
    match r.len() {
        0 => Vec::new(),
        1 => row_scale(&m.data[r[0].0], &r[0].1),
        _ => {
            let mut acc: BTreeMap<usize, RatFunc> = BTreeMap::new();
            for (k, a) in r {
                for (j, b) in &m.data[*k] {
                    let e = acc.entry(*j).or_default();
                    *e = e.add(&a.mul(b));
                }
            }
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
        }
    }
}

/// Matrix of the permutation of tensor legs: the leg at new position `t`
/// is the old leg `perm[t]`. `dims` are the old leg dimensions.
pub fn leg_permutation(dims: &[usize], perm: &[usize]) -> Vec<usize> {
    let total: usize = dims.iter().product();
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut out = vec![0; total];
    let mut idx = vec![0usize; dims.len()];
    for old in 0..total {
        let mut rem = old;
        for t in (0..dims.len()).rev() {
            idx[t] = rem % dims[t];
            rem /= dims[t];
        }
        let mut new = 0;
        for (t, &p) in perm.iter().enumerate() {
            new = new * new_dims[t] + idx[p];
        }
        out[old] = new;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_of_identities() {
        assert_eq!(ExactMatrix::identity(2).kron(&ExactMatrix::identity(3)), ExactMatrix::identity(6));
    }

    #[test]
    fn kron_with_diagonal() {
        let d = ExactMatrix::diagonal(&[RatFunc::q(), RatFunc::q_pow(-1)]);
        let expect = ExactMatrix::diagonal(&[RatFunc::q(), RatFunc::q(), RatFunc::q_pow(-1), RatFunc::q_pow(-1)]);
        assert_eq!(d.kron(&ExactMatrix::identity(2)), expect);
    }

    #[test]
    fn dump_round_trip() {
        let m = ExactMatrix::from_dense(vec![
            vec![RatFunc::q(), RatFunc::zero()],
            vec!["(q^2 - 1)/(q)".parse().unwrap(), RatFunc::from_int(-2)],
        ]);
        let text = m.dump();
        assert!(text.starts_with("2 2\n"));
        assert_eq!(ExactMatrix::parse_dump(&text).unwrap(), m);
    }

    #[test]
    fn leg_permutation_is_flip() {
        // dims (2, 3): index i*3 + j -> j*2 + i
        let p = leg_permutation(&[2, 3], &[1, 0]);
        assert_eq!(p[1 * 3 + 2], 2 * 2 + 1);
    }
}
