use super::matrix::SparseRow;
use super::rref::Echelon;
use super::subspace::Subspace;
use crate::error::{Error, Result};
use crate::scalars::RatFunc;

/// A direct sum decomposition of the ambient space into the given parts,
/// with the component maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    ambient: usize,
    sizes: Vec<usize>,
    // Echelon of the rows (basis_i | unit_i) in ambient + total columns.
    echelon: Echelon,
    bases: Vec<Vec<SparseRow>>,
}

impl DirectSum {
    pub fn new(parts: &[&Subspace]) -> Result<Self> {
        let ambient = parts.first().map_or(0, |p| p.ambient());
        let total: usize = parts.iter().map(|p| p.dim()).sum();
        if total != ambient {
            return Err(Error::DimensionMismatch { context: "direct sum".into(), expected: ambient, computed: total });
        }
        let mut echelon = Echelon::new();
        let mut idx = 0;
        for p in parts {
            if p.ambient() != ambient {
                return Err(Error::AmbientMismatch(ambient, p.ambient()));
            }
            for r in p.basis_rows() {
                let mut row = r.clone();
                row.push((ambient + idx, RatFunc::one()));
                echelon.insert(&row);
                idx += 1;
            }
        }
        // Independence: every pivot must lie in the left block.
        if echelon.pivots().any(|p| p >= ambient) {
            return Err(Error::Construction("parts are not independent".into()));
        }
        Ok(DirectSum {
            ambient,
            sizes: parts.iter().map(|p| p.dim()).collect(),
            echelon,
            bases: parts.iter().map(|p| p.basis_rows().to_vec()).collect(),
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Coordinates of `v` in the concatenated part bases.
    pub fn coords(&self, v: &SparseRow) -> Vec<RatFunc> {
        let red = self.echelon.reduce(v);
        let total: usize = self.sizes.iter().sum();
        let mut out = vec![RatFunc::zero(); total];
        for (j, x) in red {
            debug_assert!(j >= self.ambient);
            out[j - self.ambient] = x.neg();
        }
        out
    }

    /// Coordinates of the component of `v` in part `i`.
    pub fn part_coords(&self, v: &SparseRow, i: usize) -> Vec<RatFunc> {
        let start: usize = self.sizes[..i].iter().sum();
        self.coords(v)[start..start + self.sizes[i]].to_vec()
    }

    /// The component of `v` in part `i`, as an ambient vector.
    pub fn component(&self, v: &SparseRow, i: usize) -> SparseRow {
        let c = self.part_coords(v, i);
        let mut acc = Vec::new();
        for (ci, b) in c.iter().zip(&self.bases[i]) {
            acc = super::matrix::row_axpy(&acc, ci, b);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_along_complement() {
        let one = RatFunc::one();
        let a = Subspace::from_spanning(2, &[vec![(0, one.clone()), (1, one.clone())]]);
        let b = Subspace::from_spanning(2, &[vec![(1, one.clone())]]);
        let ds = DirectSum::new(&[&a, &b]).unwrap();
        // (1, 0) = (1, 1) − (0, 1)
        let v = vec![(0, one.clone())];
        assert_eq!(ds.component(&v, 0), vec![(0, one.clone()), (1, one.clone())]);
        assert_eq!(ds.component(&v, 1), vec![(1, one.neg())]);
        assert!(DirectSum::new(&[&a, &a]).is_err());
    }
}
