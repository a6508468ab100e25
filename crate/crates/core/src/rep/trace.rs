use crate::linalg::ExactMatrix;
use crate::scalars::RatFunc;

/// Diagonal `q^{n−1}, q^{n−3}, …, q^{1−n}` of the quantum trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotalWeights {
    pub diagonal: Vec<RatFunc>,
}

impl PivotalWeights {
    pub fn new(n: usize) -> Self {
        let diagonal = (0..n).map(|i| RatFunc::q_pow(n as i64 - 1 - 2 * i as i64)).collect();
        PivotalWeights { diagonal }
    }

    pub fn matrix(&self) -> ExactMatrix {
        ExactMatrix::diagonal(&self.diagonal)
    }
}

/// The quantum trace `Tr(a) = tr(u a)/tr(u)` as a functional matrix `φ`
/// with `φ(a) = Σ φ_ij a_ij`.
pub fn quantum_trace(n: usize) -> ExactMatrix {
    let u = PivotalWeights::new(n).diagonal;
    let total = u.iter().fold(RatFunc::zero(), |acc, x| acc.add(x));
    let inv = total.inv().expect("nonzero weight sum");
    ExactMatrix::diagonal(&u.iter().map(|x| x.mul(&inv)).collect::<Vec<_>>())
}

/// Pairing `φ(a) = Σ φ_ij a_ij`.
pub fn pair(phi: &ExactMatrix, a: &ExactMatrix) -> RatFunc {
    phi.entries().fold(RatFunc::zero(), |acc, (i, j, v)| acc.add(&v.mul(&a.get(i, j))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{invariants, RepAction};
    use crate::scalars::rat;

    #[test]
    fn trace_values() {
        let tr = quantum_trace(2);
        let q = RatFunc::q();
        let want = q.div(&q.add(&RatFunc::q_pow(-1))).unwrap();
        assert_eq!(pair(&tr, &ExactMatrix::diagonal(&[RatFunc::one(), RatFunc::zero()])), want);
        for n in [2, 3] {
            let tr = quantum_trace(n);
            assert!(pair(&tr, &ExactMatrix::identity(n)).is_one());
            let classical = tr.eval_at(&rat(1, 1)).unwrap();
            assert_eq!(classical, ExactMatrix::identity(n).scale(&RatFunc::from_rat(&rat(1, n as i64))));
        }
    }

    #[test]
    fn trace_spans_invariant_line() {
        for n in [2, 3] {
            let end = RepAction::end_v_dual(n).unwrap();
            let inv = invariants(&end);
            assert_eq!(inv.dim(), 1);
            assert!(inv.contains(&quantum_trace(n).vectorize()));
        }
    }
}
