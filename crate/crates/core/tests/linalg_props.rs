use dq_core::linalg::{inverse, kernel, rank, ExactMatrix, Subspace};
use dq_core::scalars::RatFunc;
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = RatFunc> {
    prop_oneof![
        3 => Just(RatFunc::zero()),
        2 => (-3i64..=3).prop_map(RatFunc::from_int),
        1 => (-2i64..=2).prop_map(|k| RatFunc::q_pow(k)),
        1 => Just(RatFunc::q_minus_qinv()),
    ]
}

fn matrix(r: usize, c: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(prop::collection::vec(entry(), c), r).prop_map(ExactMatrix::from_dense)
}

/// `L · diag(1,…,1,0,…,0) · U` with unitriangular `L`, `U` has rank exactly
/// the number of ones.
fn planted(n: usize) -> impl Strategy<Value = (ExactMatrix, usize)> {
    (matrix(n, n), matrix(n, n), 0..=n).prop_map(move |(l, u, k)| {
        let tri = |m: &ExactMatrix, lower: bool| {
            let mut rows = Vec::new();
            for i in 0..n {
                rows.push((0..n).map(|j| match (i == j, (j < i) == lower) {
                    (true, _) => RatFunc::one(),
                    (false, true) => m.get(i, j),
                    _ => RatFunc::zero(),
                }).collect());
            }
            ExactMatrix::from_dense(rows)
        };
        let d = ExactMatrix::diagonal(&(0..n).map(|i| if i < k { RatFunc::one() } else { RatFunc::zero() }).collect::<Vec<_>>());
        (tri(&l, true).mul(&d).mul(&tri(&u, false)), k)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(m in matrix(4, 5)) {
        prop_assert_eq!(rank(&m) + kernel(&m).dim(), 5);
        for v in kernel(&m).basis_rows() {
            prop_assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn planted_rank((m, k) in planted(5)) {
        prop_assert_eq!(rank(&m), k);
        prop_assert_eq!(Subspace::column_space(&m).dim(), k);
    }

    #[test]
    fn sum_intersection_dimension(a in matrix(3, 5), b in matrix(3, 5)) {
        let u = Subspace::row_space(&a);
        let w = Subspace::row_space(&b);
        let s = u.sum(&w).unwrap();
        let i = u.intersect(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(s.contains_subspace(&u) && s.contains_subspace(&w));
        prop_assert!(u.contains_subspace(&i) && w.contains_subspace(&i));
    }

    #[test]
    fn kron_mixed_product(a in matrix(2, 2), b in matrix(2, 3), c in matrix(2, 2), d in matrix(3, 2)) {
        prop_assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
    }

    #[test]
    fn inverse_is_two_sided(m in matrix(3, 3)) {
        if let Ok(inv) = inverse(&m) {
            prop_assert_eq!(m.mul(&inv), ExactMatrix::identity(3));
            prop_assert_eq!(inv.mul(&m), ExactMatrix::identity(3));
        } else {
            prop_assert!(rank(&m) < 3);
        }
    }

    #[test]
    fn annihilator_is_orthogonal(a in matrix(2, 4)) {
        let u = Subspace::row_space(&a);
        let ann = u.annihilator();
        prop_assert_eq!(u.dim() + ann.dim(), 4);
        prop_assert_eq!(ann.annihilator(), u);
    }
}
