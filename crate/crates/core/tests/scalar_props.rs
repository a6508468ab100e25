use dq_core::scalars::{rat, BigRat, RatFunc, ZPoly};
use dq_core::Error;
use proptest::prelude::*;

fn zpoly() -> impl Strategy<Value = ZPoly> {
    prop::collection::vec(-6i64..=6, 0..4).prop_map(|c| ZPoly::from_i64s(&c))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (zpoly(), zpoly()).prop_filter_map("nonzero denominator", |(n, d)| RatFunc::normalize(n, d).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(RatFunc::add(&a, &b), RatFunc::add(&b, &a));
        prop_assert_eq!(RatFunc::mul(&a, &b), RatFunc::mul(&b, &a));
        prop_assert_eq!(RatFunc::add(&RatFunc::add(&a, &b), &c), RatFunc::add(&a, &RatFunc::add(&b, &c)));
        prop_assert_eq!(RatFunc::mul(&RatFunc::mul(&a, &b), &c), RatFunc::mul(&a, &RatFunc::mul(&b, &c)));
        prop_assert_eq!(
            RatFunc::mul(&a, &RatFunc::add(&b, &c)),
            RatFunc::add(&RatFunc::mul(&a, &b), &RatFunc::mul(&a, &c))
        );
        prop_assert!(RatFunc::sub(&a, &a).is_zero());
        if !a.is_zero() {
            prop_assert!(RatFunc::mul(&a, &a.inv().unwrap()).is_one());
        } else {
            prop_assert!(matches!(a.inv(), Err(Error::DivisionByZero)));
        }
    }

    #[test]
    fn normal_form_is_canonical(a in ratfunc(), k in 1i64..5) {
        let scaled = RatFunc::normalize(
            a.numer().mul(&ZPoly::from_i64s(&[k, 1])),
            a.denom().mul(&ZPoly::from_i64s(&[k, 1])),
        ).unwrap();
        prop_assert_eq!(&scaled, &a);
        let again = RatFunc::normalize(a.numer().clone(), a.denom().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert!(a.denom().lc() > 0.into());
        prop_assert!(a.numer().gcd(a.denom()).is_constant());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), x in -5i64..=5, y in 1i64..=4) {
        let q0: BigRat = rat(x, y);
        if let (Ok(va), Ok(vb)) = (a.eval_at(&q0), b.eval_at(&q0)) {
            prop_assert_eq!(RatFunc::add(&a, &b).eval_at(&q0).unwrap(), &va + &vb);
            prop_assert_eq!(RatFunc::mul(&a, &b).eval_at(&q0).unwrap(), &va * &vb);
        }
    }

    #[test]
    fn display_round_trips(a in ratfunc()) {
        let back: RatFunc = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn pole_is_reported() {
    let f = RatFunc::q_minus_qinv().inv().unwrap();
    assert!(matches!(f.eval_at(&rat(1, 1)), Err(Error::EvaluationAtPole)));
    assert!(matches!(f.eval_at(&rat(-1, 1)), Err(Error::EvaluationAtPole)));
    assert_eq!(f.eval_at(&rat(2, 1)).unwrap(), rat(2, 3));
}
