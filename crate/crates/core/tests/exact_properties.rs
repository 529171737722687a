use std::cmp::Ordering;

use filling_core::exactnum::{min_power_exceeding, QuadraticNumber, Rational, Sign};
use proptest::prelude::*;

const DISCRIMINANTS: [u64; 5] = [2, 5, 32, 45, 96];

fn rational() -> impl Strategy<Value = (i64, i64)> {
    (-10_000i64..=10_000, 1i64..=500)
}

fn qn(d: u64, (a, b): (i64, i64), (c, e): (i64, i64)) -> QuadraticNumber {
    QuadraticNumber::new(Rational::new(a.into(), b.into()), Rational::new(c.into(), e.into()), d).unwrap()
}

fn float_value(d: u64, (a, b): (i64, i64), (c, e): (i64, i64)) -> f64 {
    a as f64 / b as f64 + (c as f64 / e as f64) * (d as f64).sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn sign_matches_floating_point(di in 0usize..5, p in rational(), q in rational()) {
        let d = DISCRIMINANTS[di];
        let f = float_value(d, p, q);
        prop_assume!(f.abs() > 1e-6);
        let expected = if f > 0.0 { Sign::Positive } else { Sign::Negative };
        prop_assert_eq!(qn(d, p, q).sign(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn multiply_then_divide(di in 0usize..5, p in rational(), q in rational(), r in rational(), s in rational()) {
        let d = DISCRIMINANTS[di];
        let x = qn(d, p, q);
        let y = qn(d, r, s);
        prop_assume!(!x.is_zero());
        let back = x.checked_mul(&y).unwrap().checked_div(&x).unwrap();
        prop_assert_eq!(back, y);
    }

    #[test]
    fn comparison_is_a_total_order(di in 0usize..5, p in rational(), q in rational(), r in rational(), s in rational(), t in rational(), u in rational()) {
        let d = DISCRIMINANTS[di];
        let (x, y, z) = (qn(d, p, q), qn(d, r, s), qn(d, t, u));
        let xy = x.qext_compare(&y).unwrap();
        prop_assert_eq!(y.qext_compare(&x).unwrap(), xy.reverse());
        prop_assert_eq!(xy == Ordering::Equal, x == y);
        let yz = y.qext_compare(&z).unwrap();
        if xy != Ordering::Greater && yz != Ordering::Greater {
            prop_assert_ne!(x.qext_compare(&z).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn power_bracket(di in 0usize..5, p in 1i64..=20, q in 0i64..=3, bound in 1i64..=100_000) {
        let d = DISCRIMINANTS[di];
        let x = qn(d, (p, 1), (q, 1));
        prop_assume!(x.qext_compare(&x.one_like()).unwrap() == Ordering::Greater);
        let b = x.rational_like(Rational::from_integer(bound.into()));
        let m = min_power_exceeding(&x, &b).unwrap();
        prop_assert!(m >= 1);
        prop_assert_ne!(x.pow(m - 1).qext_compare(&b).unwrap(), Ordering::Greater);
        prop_assert_eq!(x.pow(m).qext_compare(&b).unwrap(), Ordering::Greater);
    }

    #[test]
    fn display_round_trip(di in 0usize..5, p in rational(), q in rational()) {
        let x = qn(DISCRIMINANTS[di], p, q);
        let back: QuadraticNumber = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }
}
