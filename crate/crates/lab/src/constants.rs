//! Exact audit of the scalar inequalities behind the crossed-product
//! argument: the invertibility estimate `2nε/(1-3ε) < n/(2n-1) < 1`, the
//! product bound `(1-ε)(1-2ε) ≥ 1-3ε`, and the norm bookkeeping for an
//! element built from `n` translates.

use filling_core::exactnum::{format_rational, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::report::InequalityRecord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantsAudit {
    pub n: usize,
    pub epsilon: Rational,
    pub checks: Vec<InequalityRecord>,
}

impl ConstantsAudit {
    /// Every applicable inequality holds.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.applicable || c.holds)
    }
}

fn int(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn record(name: &str, lhs: &Rational, relation: &str, rhs: &Rational, applicable: bool) -> InequalityRecord {
    let holds = match relation {
        "<" => lhs < rhs,
        "<=" => lhs <= rhs,
        ">=" => lhs >= rhs,
        "=" => lhs == rhs,
        _ => false,
    };
    InequalityRecord {
        name: name.to_string(),
        lhs: format_rational(lhs),
        relation: relation.to_string(),
        rhs: format_rational(rhs),
        applicable,
        holds,
    }
}

/// The threshold `1/(2(2n+1))` below which the invertibility chain is used.
pub fn epsilon_threshold(n: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2 * (2 * n + 1)))
}

/// Evaluates each inequality exactly. Failures are recorded, never dropped;
/// an inequality whose hypothesis is not met is marked not applicable.
pub fn verify_proof_constants(n: usize, epsilon: &Rational) -> ConstantsAudit {
    let e = epsilon.clone();
    let one = Rational::one();
    let three_e = int(3) * &e;
    let nn = int(n);
    let mut checks = Vec::new();

    let chain = e > Rational::zero() && e < epsilon_threshold(n);
    let target = &nn / int(2 * n - 1);
    let lhs = if three_e < one { int(2 * n) * &e / (&one - &three_e) } else { Rational::zero() };
    checks.push(record("invertibility_estimate", &lhs, "<", &target, chain));
    checks.push(record("estimate_below_one", &target, "<", &one, chain));

    let product = (&one - &e) * (&one - int(2) * &e);
    let product_range = e >= Rational::zero() && three_e < one;
    checks.push(record("product_bound", &product, ">=", &(&one - &three_e), product_range));

    // c*c is a sum of n positive terms of norm at most 1
    let norm_sq = (0..n).fold(Rational::zero(), |acc, _| acc + &one);
    checks.push(record("norm_squared_bound", &norm_sq, "<=", &nn, true));
    // ‖c‖² (‖a - b‖ + Σ‖y b_g α_g(y)‖) with both brackets below ε
    let perturbation = &norm_sq * &e + &norm_sq * &e;
    checks.push(record("perturbation_total", &perturbation, "=", &(int(2 * n) * &e), true));
    if three_e < one {
        let scaled = &perturbation / (&one - &three_e);
        checks.push(record("estimate_consistent", &scaled, "=", &lhs, true));
    }

    ConstantsAudit { n, epsilon: e, checks }
}

/// `count` rationals evenly spaced strictly inside `(0, 1/(2(2n+1)))`.
pub fn epsilon_grid(n: usize, count: usize) -> Vec<Rational> {
    let t = epsilon_threshold(n);
    (1..=count).map(|i| &t * Rational::new(BigInt::from(i), BigInt::from(count + 1))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn check<'a>(a: &'a ConstantsAudit, name: &str) -> &'a InequalityRecord {
        a.checks.iter().find(|c| c.name == name).unwrap()
    }

    #[test]
    fn small_epsilon_passes() {
        let a = verify_proof_constants(2, &r(1, 20));
        assert!(a.passed());
        assert!(a.checks.iter().all(|c| c.applicable && c.holds));
        // 4·(1/20)/(1 - 3/20) = 4/17 < 2/3
        assert_eq!(check(&a, "invertibility_estimate").lhs, "4/17");
    }

    #[test]
    fn threshold_is_excluded() {
        let a = verify_proof_constants(3, &r(1, 14));
        assert!(!check(&a, "invertibility_estimate").applicable);
        let p = check(&a, "product_bound");
        assert!(p.applicable && p.holds);
        assert!(a.passed());
    }

    #[test]
    fn zero_epsilon_is_equality() {
        let a = verify_proof_constants(2, &r(0, 1));
        let p = check(&a, "product_bound");
        assert_eq!((p.lhs.as_str(), p.rhs.as_str(), p.holds), ("1/1", "1/1", true));
    }

    #[test]
    fn grid_stays_below_threshold() {
        for n in 2..=10 {
            let g = epsilon_grid(n, 100);
            assert_eq!(g.len(), 100);
            assert!(g.iter().all(|e| *e > Rational::zero() && *e < epsilon_threshold(n)));
        }
    }
}
