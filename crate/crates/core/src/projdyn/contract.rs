use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::Rng;

use super::point::ProjectivePoint;
use super::region::{apply_power, LocalCoords};
use super::system::ExampleSystem;
use super::ProjError;
use crate::exactnum::{min_power_exceeding, QuadraticNumber, Rational};

/// Exact record that `g_j^m K_j ⊂ U_j(ε)`.
///
/// The single checked inequality is `λ₊^m > R/ε`. For any `x ∈ K_j` it bounds
/// both ratio families of `g_j^m x`:
/// `|λ₋^m η / (λ₊^m ξ)| ≤ R/λ₊^m < ε` (using `0 < λ₋ < 1`) and
/// `|ξ_l / (λ₊^m ξ)| ≤ R/λ₊^m < ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttractionCertificate {
    pub j: usize,
    pub m: u32,
    pub epsilon: Rational,
    pub lambda_plus_pow: QuadraticNumber,
    pub r_over_epsilon: QuadraticNumber,
    /// `R / λ₊^m`, the common upper bound for both ratio families.
    pub ratio_bound: QuadraticNumber,
    /// Sampled points of `K_j` pushed forward and tested for membership in `U_j`.
    pub samples_checked: usize,
    pub sample_failures: usize,
}

impl AttractionCertificate {
    /// Re-evaluates the defining inequalities from the stored values.
    pub fn holds(&self) -> bool {
        let eps = self.lambda_plus_pow.rational_like(self.epsilon.clone());
        self.lambda_plus_pow.partial_cmp(&self.r_over_epsilon) == Some(Ordering::Greater)
            && self.ratio_bound.partial_cmp(&eps) == Some(Ordering::Less)
            && self.sample_failures == 0
    }
}

impl ExampleSystem {
    /// Least `N ≥ 1` with `λ₊^N > R/ε`, hence `R/λ₊^N < ε`.
    pub fn contraction_exponent(&self, epsilon: &Rational) -> Result<u32, ProjError> {
        if !epsilon.is_positive() {
            return Err(ProjError::Parameter("epsilon must be positive"));
        }
        let bound = self.r() / &self.rational(epsilon.clone());
        Ok(min_power_exceeding(self.lambda_plus(), &bound)?)
    }

    /// Certifies `g_j^m K_j ⊂ U_j(ε)` exactly and spot-checks it on
    /// `samples` random points of `K_j`. Refuses when `m` is below the
    /// contraction exponent.
    pub fn certify_attraction<R: Rng + ?Sized>(
        &self,
        j: usize,
        epsilon: &Rational,
        m: u32,
        samples: usize,
        rng: &mut R,
    ) -> Result<AttractionCertificate, ProjError> {
        self.check_index(j)?;
        let required = self.contraction_exponent(epsilon)?;
        if m < required {
            return Err(ProjError::AttractionRefused { m, required });
        }
        let eps = self.rational(epsilon.clone());
        let lambda_plus_pow = self.lambda_plus().pow(m);
        let r_over_epsilon = self.r() / &eps;
        let ratio_bound = self.r() / &lambda_plus_pow;
        if lambda_plus_pow.partial_cmp(&r_over_epsilon) != Some(Ordering::Greater)
            || ratio_bound.partial_cmp(&eps) != Some(Ordering::Less)
        {
            return Err(ProjError::Invariant("λ₊^m > R/ε"));
        }

        let target = self.u_region(j, eps);
        let mut failures = 0;
        for _ in 0..samples {
            let x = self.sample_k_point(j, rng);
            let y = apply_power(self.generator(j), i64::from(m), &x)?;
            if !target.contains(&y) {
                failures += 1;
            }
        }
        Ok(AttractionCertificate {
            j,
            m,
            epsilon: epsilon.clone(),
            lambda_plus_pow,
            r_over_epsilon,
            ratio_bound,
            samples_checked: samples,
            sample_failures: failures,
        })
    }

    /// A random point of `K_j`, drawn in local coordinates: `ξ = 1` and every
    /// other coordinate `t·R` with `t` a random rational in `[-1, 1]`.
    pub fn sample_k_point<R: Rng + ?Sized>(&self, j: usize, rng: &mut R) -> ProjectivePoint {
        let mut unit = || {
            let den: i64 = rng.gen_range(1..=1000);
            let num: i64 = rng.gen_range(-den..=den);
            Rational::new(BigInt::from(num), BigInt::from(den))
        };
        let blk = self.block(j);
        let eta = self.r().scale(&unit());
        let rest: Vec<_> =
            (0..self.n()).filter(|&l| l != blk.top && l != blk.bottom).map(|l| (l, self.r().scale(&unit()))).collect();
        let lc = LocalCoords { j, xi: self.rational(Rational::one()), eta, rest };
        ProjectivePoint::new(self.from_local_coords(&lc)).expect("ξ = 1 makes the vector nonzero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn exponent_examples() {
        let s2 = ExampleSystem::build(2, 4).unwrap();
        assert_eq!(s2.contraction_exponent(&r(1, 10)).unwrap(), 3);
        let s3 = ExampleSystem::build(3, 4).unwrap();
        assert_eq!(s3.contraction_exponent(&r(1, 100)).unwrap(), 4);
        // ε ≥ R: one step
        assert_eq!(s2.contraction_exponent(&r(8, 1)).unwrap(), 1);
        assert_eq!(s2.contraction_exponent(&r(1000, 1)).unwrap(), 1);
        assert!(matches!(s2.contraction_exponent(&r(0, 1)), Err(ProjError::Parameter(_))));
        assert!(matches!(s2.contraction_exponent(&r(-1, 3)), Err(ProjError::Parameter(_))));
    }

    #[test]
    fn certify_and_refuse() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s2 = ExampleSystem::build(2, 4).unwrap();
        let cert = s2.certify_attraction(0, &r(1, 10), 3, 50, &mut rng).unwrap();
        assert!(cert.holds());
        // (3+2√2)^3 = 99+70√2 = 99 + (35/2)√32
        assert_eq!(cert.lambda_plus_pow, s2.rational(r(99, 1)) + QuadraticNumber::sqrt_d(32).unwrap().scale(&r(35, 2)));
        assert!(matches!(
            s2.certify_attraction(0, &r(1, 10), 0, 0, &mut rng),
            Err(ProjError::AttractionRefused { m: 0, required: 3 })
        ));
        assert!(matches!(
            s2.certify_attraction(1, &r(1, 10), 2, 0, &mut rng),
            Err(ProjError::AttractionRefused { m: 2, required: 3 })
        ));
    }

    #[test]
    fn sampled_attraction_in_dimension_three() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s3 = ExampleSystem::build(3, 4).unwrap();
        let cert = s3.certify_attraction(0, &r(1, 10), 3, 100, &mut rng).unwrap();
        assert_eq!(cert.samples_checked, 100);
        assert_eq!(cert.sample_failures, 0);
    }

    #[test]
    fn samples_lie_in_k() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = ExampleSystem::build(4, 6).unwrap();
        for j in 0..4 {
            for _ in 0..20 {
                assert!(s.k_region(j).contains(&s.sample_k_point(j, &mut rng)));
            }
        }
    }
}
