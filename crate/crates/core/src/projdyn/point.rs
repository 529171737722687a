use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::primitive_integer_vector;
use super::ProjError;
use crate::exactnum::{QuadraticNumber, Rational};

/// A point `[x]` of real projective space with coordinates in `Q(√d)`.
///
/// Canonical form: a rational point is stored as a primitive integer vector
/// with positive leading entry; an irrational point is scaled so its leading
/// nonzero entry is exactly `1`. Equal points have identical coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<QuadraticNumber>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<QuadraticNumber>) -> Result<Self, ProjError> {
        if coords.len() < 2 {
            return Err(ProjError::Dimension(coords.len()));
        }
        let d = coords[0].discriminant();
        if let Some(bad) = coords.iter().find(|c| c.discriminant() != d) {
            return Err(ProjError::Exact(crate::exactnum::ExactError::FieldMismatch(d, bad.discriminant())));
        }
        if coords.iter().all(QuadraticNumber::is_zero) {
            return Err(ProjError::ZeroVector);
        }
        Ok(Self { coords: canonicalize(coords) })
    }

    pub fn from_integers(coords: &[i64], d: u64) -> Result<Self, ProjError> {
        let v = coords.iter().map(|&c| QuadraticNumber::from_int(c, d)).collect::<Result<Vec<_>, _>>()?;
        Self::new(v)
    }

    pub fn from_big_integers(coords: &[BigInt], d: u64) -> Result<Self, ProjError> {
        let v = coords
            .iter()
            .map(|c| QuadraticNumber::from_rational(Rational::from_integer(c.clone()), d))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(v)
    }

    pub fn from_rationals(coords: &[Rational], d: u64) -> Result<Self, ProjError> {
        let v = coords.iter().map(|c| QuadraticNumber::from_rational(c.clone(), d)).collect::<Result<Vec<_>, _>>()?;
        Self::new(v)
    }

    pub fn coords(&self) -> &[QuadraticNumber] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn discriminant(&self) -> u64 {
        self.coords[0].discriminant()
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(QuadraticNumber::is_rational)
    }

    /// Integer coordinates of a rational point.
    pub fn integer_coords(&self) -> Option<Vec<BigInt>> {
        if !self.is_rational() {
            return None;
        }
        Some(self.coords.iter().map(|c| c.rational_part().to_integer()).collect())
    }
}

fn canonicalize(coords: Vec<QuadraticNumber>) -> Vec<QuadraticNumber> {
    let proto = coords[0].clone();
    if coords.iter().all(QuadraticNumber::is_rational) {
        let rats: Vec<Rational> = coords.iter().map(|c| c.rational_part().clone()).collect();
        let ints = primitive_integer_vector(&rats).expect("nonzero vector");
        return ints.into_iter().map(|i| proto.rational_like(Rational::from_integer(i))).collect();
    }
    let lead = coords.iter().find(|c| !c.is_zero()).expect("nonzero vector");
    let inv = lead.inverse().expect("nonzero lead");
    let out: Vec<QuadraticNumber> = coords.iter().map(|c| c * &inv).collect();
    debug_assert!(out
        .iter()
        .find(|c| !c.is_zero())
        .map(|c| c.rational_part().is_one() && c.surd_part().is_zero())
        .unwrap_or(false));
    out
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ProjectivePoint {
    /// `[x0:x1:...]`, integers for rational points.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            if c.is_rational() && c.rational_part().is_integer() {
                write!(f, "{}", c.rational_part().numer())?;
            } else if c.is_zero() {
                f.write_str("0")?;
            } else {
                write!(f, "{}", c)?;
            }
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn integer_canonical_form() {
        let p = ProjectivePoint::from_integers(&[-4, 6, 0], 32).unwrap();
        assert_eq!(p, ProjectivePoint::from_integers(&[2, -3, 0], 32).unwrap());
        assert_eq!(p.integer_coords().unwrap(), vec![BigInt::from(2), BigInt::from(-3), BigInt::zero()]);
    }

    #[test]
    fn quadratic_canonical_form() {
        let d = 32;
        let s = QuadraticNumber::sqrt_d(d).unwrap();
        let two = QuadraticNumber::from_int(2, d).unwrap();
        let p = ProjectivePoint::new(vec![s.clone(), &s * &s]).unwrap();
        let q = ProjectivePoint::new(vec![&two * &s, &two * &(&s * &s)]).unwrap();
        assert_eq!(p, q);
        assert!(p.coords()[0].rational_part().is_one());
    }

    #[test]
    fn rejects_zero_and_short() {
        assert_eq!(ProjectivePoint::from_integers(&[0, 0], 32), Err(ProjError::ZeroVector));
        assert_eq!(ProjectivePoint::from_integers(&[1], 32), Err(ProjError::Dimension(1)));
    }
}
