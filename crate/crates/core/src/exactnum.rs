//! Exact arithmetic in real quadratic fields `Q(√d)`.
//!
//! A [`QuadraticNumber`] is `p + q·√d` with rational `p`, `q` and a fixed
//! positive non-square discriminant `d`. Signs and comparisons are decided by
//! integer case analysis, never by floating point. Values from different
//! fields are never mixed: the checked entry points return
//! [`ExactError::FieldMismatch`] and the operator impls panic.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("field mismatch: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(u64, u64),
    #[error("discriminant {0} must be a positive non-square integer")]
    BadDiscriminant(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("base is not expanding (must exceed 1)")]
    NonExpanding,
    #[error("bound must be positive")]
    NonPositiveBound,
    #[error("cannot parse exact number from {0:?}")]
    Parse(String),
}

/// Exact sign of a real number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    fn of_rational(r: &Rational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// Returns true when `d` is a perfect square (including 0 and 1).
pub fn is_perfect_square(d: u64) -> bool {
    let r = d.sqrt();
    r * r == d
}

/// `p + q·√d`, rationals kept in lowest terms by [`BigRational`].
///
/// `d` is not reduced to its squarefree part: `√32` stays `√32`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    p: Rational,
    q: Rational,
    d: u64,
}

impl QuadraticNumber {
    pub fn new(p: Rational, q: Rational, d: u64) -> Result<Self, ExactError> {
        if d == 0 || is_perfect_square(d) {
            return Err(ExactError::BadDiscriminant(d));
        }
        Ok(Self { p, q, d })
    }

    /// Like [`QuadraticNumber::new`] but for a discriminant already validated
    /// by the caller (for example taken from another value).
    pub(crate) fn new_unchecked(p: Rational, q: Rational, d: u64) -> Self {
        debug_assert!(d > 0 && !is_perfect_square(d));
        Self { p, q, d }
    }

    pub fn from_rational(p: Rational, d: u64) -> Result<Self, ExactError> {
        Self::new(p, Rational::zero(), d)
    }

    pub fn from_int(p: i64, d: u64) -> Result<Self, ExactError> {
        Self::from_rational(Rational::from_integer(BigInt::from(p)), d)
    }

    /// `√d` itself.
    pub fn sqrt_d(d: u64) -> Result<Self, ExactError> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.p
    }

    pub fn surd_part(&self) -> &Rational {
        &self.q
    }

    pub fn discriminant(&self) -> u64 {
        self.d
    }

    /// Same field, different value.
    pub fn with_value(&self, p: Rational, q: Rational) -> Self {
        Self::new_unchecked(p, q, self.d)
    }

    pub fn zero_like(&self) -> Self {
        self.with_value(Rational::zero(), Rational::zero())
    }

    pub fn one_like(&self) -> Self {
        self.with_value(Rational::one(), Rational::zero())
    }

    pub fn rational_like(&self, r: Rational) -> Self {
        self.with_value(r, Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// Exact sign: case analysis on the signs of `p`, `q` and on `p²` vs `q²d`.
    pub fn sign(&self) -> Sign {
        let sp = Sign::of_rational(&self.p);
        let sq = Sign::of_rational(&self.q);
        match (sp, sq) {
            (s, Sign::Zero) => s,
            (Sign::Zero, s) => s,
            (a, b) if a == b => a,
            (a, b) => {
                let p2 = &self.p * &self.p;
                let q2d = &self.q * &self.q * Rational::from_integer(BigInt::from(self.d));
                // p² = q²d is impossible for non-square d with q ≠ 0.
                if p2 > q2d {
                    a
                } else {
                    b
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Galois conjugate `p − q√d`.
    pub fn conj(&self) -> Self {
        self.with_value(self.p.clone(), -&self.q)
    }

    /// Field norm `p² − q²d`.
    pub fn norm(&self) -> Rational {
        &self.p * &self.p - &self.q * &self.q * Rational::from_integer(BigInt::from(self.d))
    }

    fn ensure_same_field(&self, other: &Self) -> Result<(), ExactError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(ExactError::FieldMismatch(self.d, other.d))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.ensure_same_field(other)?;
        Ok(self.with_value(&self.p + &other.p, &self.q + &other.q))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.ensure_same_field(other)?;
        Ok(self.with_value(&self.p - &other.p, &self.q - &other.q))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.ensure_same_field(other)?;
        let d = Rational::from_integer(BigInt::from(self.d));
        let p = &self.p * &other.p + &self.q * &other.q * d;
        let q = &self.p * &other.q + &self.q * &other.p;
        Ok(self.with_value(p, q))
    }

    /// Multiplicative inverse `conj(x) / norm(x)`.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.norm();
        Ok(self.with_value(&self.p / &n, -&self.q / &n))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.ensure_same_field(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.with_value(&self.p * r, &self.q * r)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact total order on one field. Errors on mismatched discriminants.
    pub fn qext_compare(&self, other: &Self) -> Result<Ordering, ExactError> {
        Ok(match self.checked_sub(other)?.sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        })
    }

    /// Approximate value, for heuristics and display only.
    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        p + q * libm_sqrt(self.d as f64)
    }
}

/// Least `m ≥ 1` with `x^m > bound`, by exact repeated multiplication.
pub fn min_power_exceeding(x: &QuadraticNumber, bound: &QuadraticNumber) -> Result<u32, ExactError> {
    if x.qext_compare(&x.one_like())? != Ordering::Greater {
        return Err(ExactError::NonExpanding);
    }
    if !bound.is_positive() {
        return Err(ExactError::NonPositiveBound);
    }
    let mut m = 1u32;
    let mut power = x.clone();
    while power.qext_compare(bound)? != Ordering::Greater {
        power = &power * x;
        m += 1;
    }
    Ok(m)
}

// core has no f64::sqrt; Newton iteration is plenty for display purposes.
fn libm_sqrt(v: f64) -> f64 {
    if v <= 0.0 {
        return 0.0;
    }
    let mut x = if v > 1.0 { v / 2.0 } else { 1.0 };
    for _ in 0..64 {
        let next = 0.5 * (x + v / x);
        if (next - x).abs() <= f64::EPSILON * next {
            return next;
        }
        x = next;
    }
    x
}

impl PartialOrd for QuadraticNumber {
    /// `None` across different fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.qext_compare(other).ok()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a QuadraticNumber> for &'a QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &'a QuadraticNumber) -> QuadraticNumber {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}", e),
                }
            }
        }

        impl $trait for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        self.with_value(-&self.p, -&self.q)
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

/// Writes `p/q` with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    alloc::format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let err = || ExactError::Parse(String::from(s));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| err())?)),
    }
}

impl fmt::Display for QuadraticNumber {
    /// `p/q+r/s*sqrt(d)`, or `p/q-r/s*sqrt(d)` when the surd part is negative.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.q.is_negative() { '-' } else { '+' };
        let q = self.q.abs();
        write!(f, "{}/{}{}{}/{}*sqrt({})", self.p.numer(), self.p.denom(), sign, q.numer(), q.denom(), self.d)
    }
}

impl fmt::Debug for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (~{:.6})", self, self.to_f64())
    }
}

impl FromStr for QuadraticNumber {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, ExactError> {
        let err = || ExactError::Parse(String::from(s));
        let body = s.trim().strip_suffix(')').ok_or_else(err)?;
        let (coeffs, d) = body.rsplit_once("*sqrt(").ok_or_else(err)?;
        let d: u64 = d.trim().parse().map_err(|_| err())?;
        // The separator is the first '+' or '-' after the leading sign of p.
        let split =
            coeffs.char_indices().skip(1).find(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).ok_or_else(err)?;
        let p = parse_rational(&coeffs[..split])?;
        let mut q = parse_rational(&coeffs[split + 1..])?;
        if coeffs[split..].starts_with('-') {
            q = -q;
        }
        Self::new(p, q, d)
    }
}
