use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use super::matrix::IntMatrix;
use super::ProjError;
use crate::exactnum::{QuadraticNumber, Rational};

/// Rows touched by generator `j`, and which 2×2 block sits there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub top: usize,
    pub bottom: usize,
    /// `true` for the last generator, which carries `B = [[1,1],[k,k+1]]`.
    pub is_last: bool,
}

/// The hyperbolic generators `g_1..g_n` of `SL_n(Z)` together with their
/// eigen-data over `Q(√(k²+4k))`.
///
/// For `j < n-1` (0-based) the block `A = [[k+1,k],[1,1]]` occupies rows and
/// columns `j, j+1`; the last generator carries `B = [[1,1],[k,k+1]]` in the
/// bottom-right corner. Both blocks have eigenvalues `λ₊ = 1 + 1/a > 1` and
/// `λ₋ = 1 - b ∈ (0, 1)`.
#[derive(Debug, Clone)]
pub struct ExampleSystem {
    n: usize,
    k: u64,
    d: u64,
    a: QuadraticNumber,
    b: QuadraticNumber,
    lambda_plus: QuadraticNumber,
    lambda_minus: QuadraticNumber,
    r: QuadraticNumber,
    generators: Vec<IntMatrix>,
    u: Vec<Vec<QuadraticNumber>>,
    v: Vec<Vec<QuadraticNumber>>,
}

impl ExampleSystem {
    /// Builds the system and verifies every structural identity exactly.
    pub fn build(n: usize, k: u64) -> Result<Self, ProjError> {
        if n < 2 {
            return Err(ProjError::Parameter("dimension n must be at least 2"));
        }
        if k < 4 {
            return Err(ProjError::Parameter("parameter k must be at least 4"));
        }
        let d = k * k + 4 * k;
        let sqrt_d = QuadraticNumber::sqrt_d(d)?;
        let kq = QuadraticNumber::from_int(k as i64, d)?;
        let one = kq.one_like();
        let two = kq.rational_like(Rational::from_integer(BigInt::from(2)));

        let a = &two / &(&sqrt_d + &kq);
        let b = &(&sqrt_d - &kq) / &two;
        let lambda_plus = &one + &a.inverse()?;
        let lambda_minus = &one - &b;
        let r = &(&one + &a) / &(&one - &b);

        let kb = BigInt::from(k);
        let block_a = [[&kb + 1u32, kb.clone()], [BigInt::one(), BigInt::one()]];
        let block_b = [[BigInt::one(), BigInt::one()], [kb.clone(), &kb + 1u32]];

        let zero = kq.zero_like();
        let mut generators = Vec::with_capacity(n);
        let mut u = Vec::with_capacity(n);
        let mut v = Vec::with_capacity(n);
        for j in 0..n {
            let blk = block_of(n, j);
            let entries = if blk.is_last { &block_b } else { &block_a };
            let mut g = IntMatrix::identity(n);
            g.set(blk.top, blk.top, entries[0][0].clone());
            g.set(blk.top, blk.bottom, entries[0][1].clone());
            g.set(blk.bottom, blk.top, entries[1][0].clone());
            g.set(blk.bottom, blk.bottom, entries[1][1].clone());
            generators.push(g);

            let mut uj = vec![zero.clone(); n];
            let mut vj = vec![zero.clone(); n];
            if blk.is_last {
                uj[blk.top] = a.clone();
                uj[blk.bottom] = one.clone();
                vj[blk.top] = one.clone();
                vj[blk.bottom] = -&b;
            } else {
                uj[blk.top] = one.clone();
                uj[blk.bottom] = a.clone();
                vj[blk.top] = -&b;
                vj[blk.bottom] = one.clone();
            }
            u.push(uj);
            v.push(vj);
        }

        let system = Self { n, k, d, a, b, lambda_plus, lambda_minus, r, generators, u, v };
        system.verify()?;
        Ok(system)
    }

    /// Re-checks all identities of the construction with zero tolerance.
    pub fn verify(&self) -> Result<(), ProjError> {
        let one = self.a.one_like();
        let zero = self.a.zero_like();
        for (j, g) in self.generators.iter().enumerate() {
            if !g.det().is_one() {
                return Err(ProjError::Invariant("det g_j = 1"));
            }
            let gu = g.apply_quadratic(&self.u[j]);
            let gv = g.apply_quadratic(&self.v[j]);
            let lu: Vec<_> = self.u[j].iter().map(|x| x * &self.lambda_plus).collect();
            let lv: Vec<_> = self.v[j].iter().map(|x| x * &self.lambda_minus).collect();
            if gu != lu {
                return Err(ProjError::Invariant("g_j u_j = λ₊ u_j"));
            }
            if gv != lv {
                return Err(ProjError::Invariant("g_j v_j = λ₋ v_j"));
            }
        }
        if &self.lambda_plus * &self.lambda_minus != one {
            return Err(ProjError::Invariant("λ₊ λ₋ = 1"));
        }
        let trace = self.a.rational_like(Rational::from_integer(BigInt::from(self.k + 2)));
        if &self.lambda_plus + &self.lambda_minus != trace {
            return Err(ProjError::Invariant("λ₊ + λ₋ = k + 2"));
        }
        if !(self.lambda_minus > zero && self.lambda_minus < one && self.lambda_plus > one) {
            return Err(ProjError::Invariant("0 < λ₋ < 1 < λ₊"));
        }
        // R is a maximum of two quotients; it collapses to the first when b < 1.
        if self.b >= one {
            return Err(ProjError::Invariant("b < 1"));
        }
        let first = &(&one + &self.a) / &(&one - &self.b);
        let second = &(&one + &(&self.a * &self.b)) / &(&one - &self.b);
        let max = if first >= second { first.clone() } else { second.clone() };
        if self.r != first || self.r != max {
            return Err(ProjError::Invariant("R = max((1+a)/(1-b), (1+ab)/(1-b)) = (1+a)/(1-b)"));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// `k² + 4k`.
    pub fn discriminant(&self) -> u64 {
        self.d
    }

    pub fn a(&self) -> &QuadraticNumber {
        &self.a
    }

    pub fn b(&self) -> &QuadraticNumber {
        &self.b
    }

    pub fn lambda_plus(&self) -> &QuadraticNumber {
        &self.lambda_plus
    }

    pub fn lambda_minus(&self) -> &QuadraticNumber {
        &self.lambda_minus
    }

    pub fn r(&self) -> &QuadraticNumber {
        &self.r
    }

    pub fn generator(&self, j: usize) -> &IntMatrix {
        &self.generators[j]
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn u(&self, j: usize) -> &[QuadraticNumber] {
        &self.u[j]
    }

    pub fn v(&self, j: usize) -> &[QuadraticNumber] {
        &self.v[j]
    }

    pub fn block(&self, j: usize) -> Block {
        block_of(self.n, j)
    }

    /// A rational value in this system's field.
    pub fn rational(&self, r: Rational) -> QuadraticNumber {
        self.a.rational_like(r)
    }

    pub fn zero(&self) -> QuadraticNumber {
        self.a.zero_like()
    }

    pub(crate) fn check_index(&self, j: usize) -> Result<(), ProjError> {
        if j < self.n {
            Ok(())
        } else {
            Err(ProjError::IndexOutOfRange(j))
        }
    }
}

fn block_of(n: usize, j: usize) -> Block {
    if j + 1 < n {
        Block { top: j, bottom: j + 1, is_last: false }
    } else {
        Block { top: n - 2, bottom: n - 1, is_last: true }
    }
}

impl PartialEq for ExampleSystem {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qn(pn: i64, pd: i64, sn: i64, sd: i64) -> QuadraticNumber {
        QuadraticNumber::new(Rational::new(pn.into(), pd.into()), Rational::new(sn.into(), sd.into()), 32).unwrap()
    }

    #[test]
    fn rank_two_k_four_matrices() {
        let s = ExampleSystem::build(2, 4).unwrap();
        assert_eq!(s.generator(0), &IntMatrix::from_rows(&[vec![5, 4], vec![1, 1]]).unwrap());
        assert_eq!(s.generator(1), &IntMatrix::from_rows(&[vec![1, 1], vec![4, 5]]).unwrap());
    }

    #[test]
    fn rank_two_k_four_constants() {
        // √32 = 4√2: a = (√2-1)/2 = -1/2 + (1/8)√32, b = 2√2-2 = -2 + (1/2)√32
        let s = ExampleSystem::build(2, 4).unwrap();
        assert_eq!(s.a(), &qn(-1, 2, 1, 8));
        assert_eq!(s.b(), &qn(-2, 1, 1, 2));
        assert_eq!(s.lambda_plus(), &qn(3, 1, 1, 2));
        assert_eq!(s.lambda_minus(), &qn(3, 1, -1, 2));
        // R = (7+5√2)/2
        assert_eq!(s.r(), &qn(7, 2, 5, 8));
        assert!((s.r().to_f64() - 7.0355).abs() < 1e-3);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(ExampleSystem::build(2, 3), Err(ProjError::Parameter(_))));
        assert!(matches!(ExampleSystem::build(1, 4), Err(ProjError::Parameter(_))));
    }

    #[test]
    fn blocks() {
        let s = ExampleSystem::build(4, 5).unwrap();
        assert_eq!(s.block(0), Block { top: 0, bottom: 1, is_last: false });
        assert_eq!(s.block(2), Block { top: 2, bottom: 3, is_last: false });
        assert_eq!(s.block(3), Block { top: 2, bottom: 3, is_last: true });
    }
}
