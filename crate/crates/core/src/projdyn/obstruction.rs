use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::{primitive_integer_vector, rational_kernel, IntMatrix};
use super::ProjError;
use crate::exactnum::Rational;

/// A rational hyperplane `E = {x : ⟨normal, x⟩ = 0}` of dimension `n - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    normal: Vec<BigInt>,
}

impl Hyperplane {
    pub fn from_normal(normal: Vec<BigInt>) -> Result<Self, ProjError> {
        if normal.len() < 2 {
            return Err(ProjError::Dimension(normal.len()));
        }
        if normal.iter().all(Zero::is_zero) {
            return Err(ProjError::ZeroVector);
        }
        let rats: Vec<Rational> = normal.iter().cloned().map(Rational::from_integer).collect();
        let normal = primitive_integer_vector(&rats).expect("nonzero");
        Ok(Self { normal })
    }

    /// `{x_l = 0}`.
    pub fn coordinate(n: usize, l: usize) -> Result<Self, ProjError> {
        if l >= n {
            return Err(ProjError::IndexOutOfRange(l));
        }
        let mut normal = alloc::vec![BigInt::zero(); n];
        normal[l] = BigInt::from(1);
        Self::from_normal(normal)
    }

    /// The hyperplane spanned by `n - 1` independent integer vectors.
    pub fn from_basis(basis: &[Vec<BigInt>]) -> Result<Self, ProjError> {
        let n = basis.first().map(Vec::len).unwrap_or(0);
        if n < 2 || basis.len() != n - 1 || basis.iter().any(|b| b.len() != n) {
            return Err(ProjError::Parameter("a hyperplane basis needs n-1 vectors of length n"));
        }
        let rows: Vec<Vec<Rational>> =
            basis.iter().map(|b| b.iter().cloned().map(Rational::from_integer).collect()).collect();
        let kernel = rational_kernel(&rows, n);
        if kernel.len() != 1 {
            return Err(ProjError::Parameter("hyperplane basis vectors are dependent"));
        }
        Self::from_normal(primitive_integer_vector(&kernel[0]).expect("kernel vector is nonzero"))
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    /// A basis of `E` as primitive integer vectors.
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        let row: Vec<Rational> = self.normal.iter().cloned().map(Rational::from_integer).collect();
        rational_kernel(&[row], self.dim())
            .iter()
            .map(|v| primitive_integer_vector(v).expect("kernel vectors are nonzero"))
            .collect()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        v.len() == self.dim()
            && self.normal.iter().zip(v).map(|(a, b)| a * b).fold(BigInt::zero(), |acc, x| acc + x).is_zero()
    }
}

/// A point `[v]` outside every translate `t_j U` with `U = Π ∖ [E]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub translates: Vec<IntMatrix>,
    pub hyperplane: Hyperplane,
    /// Primitive integer vector with positive leading entry.
    pub kernel_vector: Vec<BigInt>,
}

impl Obstruction {
    /// `t_j⁻¹ v ∈ E` for every translate, so `[v] ∉ t_j U`.
    pub fn verify(&self) -> bool {
        if self.kernel_vector.iter().all(Zero::is_zero) {
            return false;
        }
        let v: Vec<Rational> = self.kernel_vector.iter().cloned().map(Rational::from_integer).collect();
        self.translates.iter().all(|t| match t.inverse() {
            Some(inv) => {
                let w = inv.apply_rational(&v);
                w.iter().all(Rational::is_integer)
                    && self.hyperplane.contains(&w.iter().map(Rational::to_integer).collect::<Vec<_>>())
            }
            None => false,
        })
    }
}

/// Finds `v ≠ 0` in `t_1 E ∩ … ∩ t_m E` for `m ≤ n - 1` translates.
///
/// `t E = ker(normalᵀ t⁻¹)`, so the intersection is the kernel of the `m × n`
/// matrix whose rows are `normalᵀ t_j⁻¹`; it has dimension at least `n - m ≥ 1`.
pub fn hyperplane_obstruction(translates: &[IntMatrix], e: &Hyperplane) -> Result<Obstruction, ProjError> {
    let n = e.dim();
    if translates.len() + 1 > n {
        return Err(ProjError::TooManyTranslates { given: translates.len(), max: n - 1 });
    }
    let mut rows = Vec::with_capacity(translates.len());
    for t in translates {
        if t.dim() != n {
            return Err(ProjError::Dimension(t.dim()));
        }
        let inv = t.inverse().ok_or(ProjError::NotUnimodular)?;
        let row: Vec<Rational> = (0..n)
            .map(|c| {
                let s = (0..n).fold(BigInt::zero(), |acc, r| acc + &e.normal()[r] * inv.get(r, c));
                Rational::from_integer(s)
            })
            .collect();
        rows.push(row);
    }
    let kernel = rational_kernel(&rows, n);
    let v = kernel.first().ok_or(ProjError::Invariant("kernel of n-1 hyperplanes is nontrivial"))?;
    let obstruction = Obstruction {
        translates: translates.to_vec(),
        hyperplane: e.clone(),
        kernel_vector: primitive_integer_vector(v).expect("kernel vectors are nonzero"),
    };
    debug_assert!(obstruction.verify());
    Ok(obstruction)
}
