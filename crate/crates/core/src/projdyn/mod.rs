//! `SL_n(Z)` acting on real projective space `P^{n-1}(R)`.
//!
//! [`ExampleSystem`] holds the hyperbolic generators `g_j` and their eigen-data
//! over `Q(√(k²+4k))`. Every point lies in some compact region `K_j`
//! ([`ExampleSystem::assign_region`]), and `g_j^N` squeezes `K_j` into the open
//! neighbourhood `U_j(ε)` of the attracting line `[u_j]` as soon as
//! `λ₊^N > R/ε`. Inverting those powers gives `n` translates whose images
//! cover the space ([`n_filling_witness`]). In the other direction,
//! [`hyperplane_obstruction`] exhibits a point missed by any `n - 1`
//! translates of the complement of a hyperplane.

mod contract;
mod matrix;
mod obstruction;
mod point;
mod region;
mod steer;
mod system;
mod witness;

pub use contract::AttractionCertificate;
pub use matrix::{primitive_integer_vector, rational_kernel, IntMatrix};
pub use obstruction::{hyperplane_obstruction, Hyperplane, Obstruction};
pub use point::ProjectivePoint;
pub use region::{apply_matrix, apply_power, LocalCoords, RatioRegion, RegionKind};
pub use steer::{orbit_steer, ChartBox, GeneratorSet, SteerOutcome, SteerTarget};
pub use system::{Block, ExampleSystem};
pub use witness::{canonical_targets, n_filling_witness, ProjectiveTranslate, ProjectiveWitness, WitnessOptions};

use thiserror::Error;

use crate::exactnum::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("invalid parameter: {0}")]
    Parameter(&'static str),
    #[error("identity failed: {0}")]
    Invariant(&'static str),
    #[error("projective points need at least 2 coordinates of matching dimension (got {0})")]
    Dimension(usize),
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("matrix is not invertible over Z")]
    NotUnimodular,
    #[error("{given} translates given, at most {max} allowed")]
    TooManyTranslates { given: usize, max: usize },
    #[error("exponent {m} is below the contraction exponent {required}")]
    AttractionRefused { m: u32, required: u32 },
    #[error("no steering word for target {index} within radius {radius}")]
    SteeringFailed { index: usize, radius: usize },
    #[error("no exponent up to {max_power} contracts K_{index} into its target")]
    ContractionSearchExhausted { index: usize, max_power: u32 },
}
