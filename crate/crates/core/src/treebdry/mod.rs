//! A free group `F_k` acting on the ends of its Cayley tree.
//!
//! Ends are infinite reduced words. Clopen sets are finite unions of
//! cylinders `Cyl(w)` and are kept as canonical prefix antichains, so set
//! algebra, the group action and cover decisions are all exact prefix
//! combinatorics ([`ClopenSet`], [`cover_check`]). Hyperbolic elements have
//! an attracting end ([`attracting_endpoint`]); pushing a neighbourhood of it
//! around yields covering translates ([`translate_cover`]) and filling
//! witnesses ([`recipe_witness`], [`two_filling_witness`]).

mod boundary;
mod clopen;
mod witness;
mod word;

pub use boundary::{
    attracting_endpoint, conjugacy_normal_form, fixed_endpoints, moved_point_in, BoundaryPoint, FixedSet,
};
pub use clopen::{cover_check, ClopenSet, CoverResult};
pub use witness::{
    recipe_witness, reduce_to_common_set, translate_cover, two_filling_witness, CommonSet, RecipeStep, RecipeWitness,
    Strategy, TwoFillingWitness, MAX_RECIPE_POWER,
};
pub use word::{ball, free_reduce, sphere, Letter, ReducedWord, MAX_RANK, NAMES};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("word is not freely reduced")]
    NotReduced,
    #[error("cannot parse {0:?}")]
    Parse(alloc::string::String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u8, u8),
    #[error("rank {0} unsupported (need 2..=8)")]
    RankOutOfRange(u8),
    #[error("not an eventually periodic reduced end")]
    InvalidPoint,
    #[error("the identity has no attracting end")]
    Identity,
    #[error("clopen set is empty")]
    EmptySet,
    #[error("nothing found within radius {radius}")]
    NotFound { radius: usize },
    #[error("{m} translates of the neighbourhood needed, only {n} sets given")]
    CoverTooLarge { m: usize, n: usize },
    #[error("internal check failed: {0}")]
    Invariant(&'static str),
    #[error("no power up to {max_power} contracts the neighbourhood into target {index}")]
    ContractionExhausted { index: usize, max_power: u32 },
}
