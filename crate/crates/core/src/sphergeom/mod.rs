//! The flag complex of a finite projective plane `PG(2, q)` as a rank-2
//! spherical building.
//!
//! Chambers are flags (incident point-line pairs); two chambers are opposite
//! when neither point lies on the other line, which is gallery distance 3.
//! Apartments are the hexagons of flags on a triangle. The opposition sets
//! of an apartment's six chambers cover everything
//! ([`opposition_cover_check`]), while any two chambers leave some chamber
//! opposite neither ([`non_opposite_witness`]).

mod apartment;
mod cover;
mod plane;

pub use apartment::{apartment_from_triangle, apartment_through, non_opposite_witness, Apartment};
pub use cover::{
    chambers_cover, gallery_distances, min_opposition_cover, opposition_cover_check, opposition_lower_bound,
    project_to_points, MinCover, OppositionCover,
};
pub use plane::{build_plane, is_prime, Coords, Flag, Plane, Triple, MAX_ORDER};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpherError {
    #[error("unsupported order {0} (need a prime up to 101)")]
    UnsupportedOrder(u32),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("point {point} is not on line {line}")]
    NotAFlag { point: usize, line: usize },
    #[error("triangle vertices are collinear or repeated")]
    DegenerateTriangle,
    #[error("exhaustive search refused for q = {0} (only 2 and 3)")]
    SearchTooLarge(u32),
    #[error("internal check failed: {0}")]
    Invariant(&'static str),
}
