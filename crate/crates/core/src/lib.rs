//! Exact witnesses and obstructions for `n`-filling boundary actions.
//!
//! An action of a group on a compact space is `n`-filling when any `n`
//! nonempty open sets have translates covering the whole space. This crate
//! decides and certifies that property on three concrete arenas:
//!
//! * [`projdyn`]: `SL_n(Z)` acting on real projective space, with exact
//!   contraction certificates over a real quadratic field and the hyperplane
//!   kernel obstruction showing the action is not `(n-1)`-filling.
//! * [`treebdry`]: a free group acting on the ends of its Cayley tree, with
//!   clopen sets represented as prefix antichains and exact cover decisions.
//! * [`sphergeom`]: chambers (flags) of a finite projective plane `PG(2, q)`,
//!   the opposition relation, apartments and opposition covers.
//!
//! Everything underneath is exact; see [`exactnum`]. The crate is `no_std`
//! and needs only `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod exactnum;
pub mod projdyn;
pub mod sphergeom;
pub mod treebdry;

/// How strongly a result is established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    /// Finite seeded random checks only.
    Sampled,
    /// Exact symbolic verification (inequalities, kernel algebra, exhaustive tables).
    Certified,
}

impl Level {
    pub fn as_str(self) -> &'static str {
        match self {
            Level::Certified => "CERTIFIED",
            Level::Sampled => "SAMPLED",
        }
    }

    /// The weaker of two levels.
    pub fn meet(self, other: Level) -> Level {
        core::cmp::min(self, other)
    }
}

impl core::fmt::Display for Level {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}
