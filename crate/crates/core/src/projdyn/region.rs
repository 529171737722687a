use alloc::vec::Vec;
use core::cmp::Ordering;

use super::matrix::IntMatrix;
use super::point::ProjectivePoint;
use super::system::ExampleSystem;
use super::ProjError;
use crate::exactnum::QuadraticNumber;

/// Coordinates of a vector in the basis `{u_j, v_j} ∪ {e_l : l outside the block}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCoords {
    pub j: usize,
    /// Coefficient of `u_j`.
    pub xi: QuadraticNumber,
    /// Coefficient of `v_j`.
    pub eta: QuadraticNumber,
    /// `(l, ξ_l)` for every coordinate `l` outside the block of `g_j`.
    pub rest: Vec<(usize, QuadraticNumber)>,
}

impl ExampleSystem {
    /// Exact change of basis to the eigen-frame of `g_j`.
    pub fn to_local_coords(&self, x: &ProjectivePoint, j: usize) -> Result<LocalCoords, ProjError> {
        self.check_index(j)?;
        self.check_point(x)?;
        let blk = self.block(j);
        let c = x.coords();
        let (top, bottom) = (&c[blk.top], &c[blk.bottom]);
        let one = self.a().one_like();
        let det = &one + &(self.a() * self.b());
        // A-block: (top, bottom) = ξ(1, a) + η(-b, 1).
        // B-block: (top, bottom) = ξ(a, 1) + η(1, -b).
        let (lead, other) = if blk.is_last { (bottom, top) } else { (top, bottom) };
        let xi = &(lead + &(self.b() * other)) / &det;
        let eta = &(other - &(self.a() * lead)) / &det;
        let rest = (0..self.n()).filter(|&l| l != blk.top && l != blk.bottom).map(|l| (l, c[l].clone())).collect();
        Ok(LocalCoords { j, xi, eta, rest })
    }

    /// Inverse of [`ExampleSystem::to_local_coords`]: `ξ u_j + η v_j + Σ ξ_l e_l`.
    pub fn from_local_coords(&self, lc: &LocalCoords) -> Vec<QuadraticNumber> {
        let mut out: Vec<QuadraticNumber> =
            self.u(lc.j).iter().zip(self.v(lc.j)).map(|(u, v)| &(u * &lc.xi) + &(v * &lc.eta)).collect();
        for (l, val) in &lc.rest {
            out[*l] = &out[*l] + val;
        }
        out
    }

    pub fn k_region(&self, j: usize) -> RatioRegion<'_> {
        RatioRegion { system: self, j, bound: self.r().clone(), kind: RegionKind::Closed }
    }

    pub fn u_region(&self, j: usize, epsilon: QuadraticNumber) -> RatioRegion<'_> {
        RatioRegion { system: self, j, bound: epsilon, kind: RegionKind::Open }
    }

    /// Index of a largest coordinate in absolute value, smallest index on ties.
    /// The returned `j` always satisfies `x ∈ K_j`.
    pub fn assign_region(&self, x: &ProjectivePoint) -> usize {
        let mut best = 0;
        let mut best_abs = x.coords()[0].abs();
        for (l, c) in x.coords().iter().enumerate().skip(1) {
            let a = c.abs();
            if a.partial_cmp(&best_abs) == Some(Ordering::Greater) {
                best = l;
                best_abs = a;
            }
        }
        best
    }

    pub(crate) fn check_point(&self, x: &ProjectivePoint) -> Result<(), ProjError> {
        if x.dim() != self.n() {
            return Err(ProjError::Dimension(x.dim()));
        }
        if x.discriminant() != self.discriminant() {
            return Err(ProjError::Exact(crate::exactnum::ExactError::FieldMismatch(
                self.discriminant(),
                x.discriminant(),
            )));
        }
        Ok(())
    }

    pub fn u_point(&self, j: usize) -> ProjectivePoint {
        ProjectivePoint::new(self.u(j).to_vec()).expect("eigenvector is nonzero")
    }

    pub fn v_point(&self, j: usize) -> ProjectivePoint {
        ProjectivePoint::new(self.v(j).to_vec()).expect("eigenvector is nonzero")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionKind {
    /// `K_j`: non-strict ratio bounds.
    Closed,
    /// `U_j`: strict ratio bounds.
    Open,
}

/// `{[ξ u_j + η v_j + Σ ξ_l e_l] : ξ ≠ 0, |η/ξ| ⋈ bound, |ξ_l/ξ| ⋈ bound}` with
/// `⋈` being `≤` for closed regions and `<` for open ones.
#[derive(Debug, Clone)]
pub struct RatioRegion<'a> {
    pub system: &'a ExampleSystem,
    pub j: usize,
    pub bound: QuadraticNumber,
    pub kind: RegionKind,
}

impl RatioRegion<'_> {
    /// Exact membership. Points outside the system's dimension or field are
    /// never members.
    pub fn contains(&self, x: &ProjectivePoint) -> bool {
        let Ok(lc) = self.system.to_local_coords(x, self.j) else {
            return false;
        };
        if lc.xi.is_zero() {
            return false;
        }
        // |t/ξ| ⋈ bound  ⇔  |t| ⋈ bound·|ξ|
        let scaled = &self.bound * &lc.xi.abs();
        let within = |t: &QuadraticNumber| match t.abs().partial_cmp(&scaled) {
            Some(Ordering::Less) => true,
            Some(Ordering::Equal) => self.kind == RegionKind::Closed,
            _ => false,
        };
        within(&lc.eta) && lc.rest.iter().all(|(_, t)| within(t))
    }
}

/// `g^m · x`, re-canonicalized. Fails only if `g` is not invertible over `Z`.
pub fn apply_power(g: &IntMatrix, m: i64, x: &ProjectivePoint) -> Result<ProjectivePoint, ProjError> {
    if g.dim() != x.dim() {
        return Err(ProjError::Dimension(x.dim()));
    }
    let gm = g.pow(m).ok_or(ProjError::NotUnimodular)?;
    apply_matrix(&gm, x)
}

pub fn apply_matrix(g: &IntMatrix, x: &ProjectivePoint) -> Result<ProjectivePoint, ProjError> {
    if g.dim() != x.dim() {
        return Err(ProjError::Dimension(x.dim()));
    }
    ProjectivePoint::new(g.apply_quadratic(x.coords()))
}
