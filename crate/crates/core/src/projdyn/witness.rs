use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::Rng;

use super::contract::AttractionCertificate;
use super::matrix::IntMatrix;
use super::point::ProjectivePoint;
use super::region::{apply_matrix, LocalCoords, RegionKind};
use super::steer::{orbit_steer, GeneratorSet, SteerOutcome, SteerTarget};
use super::system::ExampleSystem;
use super::ProjError;
use crate::exactnum::Rational;
use crate::Level;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessOptions {
    /// Radius of each steering search.
    pub radius: usize,
    /// Random `K_j` points used to spot-check (and, off the canonical path, to choose) each exponent.
    pub samples: usize,
    /// Largest exponent tried off the canonical path.
    pub max_power: u32,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        Self { radius: 6, samples: 200, max_power: 64 }
    }
}

/// One translate `t_j = g_j^{-N_j} · s_j` where `s_j = w_j⁻¹` and
/// `w_j [u_j] ∈ T_j`, so that `K_j ⊂ t_j T_j`.
#[derive(Debug, Clone)]
pub struct ProjectiveTranslate {
    pub j: usize,
    pub steer_word: Vec<usize>,
    pub steer_description: String,
    pub power: u32,
    pub matrix: IntMatrix,
    /// `t_j⁻¹ = w_j g_j^{N_j}`.
    pub inverse: IntMatrix,
    pub certificate: Option<AttractionCertificate>,
    pub level: Level,
}

#[derive(Debug, Clone)]
pub struct ProjectiveWitness<'a> {
    pub targets: Vec<SteerTarget<'a>>,
    pub translates: Vec<ProjectiveTranslate>,
    pub level: Level,
}

impl ProjectiveWitness<'_> {
    /// `x ∈ t_j T_j` for `j = assign_region(x)`.
    pub fn covers(&self, system: &ExampleSystem, x: &ProjectivePoint) -> bool {
        let j = system.assign_region(x);
        let t = &self.translates[j];
        match apply_matrix(&t.inverse, x) {
            Ok(y) => self.targets[j].contains(&y),
            Err(_) => false,
        }
    }
}

/// The canonical targets `U_1(ε), …, U_n(ε)` around the attracting points.
pub fn canonical_targets<'a>(system: &'a ExampleSystem, epsilon: &Rational) -> Vec<SteerTarget<'a>> {
    (0..system.n()).map(|j| SteerTarget::Region(system.u_region(j, system.rational(epsilon.clone())))).collect()
}

/// Translates `t_1..t_n` with `t_1 T_1 ∪ … ∪ t_n T_n = Π`.
///
/// Each `[u_j]` is first steered into `T_j`. When `T_j` is the canonical
/// `U_j(ε)` (no steering needed) the exponent is the exact contraction
/// exponent and the translate is CERTIFIED by `λ₊^N > R/ε` together with the
/// totality of [`ExampleSystem::assign_region`]. Otherwise the exponent is the
/// least one passing a sample of `K_j` (random points and corners) and the
/// translate is SAMPLED.
pub fn n_filling_witness<'a, R: Rng + ?Sized>(
    system: &'a ExampleSystem,
    targets: Vec<SteerTarget<'a>>,
    gens: &GeneratorSet,
    opts: &WitnessOptions,
    rng: &mut R,
) -> Result<ProjectiveWitness<'a>, ProjError> {
    let n = system.n();
    if targets.len() != n {
        return Err(ProjError::Parameter("need exactly n targets"));
    }
    let mut translates = Vec::with_capacity(n);
    for (j, target) in targets.iter().enumerate() {
        let steer = orbit_steer(&system.u_point(j), target, gens, opts.radius)?;
        let SteerOutcome::Found { word, matrix: steer_matrix, .. } = steer else {
            return Err(ProjError::SteeringFailed { index: j, radius: opts.radius });
        };
        let g = system.generator(j);

        let canonical_eps = match target {
            SteerTarget::Region(r)
                if word.is_empty()
                    && r.j == j
                    && r.kind == RegionKind::Open
                    && r.bound.is_rational()
                    && core::ptr::eq(r.system, system) =>
            {
                Some(r.bound.rational_part().clone())
            }
            _ => None,
        };

        let (power, certificate, level) = match canonical_eps {
            Some(eps) => {
                let power = system.contraction_exponent(&eps)?;
                let cert = system.certify_attraction(j, &eps, power, opts.samples, rng)?;
                let level = if cert.holds() { Level::Certified } else { Level::Sampled };
                (power, Some(cert), level)
            }
            None => {
                let probes = probe_points(system, j, opts.samples, rng);
                let power = (1..=opts.max_power)
                    .find(|&p| {
                        let inv = steer_matrix.mul(&g.pow(i64::from(p)).expect("unimodular"));
                        probes.iter().all(|x| apply_matrix(&inv, x).map(|y| target.contains(&y)).unwrap_or(false))
                    })
                    .ok_or(ProjError::ContractionSearchExhausted { index: j, max_power: opts.max_power })?;
                (power, None, Level::Sampled)
            }
        };

        let g_power = g.pow(i64::from(power)).expect("unimodular");
        let inverse = steer_matrix.mul(&g_power);
        let matrix = g.pow(-i64::from(power)).expect("unimodular").mul(&steer_matrix.inverse().expect("unimodular"));
        translates.push(ProjectiveTranslate {
            j,
            steer_description: gens.describe(&word),
            steer_word: word,
            power,
            matrix,
            inverse,
            certificate,
            level,
        });
    }
    let level = translates.iter().fold(Level::Certified, |acc, t| acc.meet(t.level));
    Ok(ProjectiveWitness { targets, translates, level })
}

/// Random points of `K_j` plus the corners `η, ξ_l ∈ {±R}` (for `n ≤ 6`).
fn probe_points<R: Rng + ?Sized>(
    system: &ExampleSystem,
    j: usize,
    samples: usize,
    rng: &mut R,
) -> Vec<ProjectivePoint> {
    let mut out: Vec<ProjectivePoint> = (0..samples).map(|_| system.sample_k_point(j, rng)).collect();
    let n = system.n();
    if n <= 6 {
        let blk = system.block(j);
        let others: Vec<usize> = (0..n).filter(|&l| l != blk.top && l != blk.bottom).collect();
        let r = system.r();
        for mask in 0u32..(1 << (n - 1)) {
            let pick = |bit: usize| if mask >> bit & 1 == 1 { r.clone() } else { -r };
            let lc = LocalCoords {
                j,
                xi: system.rational(Rational::from_integer(BigInt::from(1))),
                eta: pick(0),
                rest: others.iter().enumerate().map(|(i, &l)| (l, pick(i + 1))).collect(),
            };
            out.push(ProjectivePoint::new(system.from_local_coords(&lc)).expect("ξ = 1"));
        }
    }
    out
}
