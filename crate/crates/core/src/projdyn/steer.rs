use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::matrix::IntMatrix;
use super::point::ProjectivePoint;
use super::region::{apply_matrix, RatioRegion};
use super::system::ExampleSystem;
use super::ProjError;
use crate::exactnum::Rational;

/// Labelled generating set for word searches.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    labels: Vec<String>,
    matrices: Vec<IntMatrix>,
}

impl GeneratorSet {
    pub fn new(gens: Vec<(String, IntMatrix)>) -> Result<Self, ProjError> {
        if gens.iter().any(|(_, g)| !g.is_unimodular()) {
            return Err(ProjError::NotUnimodular);
        }
        let (labels, matrices) = gens.into_iter().unzip();
        Ok(Self { labels, matrices })
    }

    /// `g_j^{±1}` for each system generator, then `E_{il}(±1)` for `i ≠ l`.
    pub fn standard(system: &ExampleSystem) -> Self {
        let n = system.n();
        let mut labels = Vec::new();
        let mut matrices = Vec::new();
        for (j, g) in system.generators().iter().enumerate() {
            labels.push(format!("g{}", j + 1));
            matrices.push(g.clone());
            labels.push(format!("g{}^-1", j + 1));
            matrices.push(g.inverse().expect("SL_n generator"));
        }
        for i in 0..n {
            for l in 0..n {
                if i != l {
                    labels.push(format!("E{}{}", i + 1, l + 1));
                    matrices.push(IntMatrix::elementary(n, i, l, 1));
                    labels.push(format!("E{}{}^-1", i + 1, l + 1));
                    matrices.push(IntMatrix::elementary(n, i, l, -1));
                }
            }
        }
        Self { labels, matrices }
    }

    /// Only `g_j^{±1}`.
    pub fn hyperbolic(system: &ExampleSystem) -> Self {
        let mut set = Self::standard(system);
        set.labels.truncate(2 * system.n());
        set.matrices.truncate(2 * system.n());
        set
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn matrix(&self, i: usize) -> &IntMatrix {
        &self.matrices[i]
    }

    /// Product `M_{w0} M_{w1} ⋯` of a word of generator indices.
    pub fn evaluate(&self, word: &[usize], n: usize) -> IntMatrix {
        word.iter().fold(IntMatrix::identity(n), |acc, &i| acc.mul(&self.matrices[i]))
    }

    pub fn describe(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return String::from("e");
        }
        word.iter().map(|&i| self.labels[i].as_str()).collect::<Vec<_>>().join(" ")
    }
}

/// An open box in the affine chart `x_chart ≠ 0`:
/// `|x_l / x_chart − center_l| < radius` for every `l ≠ chart`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartBox {
    pub chart: usize,
    pub center: Vec<Rational>,
    pub radius: Rational,
}

impl ChartBox {
    pub fn contains(&self, x: &ProjectivePoint) -> bool {
        let c = x.coords();
        if self.chart >= c.len() || self.center.len() != c.len() || c[self.chart].is_zero() {
            return false;
        }
        let lead = &c[self.chart];
        let scaled = lead.abs().scale(&self.radius);
        (0..c.len()).filter(|&l| l != self.chart).all(|l| {
            let diff = &c[l] - &lead.scale(&self.center[l]);
            diff.abs().partial_cmp(&scaled) == Some(Ordering::Less)
        })
    }
}

/// An open set that steering searches can aim at.
#[derive(Debug, Clone)]
pub enum SteerTarget<'a> {
    Region(RatioRegion<'a>),
    Chart(ChartBox),
}

impl SteerTarget<'_> {
    pub fn contains(&self, x: &ProjectivePoint) -> bool {
        match self {
            SteerTarget::Region(r) => r.contains(x),
            SteerTarget::Chart(b) => b.contains(x),
        }
    }
}

#[derive(Debug, Clone)]
pub enum SteerOutcome {
    /// `matrix = evaluate(word)` and `matrix · p ∈ target`.
    Found {
        word: Vec<usize>,
        matrix: IntMatrix,
        image: ProjectivePoint,
    },
    NotFound {
        radius: usize,
        explored: usize,
    },
}

/// Breadth-first search over the word ball of radius `max_len` for `g` with
/// `g·p ∈ target`. Words are extended on the left, generators tried in their
/// listed order, and group elements deduplicated by matrix, so the returned
/// word is the first hit in a fixed order.
pub fn orbit_steer(
    p: &ProjectivePoint,
    target: &SteerTarget<'_>,
    gens: &GeneratorSet,
    max_len: usize,
) -> Result<SteerOutcome, ProjError> {
    let n = p.dim();
    if gens.matrices.iter().any(|g| g.dim() != n) {
        return Err(ProjError::Dimension(n));
    }
    if target.contains(p) {
        return Ok(SteerOutcome::Found { word: Vec::new(), matrix: IntMatrix::identity(n), image: p.clone() });
    }
    let mut seen = BTreeSet::new();
    seen.insert(IntMatrix::identity(n));
    let mut frontier = VecDeque::new();
    frontier.push_back((Vec::<usize>::new(), IntMatrix::identity(n), p.clone()));
    let mut explored = 1;
    for _depth in 0..max_len {
        let mut next = VecDeque::new();
        while let Some((word, matrix, image)) = frontier.pop_front() {
            for (i, g) in gens.matrices.iter().enumerate() {
                let m = g.mul(&matrix);
                if !seen.insert(m.clone()) {
                    continue;
                }
                explored += 1;
                let img = apply_matrix(g, &image)?;
                let mut w = Vec::with_capacity(word.len() + 1);
                w.push(i);
                w.extend_from_slice(&word);
                if target.contains(&img) {
                    return Ok(SteerOutcome::Found { word: w, matrix: m, image: img });
                }
                next.push_back((w, m, img));
            }
        }
        frontier = next;
    }
    Ok(SteerOutcome::NotFound { radius: max_len, explored })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn identity_when_already_inside() {
        let s = ExampleSystem::build(2, 4).unwrap();
        let t = SteerTarget::Region(s.u_region(0, s.rational(r(1, 10))));
        match orbit_steer(&s.u_point(0), &t, &GeneratorSet::standard(&s), 3).unwrap() {
            SteerOutcome::Found { word, .. } => assert!(word.is_empty()),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn steer_e1_into_u2() {
        let s = ExampleSystem::build(2, 4).unwrap();
        let target = SteerTarget::Region(s.u_region(1, s.rational(r(1, 10))));
        let p = ProjectivePoint::from_integers(&[1, 0], 32).unwrap();
        let gens = GeneratorSet::hyperbolic(&s);
        match orbit_steer(&p, &target, &gens, 8).unwrap() {
            SteerOutcome::Found { word, matrix, image } => {
                assert_eq!(gens.evaluate(&word, 2), matrix);
                assert_eq!(apply_matrix(&matrix, &p).unwrap(), image);
                assert!(target.contains(&image));
                assert!(word.len() <= 8);
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn not_found_when_target_is_empty() {
        let s = ExampleSystem::build(2, 4).unwrap();
        // radius 0 chart box is empty
        let target = SteerTarget::Chart(ChartBox { chart: 0, center: alloc::vec![r(0, 1), r(0, 1)], radius: r(0, 1) });
        let p = ProjectivePoint::from_integers(&[1, 0], 32).unwrap();
        match orbit_steer(&p, &target, &GeneratorSet::standard(&s), 1).unwrap() {
            SteerOutcome::NotFound { radius, explored } => {
                assert_eq!(radius, 1);
                assert_eq!(explored, 1 + GeneratorSet::standard(&s).len());
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn chart_box_membership() {
        let b = ChartBox { chart: 0, center: alloc::vec![r(0, 1), r(1, 2)], radius: r(1, 10) };
        assert!(b.contains(&ProjectivePoint::from_integers(&[2, 1], 32).unwrap()));
        assert!(!b.contains(&ProjectivePoint::from_integers(&[1, 1], 32).unwrap()));
        assert!(!b.contains(&ProjectivePoint::from_integers(&[0, 1], 32).unwrap()));
    }
}
