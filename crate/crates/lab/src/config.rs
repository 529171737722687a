use serde::{Deserialize, Serialize};

use filling_core::exactnum::{parse_rational, Rational};
use num_traits::{One, Zero};

use crate::LabError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arena {
    Projective,
    Tree,
    Plane,
    Constants,
}

impl Arena {
    pub fn as_str(self) -> &'static str {
        match self {
            Arena::Projective => "projective",
            Arena::Tree => "tree",
            Arena::Plane => "plane",
            Arena::Constants => "constants",
        }
    }
}

/// Inputs of one scenario. Also the schema of `--config` files and of the
/// report's `inputs` block; unset fields take the arena defaults.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub arena: Arena,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    /// Rational as `p/q`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<u8>,
    /// Clopen sets as comma separated prefixes, `full` or `empty`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
    /// Random points for sampled checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Random obstruction tuples (projective) or random set pairs (tree).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default)]
    pub seed: u64,
}

impl ScenarioConfig {
    pub fn new(arena: Arena) -> Self {
        Self {
            arena,
            n: None,
            k: None,
            epsilon: None,
            rank: None,
            u: None,
            v: None,
            q: None,
            radius: None,
            samples: None,
            trials: None,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveParams {
    pub n: usize,
    pub k: u64,
    pub epsilon: Rational,
    pub radius: usize,
    pub samples: usize,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeParams {
    pub rank: u8,
    pub u: String,
    pub v: String,
    pub radius: usize,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneParams {
    pub q: u32,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantsParams {
    pub n: usize,
    pub epsilon: Rational,
}

fn epsilon_of(cfg: &ScenarioConfig, default: &str) -> Result<Rational, LabError> {
    let s = cfg.epsilon.as_deref().unwrap_or(default);
    parse_rational(s).map_err(|_| LabError::Config(format!("epsilon {s:?} is not a rational p/q")))
}

impl ScenarioConfig {
    pub fn projective(&self) -> Result<ProjectiveParams, LabError> {
        let n = self.n.unwrap_or(2);
        if !(2..=8).contains(&n) {
            return Err(LabError::Config(format!("n = {n} outside 2..=8")));
        }
        let k = self.k.unwrap_or(4);
        if !(4..=1000).contains(&k) {
            return Err(LabError::Config(format!("k = {k} outside 4..=1000")));
        }
        let epsilon = epsilon_of(self, "1/10")?;
        if epsilon <= Rational::zero() || epsilon >= Rational::one() {
            return Err(LabError::Config("epsilon must lie in (0, 1)".into()));
        }
        Ok(ProjectiveParams {
            n,
            k,
            epsilon,
            radius: self.radius.unwrap_or(6),
            samples: self.samples.unwrap_or(1000),
            trials: self.trials.unwrap_or(100),
        })
    }

    pub fn tree(&self) -> Result<TreeParams, LabError> {
        let rank = self.rank.unwrap_or(2);
        if !(2..=8).contains(&rank) {
            return Err(LabError::Config(format!("rank = {rank} outside 2..=8")));
        }
        Ok(TreeParams {
            rank,
            u: self.u.clone().unwrap_or_else(|| "x".into()),
            v: self.v.clone().unwrap_or_else(|| "y".into()),
            radius: self.radius.unwrap_or(8),
            trials: self.trials.unwrap_or(0),
        })
    }

    pub fn plane(&self) -> Result<PlaneParams, LabError> {
        let q = self.q.unwrap_or(2);
        if !filling_core::sphergeom::is_prime(q) {
            return Err(LabError::Config(format!("q = {q} is not prime")));
        }
        Ok(PlaneParams { q, samples: self.samples.unwrap_or(1000) })
    }

    pub fn constants(&self) -> Result<ConstantsParams, LabError> {
        let n = self.n.unwrap_or(2);
        if n < 2 {
            return Err(LabError::Config(format!("n = {n} must be at least 2")));
        }
        Ok(ConstantsParams { n, epsilon: epsilon_of(self, "1/20")? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_validation() {
        let p = ScenarioConfig::new(Arena::Projective).projective().unwrap();
        assert_eq!((p.n, p.k, p.epsilon.clone()), (2, 4, Rational::new(1.into(), 10.into())));
        let mut c = ScenarioConfig::new(Arena::Projective);
        c.epsilon = Some("2".into());
        assert!(c.projective().is_err());
        c.epsilon = Some("abc".into());
        assert!(c.projective().is_err());
        let mut c = ScenarioConfig::new(Arena::Plane);
        c.q = Some(4);
        assert!(c.plane().is_err());
    }

    #[test]
    fn json_shape() {
        let mut c = ScenarioConfig::new(Arena::Tree);
        c.u = Some("x".into());
        c.seed = 9;
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"arena":"tree","u":"x","seed":9}"#);
        assert_eq!(serde_json::from_str::<ScenarioConfig>(&s).unwrap(), c);
    }
}
