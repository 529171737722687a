use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use filling_core::Level;

use crate::config::ScenarioConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum LevelTag {
    Sampled,
    Certified,
}

impl From<Level> for LevelTag {
    fn from(l: Level) -> Self {
        match l {
            Level::Certified => LevelTag::Certified,
            Level::Sampled => LevelTag::Sampled,
        }
    }
}

impl LevelTag {
    pub fn meet(self, other: LevelTag) -> LevelTag {
        self.min(other)
    }
}

/// Integer matrix, row major, entries as decimal strings.
pub type MatrixRecord = Vec<Vec<String>>;

/// `n` translates of `n` sets covering the space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub arena: String,
    pub n: usize,
    pub sets: Vec<String>,
    pub translates: Vec<String>,
    /// Indices into the report's certificates.
    pub certificates: Vec<usize>,
    pub level: LevelTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionRecord {
    pub arena: String,
    /// What is being ruled out, e.g. `not 1-filling`.
    pub claim: String,
    pub cases: usize,
    pub failures: usize,
    pub certificates: Vec<usize>,
    pub level: LevelTag,
}

/// One exact inequality `lhs relation rhs` of the constants audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityRecord {
    pub name: String,
    pub lhs: String,
    pub relation: String,
    pub rhs: String,
    /// Whether the hypothesis of the inequality is met for this `(n, ε)`.
    pub applicable: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateBody {
    /// `λ₊^N > R/ε`, so `g_j^N K_j ⊂ U_j(ε)` and `t_j = g_j^{-N}`.
    Attraction {
        n: usize,
        k: u64,
        j: usize,
        epsilon: String,
        power: u32,
        translate: MatrixRecord,
        lambda_plus_pow: String,
        r_over_epsilon: String,
        holds: bool,
        samples_checked: usize,
        sample_failures: usize,
    },
    /// A nonzero `v` with `t⁻¹v ∈ E` for every translate.
    Kernel {
        n: usize,
        normal: Vec<String>,
        translates: Vec<MatrixRecord>,
        kernel_vector: Vec<String>,
    },
    /// Random-point checks of region totality and of a witness.
    ProjectiveSamples {
        n: usize,
        k: u64,
        points: usize,
        totality_failures: usize,
        cover_failures: usize,
    },
    /// `t_1 S_1 ∪ … ∪ t_n S_n` is the whole boundary.
    TreeCover {
        rank: u8,
        sets: Vec<String>,
        translates: Vec<String>,
        strategy: String,
        covered: bool,
    },
    /// Exhaustive tables: cylinder partitions cover and leave each removed
    /// cylinder as the witness; no cylinder is pointwise fixed.
    TreeTables {
        rank: u8,
        partition_depth: usize,
        partitions: usize,
        partitions_ok: bool,
        freeness_word_length: usize,
        freeness_depth: usize,
        freeness_cases: usize,
        freeness_ok: bool,
    },
    /// Every apartment's six opposition sets cover all chambers.
    PlaneApartments {
        q: u32,
        apartments: usize,
        all_covered: bool,
        opposition_set_size: u64,
        sizes_ok: bool,
        /// Cover multiplicity histogram of the first apartment.
        multiplicities: BTreeMap<String, usize>,
    },
    /// Every pair of chambers has a chamber of a common apartment opposite neither.
    PlanePairs {
        q: u32,
        pairs: usize,
        exhaustive: bool,
        failures: usize,
    },
    /// Incidence opposition equals gallery distance 3.
    PlaneGallery {
        q: u32,
        pairs: usize,
        agree: bool,
    },
    /// Least number of chambers whose opposition sets cover; a finite
    /// combinatorial analogue, not a filling number of a group action.
    PlaneMinCover {
        q: u32,
        m: usize,
        chambers: Vec<String>,
        lower_bound: usize,
        upper_bound: usize,
    },
    Constants {
        n: usize,
        epsilon: String,
        checks: Vec<InequalityRecord>,
        passed: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub id: usize,
    pub level: LevelTag,
    #[serde(flatten)]
    pub body: CertificateBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub arena: String,
    pub inputs: ScenarioConfig,
    pub witnesses: Vec<WitnessRecord>,
    pub obstructions: Vec<ObstructionRecord>,
    pub certificates: Vec<Certificate>,
    pub level: LevelTag,
    pub seed: u64,
    pub timings_ms: BTreeMap<String, u64>,
    /// Failed checks, each described in one line; empty when everything holds.
    #[serde(default)]
    pub failures: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// The report without wall-clock timings, for determinism comparisons.
    pub fn without_timings(&self) -> Report {
        Report { timings_ms: BTreeMap::new(), ..self.clone() }
    }

    pub fn push_certificate(&mut self, level: LevelTag, body: CertificateBody) -> usize {
        let id = self.certificates.len();
        self.certificates.push(Certificate { id, level, body });
        id
    }
}
