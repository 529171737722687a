//! Scenario runner, JSON reports and an independent certificate checker for
//! `filling-core`.

pub mod config;
pub mod constants;
pub mod recheck;
pub mod report;
pub mod scenario;

pub use config::{Arena, ScenarioConfig};
pub use constants::{epsilon_grid, verify_proof_constants, ConstantsAudit};
pub use recheck::{recheck_certificate, RecheckOutcome};
pub use report::{Certificate, CertificateBody, LevelTag, Report};
pub use scenario::run_scenario;

use filling_core::projdyn::ProjError;
use filling_core::sphergeom::SpherError;
use filling_core::treebdry::TreeError;
use thiserror::Error;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "FILLING_LAB_THREADS";

#[derive(Debug, Error)]
pub enum LabError {
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Projective(#[from] ProjError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Plane(#[from] SpherError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("thread pool: {0}")]
    Threads(#[from] rayon::ThreadPoolBuildError),
    #[error("internal check failed: {0}")]
    Invariant(&'static str),
}

/// A pool sized by `FILLING_LAB_THREADS`, or rayon's default when unset.
pub fn thread_pool() -> Result<rayon::ThreadPool, LabError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize =
            v.trim().parse().map_err(|_| LabError::Config(format!("{THREADS_ENV} = {v:?} is not a thread count")))?;
        builder = builder.num_threads(n);
    }
    Ok(builder.build()?)
}
