use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use filling_lab::{recheck_certificate, run_scenario, Arena, LevelTag, Report, ScenarioConfig};

/// Exact witnesses and obstructions for filling actions.
///
/// Exit status: 0 when everything is certified, 1 when some result is only
/// sampled, 2 when a check fails, 3 on errors.
#[derive(Parser)]
#[command(name = "filling-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// SL_n(Z) on projective space: witness, sampled checks, obstructions.
    Projective(ScenarioArgs),
    /// Free group on the boundary of its tree: two-filling witnesses.
    Tree(ScenarioArgs),
    /// Chambers of PG(2, q): apartments, opposition covers.
    Plane(ScenarioArgs),
    /// Exact audit of the scalar inequalities.
    Constants(ScenarioArgs),
    /// Re-verify a saved report.
    Recheck { report: PathBuf },
}

#[derive(Args)]
struct ScenarioArgs {
    /// JSON scenario file; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<u64>,
    /// Rational `p/q`.
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    rank: Option<u8>,
    /// Clopen set: comma separated prefixes, `full` or `empty`.
    #[arg(long)]
    u: Option<String>,
    #[arg(long)]
    v: Option<String>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    radius: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ScenarioArgs {
    fn config(&self, arena: Arena) -> Result<ScenarioConfig> {
        let mut c = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let c: ScenarioConfig =
                    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
                anyhow::ensure!(c.arena == arena, "{} describes a {} scenario", path.display(), c.arena.as_str());
                c
            }
            None => ScenarioConfig::new(arena),
        };
        macro_rules! set {
            ($($f:ident),*) => { $(if self.$f.is_some() { c.$f = self.$f.clone(); })* };
        }
        set!(n, k, epsilon, rank, u, v, q, radius, samples, trials);
        if let Some(s) = self.seed {
            c.seed = s;
        }
        Ok(c)
    }
}

fn write_report(report: &Report, out: Option<&Path>) -> Result<()> {
    let json = report.to_json();
    match out {
        Some(path) => std::fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn status(report: &Report, recheck_ok: bool) -> u8 {
    if !report.failures.is_empty() || !recheck_ok {
        2
    } else if report.level == LevelTag::Certified {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<u8> {
    let (arena, args) = match cli.command {
        Command::Projective(a) => (Arena::Projective, a),
        Command::Tree(a) => (Arena::Tree, a),
        Command::Plane(a) => (Arena::Plane, a),
        Command::Constants(a) => (Arena::Constants, a),
        Command::Recheck { report } => {
            let text = std::fs::read_to_string(&report).with_context(|| format!("reading {}", report.display()))?;
            let report = Report::from_json(&text).with_context(|| format!("parsing {}", report.display()))?;
            let outcome = recheck_certificate(&report);
            for f in &outcome.failures {
                eprintln!("FAIL {f}");
            }
            eprintln!("recheck: {} certificates, {}", outcome.checked, if outcome.ok { "ok" } else { "FAILED" });
            return Ok(status(&report, outcome.ok));
        }
    };
    let report = run_scenario(&args.config(arena)?)?;
    write_report(&report, args.out.as_deref())?;
    let outcome = recheck_certificate(&report);
    for f in report.failures.iter().chain(&outcome.failures) {
        eprintln!("FAIL {f}");
    }
    eprintln!(
        "{}: {} witnesses, {} obstructions, {} certificates, level {:?}, recheck {}",
        report.arena,
        report.witnesses.len(),
        report.obstructions.len(),
        report.certificates.len(),
        report.level,
        if outcome.ok { "ok" } else { "FAILED" }
    );
    Ok(status(&report, outcome.ok))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
