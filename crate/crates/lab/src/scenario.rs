use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use filling_core::exactnum::{format_rational, Rational};
use filling_core::projdyn::{
    canonical_targets, hyperplane_obstruction, n_filling_witness, ExampleSystem, GeneratorSet, Hyperplane, IntMatrix,
    ProjectivePoint, WitnessOptions,
};
use filling_core::sphergeom::{
    apartment_from_triangle, build_plane, gallery_distances, min_opposition_cover, non_opposite_witness,
    opposition_cover_check, opposition_lower_bound, Apartment, Coords, Flag, Plane,
};
use filling_core::treebdry::{ball, cover_check, moved_point_in, sphere, two_filling_witness, ClopenSet, Strategy};

use crate::config::{Arena, ScenarioConfig};
use crate::constants::{epsilon_grid, verify_proof_constants};
use crate::report::{
    CertificateBody, LevelTag, MatrixRecord, ObstructionRecord, Report, WitnessRecord, SCHEMA_VERSION,
};
use crate::LabError;

/// Attraction certificates sample at most this many points per translate.
pub const ATTRACTION_SAMPLES: usize = 200;

/// Runs one scenario. Deterministic given the config (including its seed),
/// apart from `timings_ms`; parallel sections keep input order.
pub fn run_scenario(config: &ScenarioConfig) -> Result<Report, LabError> {
    let pool = crate::thread_pool()?;
    pool.install(|| {
        let mut report = Report {
            schema_version: SCHEMA_VERSION,
            arena: config.arena.as_str().to_string(),
            inputs: config.clone(),
            witnesses: Vec::new(),
            obstructions: Vec::new(),
            certificates: Vec::new(),
            level: LevelTag::Certified,
            seed: config.seed,
            timings_ms: BTreeMap::new(),
            failures: Vec::new(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut timer = Timer::new();
        match config.arena {
            Arena::Projective => projective(config, &mut report, &mut rng, &mut timer)?,
            Arena::Tree => tree(config, &mut report, &mut rng, &mut timer)?,
            Arena::Plane => plane(config, &mut report, &mut rng, &mut timer)?,
            Arena::Constants => constants(config, &mut report, &mut timer)?,
        }
        report.timings_ms = timer.phases;
        report.level = overall_level(&report);
        Ok(report)
    })
}

struct Timer {
    phases: BTreeMap<String, u64>,
    last: Instant,
}

impl Timer {
    fn new() -> Self {
        Self { phases: BTreeMap::new(), last: Instant::now() }
    }

    fn lap(&mut self, name: &str) {
        let now = Instant::now();
        self.phases.insert(name.to_string(), (now - self.last).as_millis() as u64);
        self.last = now;
    }
}

fn overall_level(report: &Report) -> LevelTag {
    let levels = report.witnesses.iter().map(|w| w.level).chain(report.obstructions.iter().map(|o| o.level));
    let mut level = LevelTag::Certified;
    let mut any = false;
    for l in levels {
        level = level.meet(l);
        any = true;
    }
    if !any {
        level = report.certificates.iter().fold(LevelTag::Certified, |acc, c| acc.meet(c.level));
    }
    level
}

pub fn matrix_record(m: &IntMatrix) -> MatrixRecord {
    m.rows().iter().map(|row| row.iter().map(|v| v.to_string()).collect()).collect()
}

pub fn chamber_label(plane: &Plane, c: Flag) -> String {
    let [a, b, d] = plane.line_coords(c.line);
    format!("{}[{}:{}:{}]", Coords(plane.point_coords(c.point)), a, b, d)
}

fn random_point(system: &ExampleSystem, rng: &mut ChaCha8Rng) -> ProjectivePoint {
    loop {
        let coords: Vec<i64> = (0..system.n()).map(|_| rng.gen_range(-1000..=1000)).collect();
        if let Ok(p) = ProjectivePoint::from_integers(&coords, system.discriminant()) {
            return p;
        }
    }
}

fn random_word(gens: &GeneratorSet, n: usize, max_len: usize, rng: &mut ChaCha8Rng) -> IntMatrix {
    let len = rng.gen_range(0..=max_len);
    let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..gens.len())).collect();
    gens.evaluate(&word, n)
}

fn projective(
    config: &ScenarioConfig,
    report: &mut Report,
    rng: &mut ChaCha8Rng,
    timer: &mut Timer,
) -> Result<(), LabError> {
    let p = config.projective()?;
    let system = ExampleSystem::build(p.n, p.k)?;
    let gens = GeneratorSet::standard(&system);
    let opts = WitnessOptions { radius: p.radius, samples: p.samples.min(ATTRACTION_SAMPLES), max_power: 64 };
    let witness = n_filling_witness(&system, canonical_targets(&system, &p.epsilon), &gens, &opts, rng)?;
    let eps = format_rational(&p.epsilon);
    let mut ids = Vec::new();
    let mut translates = Vec::new();
    for t in &witness.translates {
        let cert = t.certificate.as_ref().ok_or(LabError::Invariant("canonical targets give certificates"))?;
        if !cert.holds() {
            report.failures.push(format!("attraction certificate for j = {} does not hold", t.j + 1));
        }
        ids.push(report.push_certificate(
            t.level.into(),
            CertificateBody::Attraction {
                n: p.n,
                k: p.k,
                j: t.j,
                epsilon: eps.clone(),
                power: t.power,
                translate: matrix_record(&t.matrix),
                lambda_plus_pow: cert.lambda_plus_pow.to_string(),
                r_over_epsilon: cert.r_over_epsilon.to_string(),
                holds: cert.holds(),
                samples_checked: cert.samples_checked,
                sample_failures: cert.sample_failures,
            },
        ));
        translates.push(if t.steer_word.is_empty() {
            format!("g{}^-{}", t.j + 1, t.power)
        } else {
            format!("g{}^-{} ({})^-1", t.j + 1, t.power, t.steer_description)
        });
    }
    report.witnesses.push(WitnessRecord {
        arena: "projective".into(),
        n: p.n,
        sets: (1..=p.n).map(|j| format!("U_{j}({eps})")).collect(),
        translates,
        certificates: ids,
        level: witness.level.into(),
        note: Some(format!("contraction exponent N = {}", witness.translates[0].power)),
    });
    timer.lap("witness");

    let points: Vec<ProjectivePoint> = (0..p.samples).map(|_| random_point(&system, rng)).collect();
    let (totality_failures, cover_failures) = points
        .par_iter()
        .map(|x| {
            let j = system.assign_region(x);
            (usize::from(!system.k_region(j).contains(x)), usize::from(!witness.covers(&system, x)))
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    if totality_failures + cover_failures > 0 {
        report.failures.push(format!(
            "{totality_failures} totality and {cover_failures} cover failures on {} random points",
            p.samples
        ));
    }
    report.push_certificate(
        LevelTag::Sampled,
        CertificateBody::ProjectiveSamples { n: p.n, k: p.k, points: p.samples, totality_failures, cover_failures },
    );
    timer.lap("samples");

    let e = Hyperplane::coordinate(p.n, 0)?;
    let tuples: Vec<Vec<IntMatrix>> =
        (0..p.trials).map(|_| (0..p.n - 1).map(|_| random_word(&gens, p.n, 6, rng)).collect()).collect();
    let results: Vec<_> = tuples.par_iter().map(|ts| hyperplane_obstruction(ts, &e)).collect();
    let mut ids = Vec::new();
    let mut failures = 0;
    for r in results {
        let ob = r?;
        if !ob.verify() {
            failures += 1;
        }
        ids.push(report.push_certificate(
            LevelTag::Certified,
            CertificateBody::Kernel {
                n: p.n,
                normal: ob.hyperplane.normal().iter().map(|v| v.to_string()).collect(),
                translates: ob.translates.iter().map(matrix_record).collect(),
                kernel_vector: ob.kernel_vector.iter().map(|v| v.to_string()).collect(),
            },
        ));
    }
    if failures > 0 {
        report.failures.push(format!("{failures} kernel vectors failed verification"));
    }
    report.obstructions.push(ObstructionRecord {
        arena: "projective".into(),
        claim: format!("not {}-filling: U = complement of [x_1 = 0]", p.n - 1),
        cases: p.trials,
        failures,
        certificates: ids,
        level: LevelTag::Certified,
    });
    timer.lap("obstructions");
    Ok(())
}

fn tree_record(report: &mut Report, rank: u8, u: &ClopenSet, v: &ClopenSet, radius: usize) -> Result<(), LabError> {
    let w = two_filling_witness(u, v, radius)?;
    let sets = vec![u.to_string(), v.to_string()];
    let translates = vec![w.t1.to_string(), w.t2.to_string()];
    if !w.check.covered {
        report.failures.push(format!("tree witness for {u} / {v} does not cover"));
    }
    let id = report.push_certificate(
        LevelTag::Certified,
        CertificateBody::TreeCover {
            rank,
            sets: sets.clone(),
            translates: translates.clone(),
            strategy: w.strategy.name().into(),
            covered: w.check.covered,
        },
    );
    let note = match &w.strategy {
        Strategy::Recipe(r) => Some(format!(
            "g = {}, attracting end {}, V_x = {}, cover h = {{{}}}, powers {:?}",
            r.g,
            r.attracting,
            r.neighbourhood,
            r.cover.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(", "),
            r.steps.iter().map(|s| s.power).collect::<Vec<_>>()
        )),
        _ => Some(format!("strategy {}", w.strategy.name())),
    };
    report.witnesses.push(WitnessRecord {
        arena: "tree".into(),
        n: 2,
        sets,
        translates,
        certificates: vec![id],
        level: LevelTag::Certified,
        note,
    });
    Ok(())
}

fn tree(config: &ScenarioConfig, report: &mut Report, rng: &mut ChaCha8Rng, timer: &mut Timer) -> Result<(), LabError> {
    let p = config.tree()?;
    let u = ClopenSet::parse(p.rank, &p.u)?;
    let v = ClopenSet::parse(p.rank, &p.v)?;
    tree_record(report, p.rank, &u, &v, p.radius)?;
    timer.lap("witness");

    let mut pairs = Vec::with_capacity(p.trials);
    while pairs.len() < p.trials {
        let du = rng.gen_range(1..=3);
        let dv = rng.gen_range(1..=3);
        let a = ClopenSet::random(p.rank, du, rng);
        let b = ClopenSet::random(p.rank, dv, rng);
        if !(a.is_empty() || a.is_full() || b.is_empty() || b.is_full()) {
            pairs.push((a, b));
        }
    }
    let found: Vec<_> = pairs.par_iter().map(|(a, b)| two_filling_witness(a, b, p.radius).map(|_| ())).collect();
    for (r, (a, b)) in found.into_iter().zip(&pairs) {
        r?;
        tree_record(report, p.rank, a, b, p.radius)?;
    }
    timer.lap("random_pairs");

    let (word_length, depth, partition_depth) = if p.rank == 2 { (5, 3, 3) } else { (3, 2, 2) };
    let mut partitions = 0;
    let mut partitions_ok = true;
    for d in 0..=partition_depth {
        let cyls: Vec<ClopenSet> = sphere(p.rank, d).into_iter().map(|w| ClopenSet::cylinder(p.rank, w)).collect();
        partitions += 1;
        partitions_ok &= cover_check(&cyls)?.covered;
        for i in 0..cyls.len() {
            let mut rest = cyls.clone();
            let removed = rest.remove(i);
            let r = cover_check(&rest)?;
            partitions_ok &= !r.covered && r.missed.as_ref() == removed.prefixes().next();
        }
    }
    let gs: Vec<_> = ball(p.rank, word_length).into_iter().skip(1).collect();
    let cyls = ball(p.rank, depth);
    let freeness: Vec<bool> = gs
        .par_iter()
        .map(|g| {
            cyls.iter().all(|w| {
                moved_point_in(g, w, p.rank).is_some_and(|pt| w.is_prefix_of(&pt.prefix(w.len())) && pt.act(g) != pt)
            })
        })
        .collect();
    let freeness_ok = freeness.iter().all(|&b| b);
    if !partitions_ok {
        report.failures.push("cylinder partition table failed".into());
    }
    if !freeness_ok {
        report.failures.push("a cylinder is pointwise fixed".into());
    }
    report.push_certificate(
        LevelTag::Certified,
        CertificateBody::TreeTables {
            rank: p.rank,
            partition_depth,
            partitions,
            partitions_ok,
            freeness_word_length: word_length,
            freeness_depth: depth,
            freeness_cases: gs.len() * cyls.len(),
            freeness_ok,
        },
    );
    timer.lap("tables");
    Ok(())
}

fn all_apartments(plane: &Plane) -> Vec<Apartment> {
    let n = plane.size();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if let Ok(ap) = apartment_from_triangle(plane, a, b, c) {
                    out.push(ap);
                }
            }
        }
    }
    out
}

fn random_apartment(plane: &Plane, rng: &mut ChaCha8Rng) -> Apartment {
    loop {
        let pts: Vec<usize> = (0..3).map(|_| rng.gen_range(0..plane.size())).collect();
        if let Ok(a) = apartment_from_triangle(plane, pts[0], pts[1], pts[2]) {
            return a;
        }
    }
}

fn plane(
    config: &ScenarioConfig,
    report: &mut Report,
    rng: &mut ChaCha8Rng,
    timer: &mut Timer,
) -> Result<(), LabError> {
    let p = config.plane()?;
    let plane = build_plane(p.q)?;
    let q3 = u64::from(p.q).pow(3);
    let flags = plane.flags();

    let exhaustive = p.q <= 5;
    let apartments = if exhaustive {
        all_apartments(&plane)
    } else {
        (0..p.samples).map(|_| random_apartment(&plane, rng)).collect()
    };
    let level = if exhaustive { LevelTag::Certified } else { LevelTag::Sampled };
    let covers: Vec<bool> = apartments.par_iter().map(|a| opposition_cover_check(&plane, a).covered).collect();
    let all_covered = covers.iter().all(|&c| c);
    let sizes_ok = flags.par_iter().all(|&c| plane.opposition_set(c).len() as u64 == q3);
    let first = &apartments[0];
    let first_cover = opposition_cover_check(&plane, first);
    if !all_covered {
        report.failures.push("an apartment's opposition sets miss a chamber".into());
    }
    if !sizes_ok {
        report.failures.push("an opposition set has size other than q^3".into());
    }
    let id = report.push_certificate(
        level,
        CertificateBody::PlaneApartments {
            q: p.q,
            apartments: apartments.len(),
            all_covered,
            opposition_set_size: q3,
            sizes_ok,
            multiplicities: first_cover.histogram.iter().map(|(m, c)| (m.to_string(), *c)).collect(),
        },
    );
    report.witnesses.push(WitnessRecord {
        arena: "plane".into(),
        n: 6,
        sets: first.chambers.iter().map(|&c| format!("O({})", chamber_label(&plane, c))).collect(),
        translates: first.chambers.iter().map(|&c| chamber_label(&plane, c)).collect(),
        certificates: vec![id],
        level,
        note: Some(format!(
            "opposition sets of one apartment cover all {} chambers; checked for {} apartments",
            flags.len(),
            apartments.len()
        )),
    });
    timer.lap("apartments");

    let pair_exhaustive = flags.len() * flags.len() <= 100_000;
    let pairs: Vec<(Flag, Flag)> = if pair_exhaustive {
        flags.iter().flat_map(|&a| flags.iter().map(move |&b| (a, b))).collect()
    } else {
        (0..p.samples).map(|_| (*flags.choose(rng).unwrap(), *flags.choose(rng).unwrap())).collect()
    };
    let failures = pairs
        .par_iter()
        .filter(|&&(a, b)| {
            let w = non_opposite_witness(&plane, a, b);
            plane.opposite(w, a) || plane.opposite(w, b)
        })
        .count();
    if failures > 0 {
        report.failures.push(format!("{failures} chamber pairs without a non-opposite witness"));
    }
    let pair_level = if pair_exhaustive { LevelTag::Certified } else { LevelTag::Sampled };
    let id = report.push_certificate(
        pair_level,
        CertificateBody::PlanePairs { q: p.q, pairs: pairs.len(), exhaustive: pair_exhaustive, failures },
    );
    report.obstructions.push(ObstructionRecord {
        arena: "plane".into(),
        claim: "no two opposition sets cover the chambers".into(),
        cases: pairs.len(),
        failures,
        certificates: vec![id],
        level: pair_level,
    });
    timer.lap("pairs");

    if p.q <= 3 {
        let agree = flags.par_iter().all(|&c| {
            let d = gallery_distances(&plane, c);
            flags.iter().enumerate().all(|(i, &e)| plane.opposite(c, e) == (d[i] == 3))
        });
        if !agree {
            report.failures.push("opposition differs from gallery distance 3".into());
        }
        report.push_certificate(
            LevelTag::Certified,
            CertificateBody::PlaneGallery { q: p.q, pairs: flags.len() * flags.len(), agree },
        );
        timer.lap("gallery");

        let min = min_opposition_cover(&plane)?;
        let lower = opposition_lower_bound(&plane);
        let upper = if first_cover.covered { 6 } else { flags.len() };
        if !(lower <= min.m && min.m <= upper) {
            report.failures.push(format!("min cover {} outside [{lower}, {upper}]", min.m));
        }
        let chambers: Vec<String> = min.witness.iter().map(|&c| chamber_label(&plane, c)).collect();
        let id = report.push_certificate(
            LevelTag::Certified,
            CertificateBody::PlaneMinCover {
                q: p.q,
                m: min.m,
                chambers: chambers.clone(),
                lower_bound: lower,
                upper_bound: upper,
            },
        );
        report.witnesses.push(WitnessRecord {
            arena: "plane".into(),
            n: min.m,
            sets: chambers.iter().map(|c| format!("O({c})")).collect(),
            translates: chambers,
            certificates: vec![id],
            level: LevelTag::Certified,
            note: Some(format!(
                "least opposition cover, a finite combinatorial analogue only; {} subsets examined",
                min.subsets_checked
            )),
        });
        timer.lap("min_cover");
    }
    Ok(())
}

fn constants(config: &ScenarioConfig, report: &mut Report, timer: &mut Timer) -> Result<(), LabError> {
    let p = config.constants()?;
    let epsilons: Vec<Rational> =
        if config.epsilon.is_some() { vec![p.epsilon.clone()] } else { epsilon_grid(p.n, 100) };
    for e in epsilons {
        let audit = verify_proof_constants(p.n, &e);
        let passed = audit.passed();
        if !passed {
            report.failures.push(format!("constants audit fails at n = {}, epsilon = {}", p.n, format_rational(&e)));
        }
        report.push_certificate(
            LevelTag::Certified,
            CertificateBody::Constants { n: p.n, epsilon: format_rational(&e), checks: audit.checks, passed },
        );
    }
    timer.lap("constants");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(arena: Arena) -> ScenarioConfig {
        let mut c = ScenarioConfig::new(arena);
        c.samples = Some(50);
        c.trials = Some(5);
        c.seed = 3;
        c
    }

    #[test]
    fn projective_defaults_give_power_three() {
        let r = run_scenario(&small(Arena::Projective)).unwrap();
        assert_eq!(r.level, LevelTag::Certified);
        assert_eq!(r.witnesses[0].translates, ["g1^-3", "g2^-3"]);
        assert_eq!(r.obstructions[0].cases, 5);
        assert!(r.failures.is_empty());
    }

    #[test]
    fn same_seed_same_report() {
        for arena in [Arena::Projective, Arena::Tree, Arena::Plane, Arena::Constants] {
            let a = run_scenario(&small(arena)).unwrap().without_timings();
            let b = run_scenario(&small(arena)).unwrap().without_timings();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn sampled_plane_is_sampled() {
        let mut c = small(Arena::Plane);
        c.q = Some(7);
        let r = run_scenario(&c).unwrap();
        assert_eq!(r.level, LevelTag::Sampled);
        assert!(r.failures.is_empty());
    }

    #[test]
    fn bad_parameters_are_errors() {
        let mut c = small(Arena::Projective);
        c.k = Some(3);
        assert!(matches!(run_scenario(&c), Err(LabError::Config(_))));
        let mut c = small(Arena::Tree);
        c.u = Some("x#".into());
        assert!(run_scenario(&c).is_err());
    }

    #[test]
    fn chamber_labels() {
        let p = build_plane(2).unwrap();
        let c = p.flags()[0];
        let label = chamber_label(&p, c);
        assert!(label.starts_with('(') && label.ends_with(']'));
        assert_eq!(label.matches(':').count(), 4);
    }
}
