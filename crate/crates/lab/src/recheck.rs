//! Re-verification of a report from its stored data alone.
//!
//! Nothing here calls the witness or certificate builders of `filling-core`;
//! only exact arithmetic (quadratic numbers, integer matrices, free reduction
//! of words) is shared. Each certificate is decided again from scratch.

use std::collections::VecDeque;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use filling_core::exactnum::{format_rational, parse_rational, QuadraticNumber, Rational};
use filling_core::projdyn::IntMatrix;
use filling_core::treebdry::{Letter, ReducedWord};

use crate::report::{Certificate, CertificateBody, InequalityRecord, LevelTag, MatrixRecord, Report};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecheckOutcome {
    pub ok: bool,
    /// Certificates examined.
    pub checked: usize,
    /// One line per failed check.
    pub failures: Vec<String>,
}

/// Checks every certificate and the consistency of the records that cite them.
pub fn recheck_certificate(report: &Report) -> RecheckOutcome {
    let mut failures: Vec<String> = report.failures.iter().map(|f| format!("report lists failure: {f}")).collect();
    for (i, c) in report.certificates.iter().enumerate() {
        if c.id != i {
            failures.push(format!("certificate {i} carries id {}", c.id));
        }
        if let Err(e) = check(c) {
            failures.push(format!("certificate {i}: {e}"));
        }
    }
    let cited = |ids: &[usize], level: LevelTag, what: &str, failures: &mut Vec<String>| {
        for &id in ids {
            match report.certificates.get(id) {
                None => failures.push(format!("{what} cites missing certificate {id}")),
                Some(c) if c.level < level => failures.push(format!("{what} is {level:?} but certificate {id} is not")),
                Some(_) => {}
            }
        }
    };
    for (i, w) in report.witnesses.iter().enumerate() {
        let what = format!("witness {i}");
        if w.sets.len() != w.n || w.translates.len() != w.n {
            failures.push(format!(
                "{what}: n = {} with {} sets and {} translates",
                w.n,
                w.sets.len(),
                w.translates.len()
            ));
        }
        cited(&w.certificates, w.level, &what, &mut failures);
        for &id in &w.certificates {
            if let Some(Certificate { body: CertificateBody::TreeCover { sets, translates, .. }, .. }) =
                report.certificates.get(id)
            {
                if sets != &w.sets || translates != &w.translates {
                    failures.push(format!("{what}: differs from certificate {id}"));
                }
            }
            if let Some(Certificate { body: CertificateBody::PlaneMinCover { m, .. }, .. }) =
                report.certificates.get(id)
            {
                if *m != w.n {
                    failures.push(format!("{what}: n = {} but the cover has m = {m}", w.n));
                }
            }
        }
    }
    for (i, o) in report.obstructions.iter().enumerate() {
        let what = format!("obstruction {i}");
        if o.failures != 0 {
            failures.push(format!("{what}: {} failures", o.failures));
        }
        cited(&o.certificates, o.level, &what, &mut failures);
    }
    let levels: Vec<LevelTag> =
        report.witnesses.iter().map(|w| w.level).chain(report.obstructions.iter().map(|o| o.level)).collect();
    let expected = if levels.is_empty() {
        report.certificates.iter().fold(LevelTag::Certified, |a, c| a.meet(c.level))
    } else {
        levels.into_iter().fold(LevelTag::Certified, LevelTag::meet)
    };
    if report.level != expected {
        failures.push(format!("report level {:?} should be {expected:?}", report.level));
    }
    RecheckOutcome { ok: failures.is_empty(), checked: report.certificates.len(), failures }
}

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn check(c: &Certificate) -> Check {
    match &c.body {
        CertificateBody::Attraction {
            n,
            k,
            j,
            epsilon,
            power,
            translate,
            lambda_plus_pow,
            r_over_epsilon,
            holds,
            samples_checked: _,
            sample_failures,
        } => attraction(*n, *k, *j, epsilon, *power, translate, lambda_plus_pow, r_over_epsilon)
            .and_then(|_| ensure(*holds && *sample_failures == 0, || "marked as not holding".into())),
        CertificateBody::Kernel { n, normal, translates, kernel_vector } => {
            kernel(*n, normal, translates, kernel_vector)
        }
        CertificateBody::ProjectiveSamples { totality_failures, cover_failures, .. } => {
            ensure(*totality_failures == 0 && *cover_failures == 0, || "sampled failures".into())?;
            ensure(c.level == LevelTag::Sampled, || "samples cannot certify".into())
        }
        CertificateBody::TreeCover { rank, sets, translates, covered, .. } => {
            tree_cover(*rank, sets, translates, *covered)
        }
        CertificateBody::TreeTables {
            rank,
            partition_depth,
            partitions,
            partitions_ok,
            freeness_word_length,
            freeness_depth,
            freeness_cases,
            freeness_ok,
        } => tree_tables(
            *rank,
            *partition_depth,
            *partitions,
            *partitions_ok,
            *freeness_word_length,
            *freeness_depth,
            *freeness_cases,
            *freeness_ok,
        ),
        CertificateBody::PlaneApartments { q, apartments, all_covered, opposition_set_size, sizes_ok, .. } => {
            plane_apartments(*q, *apartments, *all_covered, *opposition_set_size, *sizes_ok, c.level)
        }
        CertificateBody::PlanePairs { q, pairs, exhaustive, failures } => {
            plane_pairs(*q, *pairs, *exhaustive, *failures, c.level)
        }
        CertificateBody::PlaneGallery { q, pairs, agree } => plane_gallery(*q, *pairs, *agree),
        CertificateBody::PlaneMinCover { q, m, chambers, lower_bound, upper_bound } => {
            plane_min_cover(*q, *m, chambers, *lower_bound, *upper_bound)
        }
        CertificateBody::Constants { n, epsilon, checks, passed } => constants(*n, epsilon, checks, *passed),
    }
}

fn big(s: &str) -> Result<BigInt, String> {
    BigInt::from_str(s.trim()).map_err(|_| format!("{s:?} is not an integer"))
}

fn matrix(rec: &MatrixRecord) -> Result<IntMatrix, String> {
    let rows: Vec<Vec<BigInt>> = rec.iter().map(|r| r.iter().map(|s| big(s)).collect()).collect::<Result<_, _>>()?;
    IntMatrix::from_rows(&rows).ok_or_else(|| "matrix is not square".to_string())
}

/// `g_j` rebuilt from its block description.
fn generator(n: usize, k: u64, j: usize) -> Result<IntMatrix, String> {
    if n < 2 || j >= n {
        return Err(format!("generator {j} of SL_{n}"));
    }
    let k = BigInt::from(k);
    let one = BigInt::one();
    let (top, block) = if j + 1 < n {
        (j, [[&k + 1, k.clone()], [one.clone(), one.clone()]])
    } else {
        (n - 2, [[one.clone(), one.clone()], [k.clone(), &k + 1]])
    };
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if (top..top + 2).contains(&r) && (top..top + 2).contains(&c) {
                        block[r - top][c - top].clone()
                    } else if r == c {
                        one.clone()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows).ok_or_else(|| "generator".to_string())
}

#[allow(clippy::too_many_arguments)]
fn attraction(
    n: usize,
    k: u64,
    j: usize,
    epsilon: &str,
    power: u32,
    translate: &MatrixRecord,
    lambda_plus_pow: &str,
    r_over_epsilon: &str,
) -> Check {
    let g = generator(n, k, j)?;
    let expected = g.inverse().and_then(|gi| gi.pow(power as i64)).ok_or("generator not invertible")?;
    ensure(matrix(translate)? == expected, || format!("translate is not g_{}^-{power}", j + 1))?;

    let eps = parse_rational(epsilon).map_err(|e| e.to_string())?;
    ensure(eps.is_positive(), || "epsilon must be positive".into())?;
    let d = k * k + 4 * k;
    let q = |r: Rational| QuadraticNumber::from_rational(r, d).map_err(|e| e.to_string());
    let int = |v: u64| q(Rational::from_integer(BigInt::from(v)));
    let sqrt_d = QuadraticNumber::sqrt_d(d).map_err(|e| e.to_string())?;
    let one = int(1)?;
    let half = q(Rational::new(BigInt::one(), BigInt::from(2)))?;
    // λ₊ as the larger root of t² - (k+2)t + 1
    let lambda = &(&int(k + 2)? + &sqrt_d) * &half;
    let a = &int(2)? / &(&sqrt_d + &int(k)?);
    let b = &(&sqrt_d - &int(k)?) * &half;
    let first = &(&one + &a) / &(&one - &b);
    let second = &(&one + &(&a * &b)) / &(&one - &b);
    let r = if first >= second { first } else { second };
    let bound = &r / &q(eps)?;
    let lp = lambda.pow(power);
    ensure(lp.to_string() == lambda_plus_pow, || "stored lambda_plus^N differs".into())?;
    ensure(bound.to_string() == r_over_epsilon, || "stored R/epsilon differs".into())?;
    ensure(lp > bound, || format!("lambda_plus^{power} does not exceed R/epsilon"))
}

fn kernel(n: usize, normal: &[String], translates: &[MatrixRecord], v: &[String]) -> Check {
    let normal: Vec<BigInt> = normal.iter().map(|s| big(s)).collect::<Result<_, _>>()?;
    let v: Vec<BigInt> = v.iter().map(|s| big(s)).collect::<Result<_, _>>()?;
    ensure(normal.len() == n && v.len() == n, || "dimension mismatch".into())?;
    ensure(v.iter().any(|x| !x.is_zero()), || "kernel vector is zero".into())?;
    ensure(normal.iter().any(|x| !x.is_zero()), || "normal is zero".into())?;
    ensure(translates.len() < n, || format!("{} translates in dimension {n}", translates.len()))?;
    let vq: Vec<Rational> = v.iter().map(|x| Rational::from_integer(x.clone())).collect();
    for (i, t) in translates.iter().enumerate() {
        let t = matrix(t)?;
        ensure(t.dim() == n, || format!("translate {i} has the wrong size"))?;
        let det = t.det();
        ensure(det.abs().is_one(), || format!("translate {i} has det {det}"))?;
        let w = t.inverse().ok_or("not invertible")?.apply_rational(&vq);
        let dot: Rational = normal.iter().zip(&w).map(|(a, b)| Rational::from_integer(a.clone()) * b).sum();
        ensure(dot.is_zero(), || format!("translate {i}: t^-1 v is off the hyperplane"))?;
    }
    Ok(())
}

fn word(s: &str, rank: u8) -> Result<ReducedWord, String> {
    let w = ReducedWord::from_str(s).map_err(|e| e.to_string())?;
    ensure(w.letters().iter().all(|l| l.generator() < rank), || format!("{s:?} uses letters beyond rank {rank}"))?;
    Ok(w)
}

fn prefix_set(s: &str, rank: u8) -> Result<Vec<ReducedWord>, String> {
    match s.trim() {
        "empty" => Ok(Vec::new()),
        "full" => Ok(vec![ReducedWord::identity()]),
        list => list.split(',').map(|w| word(w, rank)).collect(),
    }
}

fn children(w: &ReducedWord, rank: u8) -> Vec<ReducedWord> {
    Letter::alphabet(rank).filter_map(|l| w.extended(l)).collect()
}

/// First cylinder disjoint from every `t_i S_i`, or `None` when they cover.
fn tree_missed(rank: u8, sets: &[(ReducedWord, Vec<ReducedWord>)]) -> Option<ReducedWord> {
    let longest = sets.iter().map(|(t, _)| t.len()).max().unwrap_or(0);
    let mut stack = vec![ReducedWord::identity()];
    while let Some(node) = stack.pop() {
        if longest > 0 && node.len() <= longest {
            stack.extend(children(&node, rank).into_iter().rev());
            continue;
        }
        let mut inside = false;
        let mut mixed = false;
        for (t, prefixes) in sets {
            // |node| > |t| so t⁻¹·Cyl(node) is the cylinder of the reduced product
            let u = t.inverse().mul(&node);
            if prefixes.iter().any(|p| p.is_prefix_of(&u)) {
                inside = true;
                break;
            }
            mixed |= prefixes.iter().any(|p| u.is_prefix_of(p));
        }
        if inside {
            continue;
        }
        if !mixed {
            return Some(node);
        }
        stack.extend(children(&node, rank).into_iter().rev());
    }
    None
}

fn tree_cover(rank: u8, sets: &[String], translates: &[String], covered: bool) -> Check {
    ensure(sets.len() == translates.len(), || "sets and translates differ in number".into())?;
    let mut pairs = Vec::new();
    for (s, t) in sets.iter().zip(translates) {
        let prefixes = prefix_set(s, rank)?;
        ensure(!prefixes.is_empty(), || "an empty set".into())?;
        pairs.push((word(t, rank)?, prefixes));
    }
    match tree_missed(rank, &pairs) {
        None => ensure(covered, || "covers but is marked uncovered".into()),
        Some(w) => Err(format!("cylinder {w} is not covered")),
    }
}

fn sphere(rank: u8, len: usize) -> Vec<ReducedWord> {
    let mut layer = vec![ReducedWord::identity()];
    for _ in 0..len {
        layer = layer.iter().flat_map(|w| children(w, rank)).collect();
    }
    layer
}

fn ball(rank: u8, radius: usize) -> Vec<ReducedWord> {
    (0..=radius).flat_map(|r| sphere(rank, r)).collect()
}

/// Some `w·a^∞` is moved by `g`; prefixes of length `|g|+|w|+2` decide equality.
fn moves_cylinder(g: &ReducedWord, w: &ReducedWord, rank: u8) -> bool {
    let l = g.len() + w.len() + 2;
    Letter::alphabet(rank).filter(|&a| w.last() != Some(a.inv())).any(|a| {
        let tail = ReducedWord::from_reduced(vec![a; l + g.len()]).expect("a power of one letter");
        let x = w.mul(&tail);
        g.mul(&x).truncated(l) != x.truncated(l)
    })
}

#[allow(clippy::too_many_arguments)]
fn tree_tables(
    rank: u8,
    partition_depth: usize,
    partitions: usize,
    partitions_ok: bool,
    word_length: usize,
    depth: usize,
    cases: usize,
    freeness_ok: bool,
) -> Check {
    ensure((2..=8).contains(&rank), || format!("rank {rank}"))?;
    ensure(partitions == partition_depth + 1, || "partition count".into())?;
    let e = ReducedWord::identity();
    for d in 0..=partition_depth {
        let layer = sphere(rank, d);
        let all: Vec<_> = layer.iter().map(|w| (e.clone(), vec![w.clone()])).collect();
        ensure(tree_missed(rank, &all).is_none(), || format!("depth {d} partition does not cover"))?;
        for (i, w) in layer.iter().enumerate() {
            let mut rest = all.clone();
            rest.remove(i);
            let missed = tree_missed(rank, &rest);
            ensure(missed.as_ref() == Some(w), || format!("removing {w} leaves {missed:?}"))?;
        }
    }
    ensure(partitions_ok, || "partition table marked failing".into())?;
    let gs: Vec<_> = ball(rank, word_length).into_iter().skip(1).collect();
    let ws = ball(rank, depth);
    ensure(cases == gs.len() * ws.len(), || "freeness case count".into())?;
    for g in &gs {
        for w in &ws {
            ensure(moves_cylinder(g, w, rank), || format!("{g} fixes Cyl({w}) pointwise"))?;
        }
    }
    ensure(freeness_ok, || "freeness table marked failing".into())
}

type Vec3 = [u64; 3];

/// Normalised representatives of PG(2, q): last nonzero coordinate 1.
fn projective_points(q: u64) -> Vec<Vec3> {
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            out.push([a, b, 1]);
        }
    }
    for a in 0..q {
        out.push([a, 1, 0]);
    }
    out.push([1, 0, 0]);
    out
}

fn dot(x: Vec3, y: Vec3, q: u64) -> u64 {
    (x[0] * y[0] + x[1] * y[1] + x[2] * y[2]) % q
}

fn cross(x: Vec3, y: Vec3, q: u64) -> Vec3 {
    let c = |a: u64, b: u64, c: u64, d: u64| (a * b % q + q * q - c * d % q) % q;
    [c(x[1], y[2], x[2], y[1]), c(x[2], y[0], x[0], y[2]), c(x[0], y[1], x[1], y[0])]
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..q).take_while(|p| p * p <= q).all(|p| !q.is_multiple_of(p))
}

struct Geometry {
    q: u64,
    points: Vec<Vec3>,
    /// Chambers as (point, line) coordinate pairs.
    chambers: Vec<(Vec3, Vec3)>,
}

impl Geometry {
    fn new(q: u32) -> Result<Self, String> {
        let q = u64::from(q);
        ensure(is_prime(q) && q <= 101, || format!("q = {q}"))?;
        let points = projective_points(q);
        let chambers = points
            .iter()
            .flat_map(|&l| points.iter().filter(move |&&p| dot(p, l, q) == 0).map(move |&p| (p, l)))
            .collect();
        Ok(Self { q, points, chambers })
    }

    fn opposite(&self, a: (Vec3, Vec3), b: (Vec3, Vec3)) -> bool {
        dot(a.0, b.1, self.q) != 0 && dot(b.0, a.1, self.q) != 0
    }
}

fn plane_apartments(q: u32, apartments: usize, all_covered: bool, size: u64, sizes_ok: bool, level: LevelTag) -> Check {
    ensure(all_covered && sizes_ok, || "marked as failing".into())?;
    ensure(size == u64::from(q).pow(3), || "opposition set size is not q^3".into())?;
    if level == LevelTag::Sampled {
        return Ok(());
    }
    let g = Geometry::new(q)?;
    ensure(g.q <= 5, || "exhaustive apartment tables only up to q = 5".into())?;
    let opp_sizes = g.chambers.iter().all(|&c| g.chambers.iter().filter(|&&d| g.opposite(c, d)).count() as u64 == size);
    ensure(opp_sizes, || "an opposition set has the wrong size".into())?;
    let n = g.points.len();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (g.points[i], g.points[j], g.points[k]);
                if dot(a, cross(b, c, g.q), g.q) == 0 {
                    continue;
                }
                count += 1;
                let (ab, bc, ca) = (cross(a, b, g.q), cross(b, c, g.q), cross(c, a, g.q));
                let hexagon = [(a, ab), (b, ab), (b, bc), (c, bc), (c, ca), (a, ca)];
                let covered = g.chambers.iter().all(|&d| hexagon.iter().any(|&h| g.opposite(h, d)));
                ensure(covered, || format!("triangle {i},{j},{k} leaves a chamber uncovered"))?;
            }
        }
    }
    ensure(count == apartments, || format!("{count} apartments, report says {apartments}"))
}

fn plane_pairs(q: u32, pairs: usize, exhaustive: bool, failures: usize, level: LevelTag) -> Check {
    ensure(failures == 0, || format!("{failures} failures"))?;
    let g = Geometry::new(q)?;
    let m = g.chambers.len();
    ensure(exhaustive == (m * m <= 100_000), || "exhaustiveness flag".into())?;
    ensure(exhaustive == (level == LevelTag::Certified), || "level does not match exhaustiveness".into())?;
    if !exhaustive {
        return Ok(());
    }
    ensure(pairs == m * m, || "pair count".into())?;
    for &a in &g.chambers {
        for &b in &g.chambers {
            let some = g.chambers.iter().any(|&c| !g.opposite(c, a) && !g.opposite(c, b));
            ensure(some, || "a pair is opposite to every chamber".into())?;
        }
    }
    Ok(())
}

fn plane_gallery(q: u32, pairs: usize, agree: bool) -> Check {
    ensure(agree, || "marked as disagreeing".into())?;
    let g = Geometry::new(q)?;
    ensure(g.q <= 3, || "gallery table only up to q = 3".into())?;
    let m = g.chambers.len();
    ensure(pairs == m * m, || "pair count".into())?;
    for s in 0..m {
        let mut dist = vec![u32::MAX; m];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            for j in 0..m {
                let (a, b) = (g.chambers[i], g.chambers[j]);
                if dist[j] == u32::MAX && (a.0 == b.0) != (a.1 == b.1) {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        for (t, &d) in dist.iter().enumerate() {
            ensure(g.opposite(g.chambers[s], g.chambers[t]) == (d == 3), || "opposition is not distance 3".into())?;
        }
    }
    Ok(())
}

fn triple(s: &str) -> Result<Vec3, String> {
    let parts: Vec<u64> =
        s.split(':').map(|x| x.trim().parse::<u64>()).collect::<Result<_, _>>().map_err(|_| s.to_string())?;
    parts.try_into().map_err(|_| s.to_string())
}

/// Parses `(a:b:c)[d:e:f]`.
fn chamber(s: &str) -> Result<(Vec3, Vec3), String> {
    let bad = || format!("chamber {s:?}");
    let rest = s.trim().strip_prefix('(').ok_or_else(bad)?;
    let (p, rest) = rest.split_once(")[").ok_or_else(bad)?;
    let l = rest.strip_suffix(']').ok_or_else(bad)?;
    Ok((triple(p)?, triple(l)?))
}

fn plane_min_cover(q: u32, m: usize, chambers: &[String], lower: usize, upper: usize) -> Check {
    let g = Geometry::new(q)?;
    ensure(g.chambers.len() <= 64, || "no exhaustive search beyond 64 chambers".into())?;
    ensure(chambers.len() == m, || format!("{} chambers for m = {m}", chambers.len()))?;
    ensure(lower <= m && m <= upper && upper <= 6, || format!("m = {m} outside [{lower}, {upper}]"))?;
    let full: u64 = if g.chambers.len() == 64 { u64::MAX } else { (1u64 << g.chambers.len()) - 1 };
    let masks: Vec<u64> = g
        .chambers
        .iter()
        .map(|&c| g.chambers.iter().enumerate().filter(|&(_, &d)| g.opposite(c, d)).fold(0, |acc, (i, _)| acc | 1 << i))
        .collect();
    let mut given = 0u64;
    for s in chambers {
        let c = chamber(s)?;
        ensure(dot(c.0, c.1, g.q) == 0, || format!("{s} is not a flag"))?;
        let proj = |v: Vec3| {
            g.points
                .iter()
                .position(|&p| cross(p, v, g.q) == [0, 0, 0])
                .ok_or_else(|| format!("{s} has a zero coordinate"))
        };
        let (pi, li) = (proj(c.0)?, proj(c.1)?);
        let idx = g.chambers.iter().position(|&d| d == (g.points[pi], g.points[li])).ok_or("unknown chamber")?;
        given |= masks[idx];
    }
    ensure(given == full, || "the listed chambers do not cover".into())?;
    // no m-1 chambers cover
    fn search(masks: &[u64], start: usize, left: usize, acc: u64, full: u64) -> bool {
        if acc == full {
            return true;
        }
        left > 0 && (start..masks.len()).any(|i| search(masks, i + 1, left - 1, acc | masks[i], full))
    }
    ensure(m == 0 || !search(&masks, 0, m - 1, 0, full), || format!("{} chambers already cover", m - 1))
}

fn constants(n: usize, epsilon: &str, checks: &[InequalityRecord], passed: bool) -> Check {
    let e = parse_rational(epsilon).map_err(|e| e.to_string())?;
    ensure(n >= 2, || "n < 2".into())?;
    let int = |v: usize| Rational::from_integer(BigInt::from(v));
    let one = Rational::one();
    let zero = Rational::zero();
    let below_third = int(3) * &e < one;
    let in_chain = e > zero && &e * int(2 * (2 * n + 1)) < one;
    let lhs = if below_third { int(2 * n) * &e / (&one - int(3) * &e) } else { zero.clone() };
    let target = Rational::new(BigInt::from(n), BigInt::from(2 * n - 1));
    let product = (&one - &e) * (&one - int(2) * &e);
    let mut expected = vec![
        ("invertibility_estimate", lhs.clone(), "<", target.clone(), in_chain),
        ("estimate_below_one", target, "<", one.clone(), in_chain),
        ("product_bound", product, ">=", &one - int(3) * &e, e >= zero && below_third),
        ("norm_squared_bound", int(n), "<=", int(n), true),
        ("perturbation_total", int(2 * n) * &e, "=", int(2 * n) * &e, true),
    ];
    if below_third {
        expected.push(("estimate_consistent", lhs.clone(), "=", lhs, true));
    }
    ensure(checks.len() == expected.len(), || "number of inequalities".into())?;
    let mut all = true;
    for (rec, (name, l, rel, r, applicable)) in checks.iter().zip(expected) {
        let holds = match rel {
            "<" => l < r,
            "<=" => l <= r,
            ">=" => l >= r,
            _ => l == r,
        };
        let same = rec.name == name
            && rec.lhs == format_rational(&l)
            && rec.relation == rel
            && rec.rhs == format_rational(&r)
            && rec.applicable == applicable
            && rec.holds == holds;
        ensure(same, || format!("inequality {name} does not match its recomputation"))?;
        all &= !applicable || holds;
    }
    ensure(passed == all && all, || "audit does not pass".into())
}
