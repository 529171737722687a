use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use super::apartment::{non_opposite_witness, Apartment};
use super::plane::{Flag, Plane};
use super::SpherError;

/// Result of [`opposition_cover_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OppositionCover {
    pub covered: bool,
    /// First chamber opposite none of the given ones.
    pub uncovered: Option<Flag>,
    /// For each chamber (in flag order), how many given chambers it is opposite.
    pub multiplicities: Vec<u32>,
    /// multiplicity → number of chambers with it.
    pub histogram: BTreeMap<u32, usize>,
}

impl OppositionCover {
    /// Sum of the multiplicities: `|given| · q³`.
    pub fn incidences(&self) -> u64 {
        self.multiplicities.iter().map(|&m| u64::from(m)).sum()
    }

    /// Some chamber lies in two or more opposition sets.
    pub fn overlapping(&self) -> bool {
        self.multiplicities.iter().any(|&m| m >= 2)
    }
}

/// Whether every chamber is opposite at least one of `chambers`.
pub fn chambers_cover(plane: &Plane, chambers: &[Flag]) -> OppositionCover {
    let multiplicities: Vec<u32> =
        plane.flags().iter().map(|&d| chambers.iter().filter(|&&c| plane.opposite(c, d)).count() as u32).collect();
    let mut histogram = BTreeMap::new();
    for &m in &multiplicities {
        *histogram.entry(m).or_insert(0) += 1;
    }
    let uncovered = multiplicities.iter().position(|&m| m == 0).map(|i| plane.flags()[i]);
    OppositionCover { covered: uncovered.is_none(), uncovered, multiplicities, histogram }
}

/// The opposition sets of an apartment's six chambers cover all chambers.
pub fn opposition_cover_check(plane: &Plane, a: &Apartment) -> OppositionCover {
    chambers_cover(plane, &a.chambers)
}

/// The points of the given chambers.
pub fn project_to_points(chambers: &[Flag]) -> BTreeSet<usize> {
    chambers.iter().map(|c| c.point).collect()
}

/// Smallest `m` with `m` chambers whose opposition sets cover everything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinCover {
    pub m: usize,
    /// Lexicographically first cover of size `m`, by flag index.
    pub witness: Vec<Flag>,
    /// Subsets examined across all sizes.
    pub subsets_checked: u64,
}

/// Exhaustive search over subsets of increasing size, using bitmasks of the
/// opposition sets. Only `q ∈ {2, 3}` (at most 64 chambers) is attempted.
pub fn min_opposition_cover(plane: &Plane) -> Result<MinCover, SpherError> {
    let flags = plane.flags();
    if !matches!(plane.q(), 2 | 3) {
        return Err(SpherError::SearchTooLarge(plane.q()));
    }
    let masks: Vec<u64> = flags
        .iter()
        .map(|&c| flags.iter().enumerate().filter(|&(_, &d)| plane.opposite(c, d)).fold(0u64, |m, (i, _)| m | 1 << i))
        .collect();
    let full = if flags.len() == 64 { u64::MAX } else { (1u64 << flags.len()) - 1 };
    let mut checked = 0;
    for m in 1..=flags.len() {
        let mut chosen = Vec::with_capacity(m);
        if let Some(found) = search(&masks, full, m, 0, 0, &mut chosen, &mut checked) {
            return Ok(MinCover {
                m,
                witness: found.into_iter().map(|i| flags[i]).collect(),
                subsets_checked: checked,
            });
        }
    }
    Err(SpherError::Invariant("the whole chamber set has no opposition cover"))
}

fn search(
    masks: &[u64],
    full: u64,
    m: usize,
    start: usize,
    acc: u64,
    chosen: &mut Vec<usize>,
    checked: &mut u64,
) -> Option<Vec<usize>> {
    if chosen.len() == m {
        *checked += 1;
        return (acc == full).then(|| chosen.clone());
    }
    let remaining = m - chosen.len();
    for i in start..=masks.len() - remaining {
        chosen.push(i);
        let r = search(masks, full, m, i + 1, acc | masks[i], chosen, checked);
        chosen.pop();
        if r.is_some() {
            return r;
        }
    }
    None
}

/// Lower bound on any opposition cover, from irreflexivity and
/// [`non_opposite_witness`] rather than search.
///
/// No single chamber covers (it is not opposite itself), and for every pair
/// the witness is a chamber opposite neither, so the bound is 3 once every
/// pair has a verified witness.
pub fn opposition_lower_bound(plane: &Plane) -> usize {
    let flags = plane.flags();
    let pairs_blocked = flags.iter().enumerate().all(|(i, &c1)| {
        flags[i..].iter().all(|&c2| {
            let w = non_opposite_witness(plane, c1, c2);
            !plane.opposite(w, c1) && !plane.opposite(w, c2)
        })
    });
    if pairs_blocked {
        3
    } else {
        2
    }
}

/// Gallery distances from `from` in the chamber graph, where two distinct
/// flags are adjacent when they share a point or a line. Indexed as
/// [`Plane::flags`].
pub fn gallery_distances(plane: &Plane, from: Flag) -> Vec<u32> {
    let flags = plane.flags();
    let mut dist = alloc::vec![u32::MAX; flags.len()];
    let Some(start) = plane.flag_index(from) else {
        return dist;
    };
    dist[start] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(c) = queue.pop_front() {
        let d = dist[plane.flag_index(c).expect("known flag")];
        let neighbours = plane
            .lines_through(c.point)
            .iter()
            .map(|&l| Flag { point: c.point, line: l })
            .chain(plane.points_on(c.line).iter().map(|&p| Flag { point: p, line: c.line }));
        for n in neighbours {
            let i = plane.flag_index(n).expect("incident pair");
            if dist[i] == u32::MAX {
                dist[i] = d + 1;
                queue.push_back(n);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphergeom::apartment::apartment_from_triangle;
    use crate::sphergeom::plane::build_plane;

    #[test]
    fn every_apartment_covers() {
        for q in [2, 3] {
            let p = build_plane(q).unwrap();
            let n = p.size();
            let mut count = 0;
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        if let Ok(ap) = apartment_from_triangle(&p, a, b, c) {
                            let r = opposition_cover_check(&p, &ap);
                            assert!(r.covered);
                            assert_eq!(r.incidences(), 6 * u64::from(q * q * q));
                            assert!(r.overlapping());
                            count += 1;
                        }
                    }
                }
            }
            if q == 2 {
                assert_eq!(count, 28);
            }
        }
    }

    #[test]
    fn q2_overlap_count() {
        let p = build_plane(2).unwrap();
        let ap = apartment_from_triangle(&p, 0, 1, 2).or_else(|_| apartment_from_triangle(&p, 0, 1, 3)).unwrap();
        let r = opposition_cover_check(&p, &ap);
        // 48 incidences on 21 chambers
        assert_eq!(r.incidences(), 48);
        assert!(r.incidences() > 2 * 21);
        assert_eq!(r.histogram.values().sum::<usize>(), 21);
    }

    /// Largest number of chambers covered by any three opposition sets,
    /// by plain set unions.
    fn best_triple_coverage(p: &Plane) -> usize {
        let sets: Vec<BTreeSet<Flag>> = p.flags().iter().map(|&c| p.opposition_set(c).into_iter().collect()).collect();
        let n = sets.len();
        let mut best = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    best = best.max(sets[a].union(&sets[b]).chain(sets[c].iter()).collect::<BTreeSet<_>>().len());
                }
            }
        }
        best
    }

    #[test]
    fn min_cover_q2() {
        let p = build_plane(2).unwrap();
        assert_eq!(best_triple_coverage(&p), 18);
        let r = min_opposition_cover(&p).unwrap();
        assert_eq!(r.m, 4);
        assert_eq!(r.witness.len(), 4);
        assert!(chambers_cover(&p, &r.witness).covered);
        assert_eq!(opposition_lower_bound(&p), 3);
        assert_eq!(min_opposition_cover(&build_plane(5).unwrap()), Err(SpherError::SearchTooLarge(5)));
    }

    #[test]
    fn min_cover_q3_is_bracketed() {
        let p = build_plane(3).unwrap();
        let r = min_opposition_cover(&p).unwrap();
        assert!((3..=6).contains(&r.m));
        assert!(chambers_cover(&p, &r.witness).covered);
    }

    #[test]
    fn projection() {
        let p = build_plane(2).unwrap();
        assert_eq!(project_to_points(p.flags()).len(), 7);
        let ap = apartment_from_triangle(&p, 0, 1, 3).unwrap();
        assert_eq!(project_to_points(&ap.chambers), BTreeSet::from([0, 1, 3]));
        assert!(project_to_points(&[]).is_empty());
    }

    #[test]
    fn opposition_is_gallery_distance_three() {
        let p = build_plane(2).unwrap();
        for &c in p.flags() {
            let d = gallery_distances(&p, c);
            assert_eq!(d.iter().max(), Some(&3));
            for (i, &e) in p.flags().iter().enumerate() {
                assert_eq!(p.opposite(c, e), d[i] == 3);
            }
        }
    }
}
