use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use super::boundary::BoundaryPoint;
use super::word::{sphere, ReducedWord, MAX_RANK};
use super::TreeError;
use crate::exactnum::Rational;

/// A clopen subset of the boundary of `F_rank`, as the union of the cylinders
/// `Cyl(w)` (ends starting with `w`) over an antichain of prefixes.
///
/// Canonical: no prefix extends another, and whenever every child cylinder of
/// `w` is present they are merged into `Cyl(w)`. The full boundary is thus
/// `{e}` and the empty set has no prefixes; equal sets compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClopenSet {
    rank: u8,
    prefixes: BTreeSet<ReducedWord>,
}

impl ClopenSet {
    pub fn empty(rank: u8) -> Self {
        Self { rank, prefixes: BTreeSet::new() }
    }

    pub fn full(rank: u8) -> Self {
        Self::cylinder(rank, ReducedWord::identity())
    }

    pub fn cylinder(rank: u8, w: ReducedWord) -> Self {
        let mut prefixes = BTreeSet::new();
        prefixes.insert(w);
        Self { rank, prefixes }.canonical()
    }

    pub fn from_prefixes<I: IntoIterator<Item = ReducedWord>>(rank: u8, prefixes: I) -> Result<Self, TreeError> {
        check_rank(rank)?;
        let prefixes: BTreeSet<ReducedWord> = prefixes.into_iter().collect();
        if let Some(w) = prefixes.iter().find(|w| w.rank_hint() > rank) {
            return Err(TreeError::Parse(alloc::format!("{} uses letters beyond rank {}", w, rank)));
        }
        Ok(Self { rank, prefixes }.canonical())
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn prefixes(&self) -> impl Iterator<Item = &ReducedWord> {
        self.prefixes.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.prefixes.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.prefixes.len() == 1 && self.prefixes.iter().next().is_some_and(ReducedWord::is_identity)
    }

    /// Longest prefix length (0 for empty and full).
    pub fn depth(&self) -> usize {
        self.prefixes.iter().map(ReducedWord::len).max().unwrap_or(0)
    }

    /// Mass under the uniform measure, where each of the `2k(2k-1)^{l-1}`
    /// cylinders of length `l ≥ 1` has equal weight.
    pub fn measure(&self) -> Rational {
        let k = BigInt::from(self.rank);
        let mut total = Rational::zero();
        for w in &self.prefixes {
            if w.is_identity() {
                total += Rational::one();
            } else {
                let branch = BigInt::from(2) * &k - 1;
                let count = BigInt::from(2) * &k * num_traits::pow(branch, w.len() - 1);
                total += Rational::new(BigInt::from(1), count);
            }
        }
        total
    }

    /// Whether `Cyl(w)` lies inside the set.
    pub fn contains_cylinder(&self, w: &ReducedWord) -> bool {
        (0..=w.len()).any(|l| self.prefixes.contains(&w.truncated(l)))
    }

    pub fn contains_point(&self, p: &BoundaryPoint) -> bool {
        self.contains_cylinder(&p.prefix(self.depth()))
    }

    fn canonical(mut self) -> Self {
        // drop prefixes that extend another
        let all: Vec<ReducedWord> = self.prefixes.iter().cloned().collect();
        self.prefixes.retain(|w| !(0..w.len()).any(|l| all.binary_search(&w.truncated(l)).is_ok()));
        // merge complete families of children, deepest first
        loop {
            let mut families: BTreeMap<ReducedWord, usize> = BTreeMap::new();
            for w in &self.prefixes {
                if let Some(p) = w.parent() {
                    *families.entry(p).or_default() += 1;
                }
            }
            let complete: Vec<ReducedWord> =
                families.into_iter().filter(|(p, count)| *count == p.child_count(self.rank)).map(|(p, _)| p).collect();
            if complete.is_empty() {
                break;
            }
            for p in complete {
                for c in p.children(self.rank).collect::<Vec<_>>() {
                    self.prefixes.remove(&c);
                }
                self.prefixes.insert(p);
            }
        }
        self
    }

    fn same_rank(&self, other: &Self) -> Result<(), TreeError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(TreeError::RankMismatch(self.rank, other.rank))
        }
    }

    pub fn union(&self, other: &Self) -> Result<Self, TreeError> {
        self.same_rank(other)?;
        let prefixes = self.prefixes.iter().chain(other.prefixes.iter()).cloned().collect();
        Ok(Self { rank: self.rank, prefixes }.canonical())
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, TreeError> {
        self.same_rank(other)?;
        let mut prefixes = BTreeSet::new();
        for u in &self.prefixes {
            for w in &other.prefixes {
                if u.is_prefix_of(w) {
                    prefixes.insert(w.clone());
                } else if w.is_prefix_of(u) {
                    prefixes.insert(u.clone());
                }
            }
        }
        Ok(Self { rank: self.rank, prefixes }.canonical())
    }

    pub fn complement(&self) -> Self {
        let mut out = BTreeSet::new();
        self.complement_below(&ReducedWord::identity(), &mut out);
        Self { rank: self.rank, prefixes: out }.canonical()
    }

    fn complement_below(&self, node: &ReducedWord, out: &mut BTreeSet<ReducedWord>) {
        if self.contains_cylinder(node) {
            return;
        }
        if !self.prefixes.iter().any(|w| node.is_prefix_of(w)) {
            out.insert(node.clone());
            return;
        }
        for c in node.children(self.rank).collect::<Vec<_>>() {
            self.complement_below(&c, out);
        }
    }

    pub fn difference(&self, other: &Self) -> Result<Self, TreeError> {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool, TreeError> {
        self.same_rank(other)?;
        Ok(self.prefixes.iter().all(|w| other.contains_cylinder(w)))
    }

    pub fn is_disjoint(&self, other: &Self) -> Result<bool, TreeError> {
        Ok(self.intersection(other)?.is_empty())
    }

    /// The image `g·S`.
    ///
    /// A cylinder `Cyl(w)` maps to `Cyl(red(g w))` unless `g` cancels all of
    /// `w`; in that case it is split into its child cylinders first, which
    /// terminates once the children are longer than `g`.
    pub fn act(&self, g: &ReducedWord) -> ClopenSet {
        if g.is_identity() {
            return self.clone();
        }
        let mut out = BTreeSet::new();
        for w in &self.prefixes {
            act_on_cylinder(g, w, self.rank, &mut out);
        }
        Self { rank: self.rank, prefixes: out }.canonical()
    }

    /// A uniformly random union of depth-`depth` cylinders (each kept with
    /// probability 1/2), canonicalized.
    pub fn random<R: Rng + ?Sized>(rank: u8, depth: usize, rng: &mut R) -> Self {
        let prefixes = sphere(rank, depth).into_iter().filter(|_| rng.gen_bool(0.5)).collect();
        Self { rank, prefixes }.canonical()
    }

    /// Same set, every prefix extended to length exactly `depth` (at least
    /// the current depth).
    pub fn refined(&self, depth: usize) -> Vec<ReducedWord> {
        let mut out = Vec::new();
        for w in &self.prefixes {
            let mut layer = alloc::vec![w.clone()];
            for _ in w.len()..depth {
                layer = layer.iter().flat_map(|u| u.children(self.rank).collect::<Vec<_>>()).collect();
            }
            out.extend(layer);
        }
        out.sort();
        out
    }
}

fn check_rank(rank: u8) -> Result<(), TreeError> {
    if (2..=MAX_RANK).contains(&rank) {
        Ok(())
    } else {
        Err(TreeError::RankOutOfRange(rank))
    }
}

fn act_on_cylinder(g: &ReducedWord, w: &ReducedWord, rank: u8, out: &mut BTreeSet<ReducedWord>) {
    let gl = g.letters();
    let wl = w.letters();
    let mut cancel = 0;
    while cancel < gl.len() && cancel < wl.len() && gl[gl.len() - 1 - cancel] == wl[cancel].inv() {
        cancel += 1;
    }
    if cancel < wl.len() {
        out.insert(g.mul(w));
    } else {
        for c in w.children(rank).collect::<Vec<_>>() {
            act_on_cylinder(g, &c, rank, out);
        }
    }
}

/// Outcome of [`cover_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverResult {
    pub covered: bool,
    /// A cylinder disjoint from every set, when not covered.
    pub missed: Option<ReducedWord>,
}

/// Exact decision of whether the union of `sets` is the whole boundary.
///
/// Walks the prefix tree: a node is covered when some set contains its
/// cylinder; it is a witness of non-covering when no prefix of any set lies
/// strictly below it; otherwise its children decide. This is the same
/// decision as refining every set to the largest depth and checking all
/// reduced words of that length, and the first missed cylinder is reported
/// in shortlex order of the walk.
pub fn cover_check(sets: &[ClopenSet]) -> Result<CoverResult, TreeError> {
    let Some(first) = sets.first() else {
        return Ok(CoverResult { covered: false, missed: Some(ReducedWord::identity()) });
    };
    let rank = first.rank;
    if let Some(bad) = sets.iter().find(|s| s.rank != rank) {
        return Err(TreeError::RankMismatch(rank, bad.rank));
    }
    let prefixes: BTreeSet<ReducedWord> = sets.iter().flat_map(|s| s.prefixes.iter().cloned()).collect();
    let union = ClopenSet { rank, prefixes };
    Ok(match first_missed(&union, &ReducedWord::identity()) {
        None => CoverResult { covered: true, missed: None },
        Some(w) => CoverResult { covered: false, missed: Some(w) },
    })
}

fn first_missed(union: &ClopenSet, node: &ReducedWord) -> Option<ReducedWord> {
    if union.contains_cylinder(node) {
        return None;
    }
    if !union.prefixes.iter().any(|w| node.is_prefix_of(w) && w != node) {
        return Some(node.clone());
    }
    node.children(union.rank).collect::<Vec<_>>().iter().find_map(|c| first_missed(union, c))
}

impl fmt::Display for ClopenSet {
    /// Comma separated prefixes; `full` and `empty` for the extremes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("empty");
        }
        if self.is_full() {
            return f.write_str("full");
        }
        let parts: Vec<String> = self.prefixes.iter().map(|w| alloc::format!("{}", w)).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClopenSet(F{}: {})", self.rank, self)
    }
}

impl ClopenSet {
    /// Inverse of `Display`: `full`, `empty`, or comma separated words.
    pub fn parse(rank: u8, s: &str) -> Result<Self, TreeError> {
        check_rank(rank)?;
        match s.trim() {
            "full" => Ok(Self::full(rank)),
            "empty" | "" => Ok(Self::empty(rank)),
            body => {
                let words = body.split(',').map(str::parse).collect::<Result<Vec<ReducedWord>, _>>()?;
                Self::from_prefixes(rank, words)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ReducedWord {
        s.parse().unwrap()
    }

    fn set(s: &str) -> ClopenSet {
        ClopenSet::parse(2, s).unwrap()
    }

    #[test]
    fn canonical_merging() {
        assert!(set("x,y,X,Y").is_full());
        assert_eq!(set("xx,xy,xY"), set("x"));
        assert_eq!(set("x,xy"), set("x"));
        assert_eq!(set("xx,xy"), set("xy,xx"));
        assert!(set("").is_empty());
    }

    #[test]
    fn act_examples() {
        assert_eq!(set("x").act(&w("x")), set("xx"));
        assert_eq!(set("X").act(&w("x")), set("X,y,Y"));
        assert_eq!(set("xy,Y").act(&ReducedWord::identity()), set("xy,Y"));
        assert!(ClopenSet::full(2).act(&w("xyX")).is_full());
    }

    #[test]
    fn complement_and_intersection() {
        assert_eq!(set("x").complement(), set("y,X,Y"));
        assert_eq!(set("xy").complement(), set("xx,xY,y,X,Y"));
        assert!(ClopenSet::full(2).complement().is_empty());
        assert!(ClopenSet::empty(2).complement().is_full());
        assert_eq!(set("x,y").intersection(&set("xy,Y")).unwrap(), set("xy"));
        assert!(set("x").is_disjoint(&set("y")).unwrap());
        assert!(set("xy").is_subset(&set("x")).unwrap());
    }

    #[test]
    fn cover_examples() {
        let all = set("x,y,X,Y");
        assert!(cover_check(&[set("x"), set("y"), set("X"), set("Y")]).unwrap().covered);
        assert!(cover_check(&[all]).unwrap().covered);
        let r = cover_check(&[set("x")]).unwrap();
        assert_eq!(r, CoverResult { covered: false, missed: Some(w("y")) });
        let a = set("x").act(&w("X"));
        let b = set("y").act(&w("Y"));
        assert!(cover_check(&[a, b]).unwrap().covered);
        assert_eq!(cover_check(&[]).unwrap(), CoverResult { covered: false, missed: Some(ReducedWord::identity()) });
        assert!(matches!(cover_check(&[set("x"), ClopenSet::full(3)]), Err(TreeError::RankMismatch(2, 3))));
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["full", "empty", "x", "xY,y", "XX,Xy,Y"] {
            let c = set(s);
            assert_eq!(ClopenSet::parse(2, &alloc::format!("{}", c)).unwrap(), c);
        }
        assert!(ClopenSet::parse(2, "z").is_err());
        assert!(ClopenSet::parse(1, "x").is_err());
    }

    #[test]
    fn measures() {
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        assert_eq!(ClopenSet::full(2).measure(), r(1, 1));
        assert_eq!(set("x").measure(), r(1, 4));
        assert_eq!(set("y,X,Y").measure(), r(3, 4));
        assert_eq!(set("xy,xx").measure(), r(1, 6));
        assert_eq!(ClopenSet::parse(3, "zx").unwrap().measure(), r(1, 30));
    }

    #[test]
    fn refinement_preserves_the_set() {
        let s = set("x,yX");
        let r = s.refined(3);
        assert_eq!(r.len(), 9 + 3);
        assert_eq!(ClopenSet::from_prefixes(2, r).unwrap(), s);
    }
}
