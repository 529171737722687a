use alloc::vec::Vec;
use core::fmt;

use super::word::{Letter, ReducedWord};
use super::TreeError;

/// An eventually periodic end `head · cycle^∞`.
///
/// Canonical: `cycle` is nonempty, cyclically reduced and primitive (not a
/// proper power), `head · cycle` is reduced, and `head` does not end with
/// the last letter of `cycle` (that letter is rotated into the cycle).
/// Equal points have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryPoint {
    head: ReducedWord,
    cycle: ReducedWord,
}

impl BoundaryPoint {
    pub fn new(head: ReducedWord, cycle: ReducedWord) -> Result<Self, TreeError> {
        if cycle.is_identity() || !cycle.is_cyclically_reduced() {
            return Err(TreeError::InvalidPoint);
        }
        if let (Some(h), Some(c)) = (head.last(), cycle.first()) {
            if h == c.inv() {
                return Err(TreeError::InvalidPoint);
            }
        }
        Ok(Self::canonical(head.letters().to_vec(), cycle.letters().to_vec()))
    }

    fn canonical(mut head: Vec<Letter>, cycle: Vec<Letter>) -> Self {
        let period = (1..=cycle.len())
            .find(|&p| cycle.len().is_multiple_of(p) && (p..cycle.len()).all(|i| cycle[i] == cycle[i - p]))
            .unwrap_or(cycle.len());
        let mut cycle: Vec<Letter> = cycle[..period].to_vec();
        while let (Some(&h), Some(&c)) = (head.last(), cycle.last()) {
            if h != c {
                break;
            }
            head.pop();
            cycle.rotate_right(1);
        }
        Self {
            head: ReducedWord::from_reduced(head).expect("prefix of a reduced word"),
            cycle: ReducedWord::from_reduced(cycle).expect("rotation of a cyclically reduced word"),
        }
    }

    pub fn head(&self) -> &ReducedWord {
        &self.head
    }

    pub fn cycle(&self) -> &ReducedWord {
        &self.cycle
    }

    /// The first `len` letters.
    pub fn prefix(&self, len: usize) -> ReducedWord {
        let letters: Vec<Letter> =
            self.head.letters().iter().chain(self.cycle.letters().iter().cycle()).take(len).copied().collect();
        ReducedWord::from_reduced(letters).expect("ends are reduced")
    }

    /// `g · self`.
    ///
    /// Cancellation between `g` and the point is at most `|g|` letters, so it
    /// suffices to unroll the head plus enough whole periods past `|g|`.
    pub fn act(&self, g: &ReducedWord) -> BoundaryPoint {
        if g.is_identity() {
            return self.clone();
        }
        let periods = g.len() / self.cycle.len() + 1;
        let unrolled = self.prefix(self.head.len() + periods * self.cycle.len());
        let head = g.mul(&unrolled);
        Self::canonical(head.letters().to_vec(), self.cycle.letters().to_vec())
    }
}

/// `g = h c h⁻¹` with `c` cyclically reduced.
pub fn conjugacy_normal_form(g: &ReducedWord) -> (ReducedWord, ReducedWord) {
    let l = g.letters();
    let mut i = 0;
    while 2 * i + 1 < l.len() && l[i] == l[l.len() - 1 - i].inv() {
        i += 1;
    }
    let h = ReducedWord::from_reduced(l[..i].to_vec()).expect("subword");
    let c = ReducedWord::from_reduced(l[i..l.len() - i].to_vec()).expect("subword");
    (h, c)
}

/// The attracting end `g^{+∞} = h c^∞` of `g = h c h⁻¹`.
pub fn attracting_endpoint(g: &ReducedWord) -> Result<BoundaryPoint, TreeError> {
    if g.is_identity() {
        return Err(TreeError::Identity);
    }
    let (h, c) = conjugacy_normal_form(g);
    BoundaryPoint::new(h, c)
}

/// Boundary fixed set of a group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixedSet {
    /// The identity fixes everything.
    Everything,
    /// `{g^{+∞}, g^{-∞}}`.
    Pair { attracting: BoundaryPoint, repelling: BoundaryPoint },
}

pub fn fixed_endpoints(g: &ReducedWord) -> FixedSet {
    match (attracting_endpoint(g), attracting_endpoint(&g.inverse())) {
        (Ok(attracting), Ok(repelling)) => FixedSet::Pair { attracting, repelling },
        _ => FixedSet::Everything,
    }
}

/// A point of `Cyl(w)` moved by `g`, chosen among `w·a^∞` in letter order.
/// At least three such points exist for rank ≥ 2 and a nontrivial `g` fixes
/// at most two ends, so this is `None` only for the identity.
pub fn moved_point_in(g: &ReducedWord, w: &ReducedWord, rank: u8) -> Option<BoundaryPoint> {
    if g.is_identity() {
        return None;
    }
    Letter::alphabet(rank)
        .filter(|&a| w.last() != Some(a.inv()))
        .map(|a| BoundaryPoint::new(w.clone(), ReducedWord::letter(a)).expect("w·a is reduced"))
        .find(|p| &p.act(g) != p)
}

impl fmt::Display for BoundaryPoint {
    /// `head(cycle)^inf`, head omitted when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.head.is_identity() {
            write!(f, "{}", self.head)?;
        }
        write!(f, "({})^inf", self.cycle)
    }
}

impl fmt::Debug for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ReducedWord {
        s.parse().unwrap()
    }

    fn pt(h: &str, c: &str) -> BoundaryPoint {
        BoundaryPoint::new(w(h), w(c)).unwrap()
    }

    #[test]
    fn canonical_points() {
        assert_eq!(pt("x", "x"), pt("", "x"));
        assert_eq!(pt("", "xyxy"), pt("", "xy"));
        assert_eq!(pt("y", "xy"), pt("", "yx"));
        assert!(BoundaryPoint::new(w("X"), w("x")).is_err());
        assert!(BoundaryPoint::new(w(""), w("xyX")).is_err());
    }

    #[test]
    fn endpoints() {
        assert_eq!(attracting_endpoint(&w("x")).unwrap(), pt("", "x"));
        let p = attracting_endpoint(&w("yxY")).unwrap();
        assert_eq!((p.head(), p.cycle()), (&w("y"), &w("x")));
        assert_eq!(attracting_endpoint(&w("xy")).unwrap(), pt("", "xy"));
        assert_eq!(attracting_endpoint(&ReducedWord::identity()), Err(TreeError::Identity));
        assert_eq!(fixed_endpoints(&w("x")), FixedSet::Pair { attracting: pt("", "x"), repelling: pt("", "X") });
        assert_eq!(fixed_endpoints(&ReducedWord::identity()), FixedSet::Everything);
    }

    #[test]
    fn conjugate_endpoints() {
        let FixedSet::Pair { attracting, repelling } = fixed_endpoints(&w("xyX")) else { panic!() };
        assert_eq!(attracting, pt("", "y").act(&w("x")));
        assert_eq!(repelling, pt("", "Y").act(&w("x")));
    }

    #[test]
    fn endpoint_is_fixed() {
        for g in ["x", "xy", "yxY", "xxYXy", "XyyxY"] {
            let g = w(g);
            let p = attracting_endpoint(&g).unwrap();
            let q = p.act(&g);
            assert_eq!(q, p);
            assert_eq!(q.prefix(64), p.prefix(64));
        }
    }

    #[test]
    fn action_matches_word_multiplication() {
        let p = pt("yX", "y");
        let g = w("xY");
        assert_eq!(p.act(&g), pt("", "y"));
        let h = w("Xyx");
        assert_eq!(p.act(&h).prefix(10), h.mul(&p.prefix(20)).truncated(10));
    }

    #[test]
    fn moved_points() {
        let g = w("x");
        let p = moved_point_in(&g, &w("xx"), 2).unwrap();
        assert!(w("xx").is_prefix_of(&p.prefix(2)));
        assert_ne!(p.act(&g), p);
        assert_eq!(moved_point_in(&ReducedWord::identity(), &w("x"), 2), None);
    }
}
