use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use super::TreeError;

/// Letter names, positional: generator `i` prints as `NAMES[i]`, its inverse
/// in upper case.
pub const NAMES: [char; 8] = ['x', 'y', 'z', 'w', 'v', 'u', 't', 's'];

/// Largest supported rank.
pub const MAX_RANK: u8 = NAMES.len() as u8;

/// `x_i` or `x_i⁻¹`. Orders all generators before all inverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    inverse: bool,
    generator: u8,
}

impl Letter {
    pub fn new(generator: u8, inverse: bool) -> Self {
        debug_assert!(generator < MAX_RANK);
        Self { inverse, generator }
    }

    pub fn generator(self) -> u8 {
        self.generator
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn inv(self) -> Self {
        Self { inverse: !self.inverse, generator: self.generator }
    }

    /// All `2·rank` letters in alphabet order.
    pub fn alphabet(rank: u8) -> impl Iterator<Item = Letter> {
        [false, true].into_iter().flat_map(move |inverse| (0..rank).map(move |generator| Letter { inverse, generator }))
    }

    pub fn to_char(self) -> char {
        let c = NAMES[self.generator as usize];
        if self.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        let lower = c.to_ascii_lowercase();
        let generator = NAMES.iter().position(|&n| n == lower)? as u8;
        Some(Self { inverse: c.is_ascii_uppercase(), generator })
    }
}

/// A freely reduced word: no letter is followed by its inverse.
///
/// Ordered shortlex (length first, then letter order).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ReducedWord(Vec<Letter>);

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> ReducedWord {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    ReducedWord(out)
}

impl ReducedWord {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Self(alloc::vec![l])
    }

    /// Wraps letters already known to be reduced.
    pub fn from_reduced(letters: Vec<Letter>) -> Result<Self, TreeError> {
        if letters.windows(2).any(|w| w[0] == w[1].inv()) {
            return Err(TreeError::NotReduced);
        }
        Ok(Self(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Same as [`Self::is_identity`].
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Highest generator index used, plus one.
    pub fn rank_hint(&self) -> u8 {
        self.0.iter().map(|l| l.generator + 1).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn mul(&self, other: &ReducedWord) -> ReducedWord {
        free_reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Appends a letter that does not cancel.
    pub fn extended(&self, l: Letter) -> Option<ReducedWord> {
        if self.last() == Some(l.inv()) {
            return None;
        }
        let mut v = self.0.clone();
        v.push(l);
        Some(Self(v))
    }

    pub fn parent(&self) -> Option<ReducedWord> {
        if self.0.is_empty() {
            None
        } else {
            Some(Self(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn truncated(&self, len: usize) -> ReducedWord {
        Self(self.0[..len.min(self.0.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &ReducedWord) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Same letters in cyclic order, no cancellation between last and first.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => self.0.len() == 1 || f != l.inv(),
            _ => true,
        }
    }

    /// Letters `a` for which `self·a` is reduced, in alphabet order.
    pub fn children(&self, rank: u8) -> impl Iterator<Item = ReducedWord> + '_ {
        Letter::alphabet(rank).filter_map(move |l| self.extended(l))
    }

    /// Number of reduced one-letter extensions.
    pub fn child_count(&self, rank: u8) -> usize {
        if self.0.is_empty() {
            2 * rank as usize
        } else {
            2 * rank as usize - 1
        }
    }

    pub fn pow(&self, m: u32) -> ReducedWord {
        (0..m).fold(Self::identity(), |acc, _| acc.mul(self))
    }
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ReducedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// All reduced words of length exactly `len`, shortlex.
pub fn sphere(rank: u8, len: usize) -> Vec<ReducedWord> {
    let mut layer = alloc::vec![ReducedWord::identity()];
    for _ in 0..len {
        layer = layer.iter().flat_map(|w| w.children(rank).collect::<Vec<_>>()).collect();
    }
    layer
}

/// All reduced words of length at most `radius`, shortlex.
pub fn ball(rank: u8, radius: usize) -> Vec<ReducedWord> {
    (0..=radius).flat_map(|l| sphere(rank, l)).collect()
}

impl fmt::Display for ReducedWord {
    /// Letters concatenated, `e` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for ReducedWord {
    type Err = TreeError;

    /// Parses and freely reduces; `e` or the empty string is the identity.
    fn from_str(s: &str) -> Result<Self, TreeError> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Self::identity());
        }
        let letters = s
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| TreeError::Parse(String::from(s))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(free_reduce(letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ReducedWord {
        s.parse().unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(w("xX"), ReducedWord::identity());
        assert_eq!(w("xyYx"), w("xx"));
        assert_eq!(w("xyYX"), ReducedWord::identity());
        assert_eq!(w("xy").mul(&w("YX")), ReducedWord::identity());
        assert_eq!(w("xy").inverse(), w("YX"));
    }

    #[test]
    fn sphere_sizes() {
        assert_eq!(sphere(2, 0).len(), 1);
        assert_eq!(sphere(2, 1).len(), 4);
        assert_eq!(sphere(2, 3).len(), 36);
        assert_eq!(sphere(3, 2).len(), 30);
        assert_eq!(ball(2, 2).len(), 17);
        let b = ball(2, 3);
        assert!(b.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn letter_order_and_names() {
        let alpha: String = Letter::alphabet(2).map(Letter::to_char).collect();
        assert_eq!(alpha, "xyXY");
        assert!("xq".parse::<ReducedWord>().is_err());
        assert_eq!(alloc::format!("{}", ReducedWord::identity()), "e");
    }

    #[test]
    fn cyclic_reduction() {
        assert!(w("xy").is_cyclically_reduced());
        assert!(!w("xyX").is_cyclically_reduced());
        assert!(w("x").is_cyclically_reduced());
    }
}
