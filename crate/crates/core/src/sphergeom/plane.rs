use alloc::vec::Vec;
use core::fmt;

use super::SpherError;

/// Largest supported order. Keeps point lists and exhaustive checks small.
pub const MAX_ORDER: u32 = 101;

/// Homogeneous coordinates over `GF(q)`, scaled so the first nonzero entry is 1.
pub type Triple = [u32; 3];

/// A chamber of the flag complex: point index and line index, incident.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flag {
    pub point: usize,
    pub line: usize,
}

/// The projective plane `PG(2, q)` for prime `q`.
///
/// Points and lines are both the canonical triples in lexicographic order;
/// point `p` lies on line `l` when their dot product vanishes mod `q`.
/// Flags are ordered by `(point, line)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plane {
    q: u32,
    triples: Vec<Triple>,
    lines_through: Vec<Vec<usize>>,
    points_on: Vec<Vec<usize>>,
    flags: Vec<Flag>,
}

pub fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Multiplicative inverse mod a prime.
fn inv_mod(a: u32, q: u32) -> u32 {
    pow_mod(u64::from(a), u64::from(q - 2), u64::from(q)) as u32
}

fn normalize(v: [u64; 3], q: u32) -> Option<Triple> {
    let qq = u64::from(q);
    let v = v.map(|x| (x % qq) as u32);
    let lead = *v.iter().find(|&&x| x != 0)?;
    let s = u64::from(inv_mod(lead, q));
    Some(v.map(|x| (u64::from(x) * s % qq) as u32))
}

impl Plane {
    pub fn new(q: u32) -> Result<Self, SpherError> {
        if !is_prime(q) || q > MAX_ORDER {
            return Err(SpherError::UnsupportedOrder(q));
        }
        let mut triples = Vec::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    let t = [a, b, c];
                    if normalize(t.map(u64::from), q) == Some(t) {
                        triples.push(t);
                    }
                }
            }
        }
        let n = triples.len();
        let mut lines_through = alloc::vec![Vec::new(); n];
        let mut points_on = alloc::vec![Vec::new(); n];
        let mut flags = Vec::new();
        for (p, tp) in triples.iter().enumerate() {
            for (l, tl) in triples.iter().enumerate() {
                if dot(tp, tl, q) == 0 {
                    lines_through[p].push(l);
                    points_on[l].push(p);
                    flags.push(Flag { point: p, line: l });
                }
            }
        }
        Ok(Self { q, triples, lines_through, points_on, flags })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `q² + q + 1`, the number of points and of lines.
    pub fn size(&self) -> usize {
        self.triples.len()
    }

    pub fn point_coords(&self, p: usize) -> Triple {
        self.triples[p]
    }

    pub fn line_coords(&self, l: usize) -> Triple {
        self.triples[l]
    }

    /// Index of the point (or line) with the given coordinates, after scaling.
    pub fn index_of(&self, coords: [u32; 3]) -> Option<usize> {
        let t = normalize(coords.map(u64::from), self.q)?;
        self.triples.binary_search(&t).ok()
    }

    pub fn incident(&self, p: usize, l: usize) -> bool {
        dot(&self.triples[p], &self.triples[l], self.q) == 0
    }

    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.lines_through[p]
    }

    pub fn points_on(&self, l: usize) -> &[usize] {
        &self.points_on[l]
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn flag(&self, point: usize, line: usize) -> Result<Flag, SpherError> {
        if point >= self.size() || line >= self.size() {
            return Err(SpherError::IndexOutOfRange(point.max(line)));
        }
        if !self.incident(point, line) {
            return Err(SpherError::NotAFlag { point, line });
        }
        Ok(Flag { point, line })
    }

    /// Position of a flag in [`Plane::flags`].
    pub fn flag_index(&self, f: Flag) -> Option<usize> {
        self.flags.binary_search(&f).ok()
    }

    fn cross(&self, a: usize, b: usize) -> Option<usize> {
        let (u, v) = (self.triples[a].map(u64::from), self.triples[b].map(u64::from));
        let qq = u64::from(self.q);
        let c = [
            u[1] * v[2] + qq * qq - u[2] * v[1] % qq,
            u[2] * v[0] + qq * qq - u[0] * v[2] % qq,
            u[0] * v[1] + qq * qq - u[1] * v[0] % qq,
        ];
        let t = normalize(c, self.q)?;
        self.triples.binary_search(&t).ok()
    }

    /// The line through two distinct points.
    pub fn join(&self, p1: usize, p2: usize) -> Option<usize> {
        if p1 == p2 {
            return None;
        }
        self.cross(p1, p2)
    }

    /// The point on two distinct lines.
    pub fn meet(&self, l1: usize, l2: usize) -> Option<usize> {
        if l1 == l2 {
            return None;
        }
        self.cross(l1, l2)
    }

    pub fn collinear(&self, p1: usize, p2: usize, p3: usize) -> bool {
        match self.join(p1, p2) {
            Some(l) => self.incident(p3, l),
            None => true,
        }
    }
}

fn dot(a: &Triple, b: &Triple, q: u32) -> u64 {
    a.iter().zip(b).map(|(&x, &y)| u64::from(x) * u64::from(y)).sum::<u64>() % u64::from(q)
}

/// Canonical object for `q`: see [`Plane::new`].
pub fn build_plane(q: u32) -> Result<Plane, SpherError> {
    Plane::new(q)
}

/// Writes a triple as `(a:b:c)`.
pub struct Coords(pub Triple);

impl fmt::Display for Coords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.0[0], self.0[1], self.0[2])
    }
}
