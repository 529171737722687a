use super::plane::{Flag, Plane};
use super::SpherError;

impl Plane {
    /// Opposite chambers: `p₁ ∉ l₂` and `p₂ ∉ l₁`.
    pub fn opposite(&self, c1: Flag, c2: Flag) -> bool {
        !self.incident(c1.point, c2.line) && !self.incident(c2.point, c1.line)
    }

    /// All chambers opposite `c`, in flag order. There are `q³` of them.
    pub fn opposition_set(&self, c: Flag) -> alloc::vec::Vec<Flag> {
        self.flags().iter().copied().filter(|&d| self.opposite(c, d)).collect()
    }
}

/// The hexagon of flags on a triangle.
///
/// `points` are the vertices, `sides[i]` joins `points[i]` and
/// `points[(i + 1) % 3]`, and `chambers` runs around the hexagon so that
/// `chambers[i]` and `chambers[i + 3]` are opposite.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Apartment {
    pub points: [usize; 3],
    pub sides: [usize; 3],
    pub chambers: [Flag; 6],
}

impl Apartment {
    pub fn contains(&self, c: Flag) -> bool {
        self.chambers.contains(&c)
    }
}

/// The apartment on three non-collinear points.
pub fn apartment_from_triangle(plane: &Plane, p1: usize, p2: usize, p3: usize) -> Result<Apartment, SpherError> {
    let n = plane.size();
    if let Some(&bad) = [p1, p2, p3].iter().find(|&&p| p >= n) {
        return Err(SpherError::IndexOutOfRange(bad));
    }
    if plane.collinear(p1, p2, p3) || p1 == p3 || p2 == p3 {
        return Err(SpherError::DegenerateTriangle);
    }
    let points = [p1, p2, p3];
    let side = |i: usize| plane.join(points[i], points[(i + 1) % 3]).expect("distinct points");
    let sides = [side(0), side(1), side(2)];
    let chambers = [
        Flag { point: p1, line: sides[0] },
        Flag { point: p2, line: sides[0] },
        Flag { point: p2, line: sides[1] },
        Flag { point: p3, line: sides[1] },
        Flag { point: p3, line: sides[2] },
        Flag { point: p1, line: sides[2] },
    ];
    Ok(Apartment { points, sides, chambers })
}

/// An apartment containing both chambers.
///
/// Case analysis on how the flags meet, completing each partial triangle
/// with the least-indexed admissible point; vertices are then sorted.
pub fn apartment_through(plane: &Plane, c1: Flag, c2: Flag) -> Apartment {
    let least_on =
        |l: usize, avoid: usize| *plane.points_on(l).iter().find(|&&p| p != avoid).expect("q + 1 ≥ 3 points");
    let least_off = |l: usize| (0..plane.size()).find(|&p| !plane.incident(p, l)).expect("a point off every line");
    let (p1, l1, p2, l2) = (c1.point, c1.line, c2.point, c2.line);
    let mut tri = if c1 == c2 {
        [p1, least_on(l1, p1), least_off(l1)]
    } else if p1 == p2 {
        [p1, least_on(l1, p1), least_on(l2, p1)]
    } else if l1 == l2 {
        [p1, p2, least_off(l1)]
    } else if plane.incident(p2, l1) {
        [p1, p2, least_on(l2, p2)]
    } else if plane.incident(p1, l2) {
        [p1, p2, least_on(l1, p1)]
    } else {
        [p1, plane.meet(l1, l2).expect("distinct lines"), p2]
    };
    tri.sort_unstable();
    let a = apartment_from_triangle(plane, tri[0], tri[1], tri[2]).expect("completion is a triangle");
    debug_assert!(a.contains(c1) && a.contains(c2));
    a
}

/// A chamber of [`apartment_through`]`(c1, c2)` opposite neither input.
///
/// Each input has exactly one opposite among the six chambers, so at least
/// four candidates remain; the first in hexagon order is returned.
pub fn non_opposite_witness(plane: &Plane, c1: Flag, c2: Flag) -> Flag {
    let a = apartment_through(plane, c1, c2);
    a.chambers
        .iter()
        .copied()
        .find(|&w| !plane.opposite(w, c1) && !plane.opposite(w, c2))
        .expect("at most two of six chambers are excluded")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphergeom::plane::build_plane;
    use alloc::vec::Vec;

    fn all_triangles(p: &Plane) -> Vec<Apartment> {
        let n = p.size();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if let Ok(ap) = apartment_from_triangle(p, a, b, c) {
                        out.push(ap);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn opposition_examples() {
        let p = build_plane(2).unwrap();
        let e1 = p.index_of([1, 0, 0]).unwrap();
        let e3 = p.index_of([0, 0, 1]).unwrap();
        let c1 = p.flag(e1, p.index_of([0, 0, 1]).unwrap()).unwrap();
        let c2 = p.flag(e3, p.index_of([1, 0, 0]).unwrap()).unwrap();
        assert!(p.opposite(c1, c2));
        for q in [2, 3] {
            let p = build_plane(q).unwrap();
            for &c in p.flags() {
                assert!(!p.opposite(c, c));
                let o = p.opposition_set(c);
                assert_eq!(o.len() as u32, q * q * q);
                assert!(o.iter().all(|&d| p.opposite(d, c)));
            }
        }
    }

    #[test]
    fn standard_triangle() {
        let p = build_plane(2).unwrap();
        let [e1, e2, e3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|t| p.index_of(t).unwrap());
        let a = apartment_from_triangle(&p, e1, e2, e3).unwrap();
        // z = 0, x = 0, y = 0
        assert_eq!(a.sides, [e3, e1, e2]);
        for (i, &c) in a.chambers.iter().enumerate() {
            assert!(p.incident(c.point, c.line));
            let opp: Vec<usize> = (0..6).filter(|&j| p.opposite(c, a.chambers[j])).collect();
            assert_eq!(opp, [(i + 3) % 6]);
        }
        let e12 = p.index_of([1, 1, 0]).unwrap();
        assert_eq!(apartment_from_triangle(&p, e1, e2, e12), Err(SpherError::DegenerateTriangle));
    }

    #[test]
    fn twenty_eight_triangles() {
        let p = build_plane(2).unwrap();
        assert_eq!(all_triangles(&p).len(), 28);
    }

    #[test]
    fn apartments_through_every_pair() {
        let p = build_plane(2).unwrap();
        let triangles = all_triangles(&p);
        for &c1 in p.flags() {
            for &c2 in p.flags() {
                let a = apartment_through(&p, c1, c2);
                assert!(a.contains(c1) && a.contains(c2));
                assert!(triangles.contains(&a));
            }
        }
    }

    #[test]
    fn witnesses_exhaustive_q2() {
        let p = build_plane(2).unwrap();
        for &c1 in p.flags() {
            for &c2 in p.flags() {
                let w = non_opposite_witness(&p, c1, c2);
                assert!(apartment_through(&p, c1, c2).contains(w));
                assert!(!p.opposite(w, c1) && !p.opposite(w, c2));
            }
        }
    }
}
