//! Exact developing map of the complete hyperbolic structure given by the
//! triangulation's shear parameters.
//!
//! Ideal points of the upper half-plane are kept as projective integer
//! vectors. Every lifted geodesic arc joins two cusps, and its position on a
//! crossed edge is recorded as the squared height `H` at which it meets the
//! edge once the edge is normalised to the imaginary axis. Sorting strands by
//! `H` gives a simultaneous geodesic (hence minimal) position for any set of
//! arcs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arc::ArcClass;
use crate::triangulation::{next, IdealTriangulation, Side};

/// An ideal point `p / q` of the upper half-plane; `q = 0` is infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPoint {
    p: BigInt,
    q: BigInt,
}

impl IdealPoint {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        let (p, q) = (p.into(), q.into());
        assert!(!(p.is_zero() && q.is_zero()), "degenerate projective point");
        let g = p.gcd(&q);
        IdealPoint { p: p / &g, q: q / &g }
    }

    pub fn infinity() -> Self {
        IdealPoint::new(1, 0)
    }

    fn combine(a: &BigInt, u: &IdealPoint, b: &BigInt, w: &IdealPoint) -> IdealPoint {
        IdealPoint::new(a * &u.p + b * &w.p, a * &u.q + b * &w.q)
    }
}

fn det(a: &IdealPoint, b: &IdealPoint) -> BigInt {
    &a.p * &b.q - &a.q * &b.p
}

/// Third vertex of the triangle across side `(u, z)` of the triangle
/// `(u, z, w)` for shear `lambda = num / den`: the image of `-lambda` under
/// the Möbius map sending `(inf, 0, 1)` to `(u, z, w)`.
fn reflect(u: &IdealPoint, z: &IdealPoint, w: &IdealPoint, num: i64, den: i64) -> IdealPoint {
    let a = -BigInt::from(num) * det(w, z);
    let b = BigInt::from(den) * det(u, w);
    IdealPoint::combine(&a, u, &b, z)
}

/// Lift of an arc: the vertex positions of every triangle on its path and
/// the two cusps it joins.
#[derive(Clone, Debug)]
pub struct DevelopedArc {
    pub triangles: Vec<[IdealPoint; 3]>,
    pub start: IdealPoint,
    pub end: IdealPoint,
}

/// Develops the triangle path of `a` starting from the standard position
/// `(0, 1, inf)` of its first triangle.
pub fn develop(t: &IdealTriangulation, a: &ArcClass) -> DevelopedArc {
    let mut cur = a.start().triangle;
    let mut pos = [IdealPoint::new(0, 1), IdealPoint::new(1, 1), IdealPoint::infinity()];
    let start = pos[a.start().corner].clone();
    let mut triangles = vec![pos.clone()];
    for &e in a.crossings() {
        let s = t.side_on_edge(cur, e).expect("itinerary is consistent");
        let nb = t.neighbor(Side::new(cur, s)).expect("crossed edges are glued");
        let (num, den) = t.shear(e);
        let apex = reflect(&pos[s], &pos[next(s)], &pos[next(next(s))], num, den);
        let j = nb.side;
        let mut np = pos.clone();
        np[next(j)] = pos[s].clone();
        np[j] = pos[next(s)].clone();
        np[next(next(j))] = apex;
        pos = np;
        cur = nb.triangle;
        triangles.push(pos.clone());
    }
    let end = pos[a.end().corner].clone();
    DevelopedArc { triangles, start, end }
}

/// Squared crossing height of the geodesic `(a, b)` on the side of the
/// triangle `tri` from corner `s` to corner `s + 1`, in the frame sending
/// those corners to `0` and `inf` and the third corner to `-1`.
pub fn crossing_height(tri: &[IdealPoint; 3], s: usize, a: &IdealPoint, b: &IdealPoint) -> BigRational {
    let u = &tri[s];
    let w = &tri[next(s)];
    let v = &tri[next(next(s))];
    // f(z) = -det(v,w) det(z,u) / (det(v,u) det(z,w)), H = -f(a) f(b)
    let dvw = det(v, w);
    let dvu = det(v, u);
    let num = -(&dvw * &dvw) * det(a, u) * det(b, u);
    let den = (&dvu * &dvu) * det(a, w) * det(b, w);
    assert!(!den.is_zero(), "geodesic ends at an endpoint of a crossed edge");
    let h = BigRational::new(num, den);
    assert!(h.is_positive(), "geodesic does not cross the edge");
    h
}

/// Height of each strand of `a` on the reference side of the edge it
/// crosses, in crossing order.
pub fn strand_heights(t: &IdealTriangulation, a: &ArcClass) -> Vec<BigRational> {
    let dev = develop(t, a);
    let mut cur = a.start().triangle;
    let mut out = Vec::with_capacity(a.len());
    for (k, &e) in a.crossings().iter().enumerate() {
        let s = t.side_on_edge(cur, e).expect("itinerary is consistent");
        let nb = t.neighbor(Side::new(cur, s)).expect("crossed edges are glued");
        let reference = t.edges()[e].first;
        let h = if reference == Side::new(cur, s) {
            crossing_height(&dev.triangles[k], s, &dev.start, &dev.end)
        } else {
            debug_assert_eq!(reference, nb);
            crossing_height(&dev.triangles[k + 1], nb.side, &dev.start, &dev.end)
        };
        out.push(h);
        cur = nb.triangle;
    }
    out
}

/// `true` when the two points coincide.
pub fn same_point(a: &IdealPoint, b: &IdealPoint) -> bool {
    det(a, b).is_zero()
}

/// Value of a finite ideal point as a rational.
pub fn finite_value(a: &IdealPoint) -> Option<BigRational> {
    (!a.q.is_zero()).then(|| BigRational::new(a.p.clone(), a.q.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc::{enumerate_arc_classes, tighten};
    use crate::triangulation::{standard_fixture, Corner};

    #[test]
    fn reflection_is_symmetric() {
        // crossing back over the same edge returns the original apex
        let u = IdealPoint::new(3, 2);
        let z = IdealPoint::new(-1, 5);
        let w = IdealPoint::new(7, 1);
        let apex = reflect(&u, &z, &w, 5, 6);
        let back = reflect(&z, &u, &apex, 5, 6);
        assert!(same_point(&back, &w));
    }

    #[test]
    fn standard_reflection() {
        let apex = reflect(&IdealPoint::infinity(), &IdealPoint::new(0, 1), &IdealPoint::new(1, 1), 3, 5);
        assert_eq!(finite_value(&apex), Some(BigRational::new((-3).into(), 5.into())));
    }

    #[test]
    fn geodesic_through_standard_edge() {
        // from -4 to 1 meets the imaginary axis at height 2
        let tri = [IdealPoint::new(0, 1), IdealPoint::infinity(), IdealPoint::new(-1, 1)];
        let h = crossing_height(&tri, 0, &IdealPoint::new(-4, 1), &IdealPoint::new(1, 1));
        assert_eq!(h, BigRational::from_integer(4.into()));
    }

    #[test]
    fn heights_are_positive_on_pool() {
        let t = standard_fixture("torus-2-marked").unwrap();
        for a in enumerate_arc_classes(&t, 8) {
            let hs = strand_heights(&t, &a);
            assert_eq!(hs.len(), a.len());
        }
    }

    #[test]
    fn reversal_gives_the_same_heights() {
        let t = standard_fixture("torus-2-marked").unwrap();
        let a = tighten(&t, Corner::new(1, 2), &[1], Corner::new(3, 2)).unwrap().arc().unwrap();
        let fwd = strand_heights(&t, &a);
        let mut back = strand_heights(&t, &a.reversed());
        back.reverse();
        assert_eq!(fwd, back);
    }
}
