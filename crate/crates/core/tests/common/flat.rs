//! Straight segments on the flat square torus, used as an independent
//! oracle. Straight arcs between lattice points have no bigons, so they sit
//! in minimal position and Euclidean crossing counts are intersection
//! numbers. Coordinates are doubled so that square centres are integral.

use arcforge_core::arc::{tighten, ArcClass};
use arcforge_core::triangulation::{Corner, IdealTriangulation};
use num_rational::Ratio;

type Q = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// one marked point at the lattice, square split by the main diagonal
    OnePoint,
    /// lattice points plus square centres, square split into four
    TwoPoints,
}

/// A straight segment `p + t d`, `0 <= t <= 1`, in doubled coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub p: (i64, i64),
    pub d: (i64, i64),
}

impl Model {
    fn functionals(self) -> &'static [(i64, i64)] {
        match self {
            Model::OnePoint => &[(1, 0), (0, 1), (-1, 1)],
            Model::TwoPoints => &[(1, 0), (0, 1), (-1, 1), (1, 1)],
        }
    }

    /// Edge index of a point lying on the line family `k`.
    fn edge_on(self, k: usize, y: Q) -> usize {
        match (self, k) {
            (_, 0) => 1,
            (_, 1) => 0,
            (Model::OnePoint, _) => 2,
            (Model::TwoPoints, _) => {
                let w = y - y.floor();
                let low = w < Q::new(1, 2);
                match (k, low) {
                    (2, true) => 2,
                    (2, false) => 4,
                    (_, true) => 3,
                    (_, false) => 5,
                }
            }
        }
    }

    /// Triangle containing a point in the open interior of a face, and the
    /// corner sitting at the integral doubled point `v`.
    fn corner_at(self, x: Q, y: Q, v: (i64, i64)) -> Corner {
        let (i, j) = (x.floor(), y.floor());
        let (u, w) = (x - i, y - j);
        let half = Q::new(1, 2);
        let one = Q::from_integer(1);
        let (tri, corners): (usize, Vec<(Q, Q)>) = match self {
            Model::OnePoint => {
                if w < u {
                    (0, vec![(Q::from(0), Q::from(0)), (one, Q::from(0)), (one, one)])
                } else {
                    (1, vec![(Q::from(0), Q::from(0)), (one, one), (Q::from(0), one)])
                }
            }
            Model::TwoPoints => {
                let c = (half, half);
                let z = Q::from(0);
                if w < u && w < one - u {
                    (0, vec![(z, z), (one, z), c])
                } else if w < u {
                    (1, vec![(one, z), (one, one), c])
                } else if w > one - u {
                    (2, vec![(one, one), (z, one), c])
                } else {
                    (3, vec![(z, one), (z, z), c])
                }
            }
        };
        let vx = Q::new(v.0, 2) - i;
        let vy = Q::new(v.1, 2) - j;
        let corner = corners
            .iter()
            .position(|&(cx, cy)| cx == vx && cy == vy)
            .expect("segment leaves from a corner of its first face");
        Corner::new(tri, corner)
    }

    fn leaving(self, v: (i64, i64), d: (i64, i64)) -> Corner {
        let eps = Q::new(1, 4096);
        let x = Q::new(v.0, 2) + eps * Q::new(d.0, 2);
        let y = Q::new(v.1, 2) + eps * Q::new(d.1, 2);
        self.corner_at(x, y, v)
    }

    pub fn is_vertex(self, p: (i64, i64)) -> bool {
        let even = p.0 % 2 == 0 && p.1 % 2 == 0;
        match self {
            Model::OnePoint => even,
            Model::TwoPoints => even || (p.0 % 2 != 0 && p.1 % 2 != 0),
        }
    }

    /// Segments from `p` along `d` that meet no vertex in their interior.
    pub fn is_primitive(self, s: Segment) -> bool {
        if s.d == (0, 0) || !self.is_vertex(s.p) || !self.is_vertex((s.p.0 + s.d.0, s.p.1 + s.d.1)) {
            return false;
        }
        let n = s.d.0.abs().max(s.d.1.abs());
        (1..n).all(|k| {
            // interior points p + (k/n) d that are integral
            let (a, b) = (s.d.0 * k, s.d.1 * k);
            !(a % n == 0 && b % n == 0 && self.is_vertex((s.p.0 + a / n, s.p.1 + b / n)))
        })
    }

    /// Crossed edges of a segment together with its end corners.
    pub fn itinerary(self, s: Segment) -> (Corner, Vec<usize>, Corner) {
        let mut hits: Vec<(Q, usize)> = Vec::new();
        for (k, &(a, b)) in self.functionals().iter().enumerate() {
            let f0 = a * s.p.0 + b * s.p.1;
            let fd = a * s.d.0 + b * s.d.1;
            if fd == 0 {
                continue;
            }
            let (lo, hi) = if fd > 0 { (f0, f0 + fd) } else { (f0 + fd, f0) };
            // lines sit at even values of the doubled functional
            let first = lo.div_euclid(2) * 2;
            let mut level = first;
            while level <= hi {
                if level > lo && level < hi {
                    hits.push((Q::new(level - f0, fd), k));
                }
                level += 2;
            }
        }
        hits.sort();
        for w in hits.windows(2) {
            assert!(w[0].0 != w[1].0, "segment passes through a vertex");
        }
        let crossings = hits
            .iter()
            .map(|&(t, k)| {
                let y = (Q::from(s.p.1) + t * Q::from(s.d.1)) / 2;
                self.edge_on(k, y)
            })
            .collect();
        let end = (s.p.0 + s.d.0, s.p.1 + s.d.1);
        (self.leaving(s.p, s.d), crossings, self.leaving(end, (-s.d.0, -s.d.1)))
    }

    /// Edge index if the segment runs along a single edge.
    pub fn edge_of(self, s: Segment) -> Option<usize> {
        for (k, &(a, b)) in self.functionals().iter().enumerate() {
            let f0 = a * s.p.0 + b * s.p.1;
            if a * s.d.0 + b * s.d.1 == 0 && f0.rem_euclid(2) == 0 {
                let y = (Q::from(s.p.1) + Q::new(s.d.1, 2)) / 2;
                return Some(self.edge_on(k, y));
            }
        }
        None
    }

    /// The arc class of a primitive segment. Asserts that the straight
    /// itinerary is already tight.
    pub fn arc(self, t: &IdealTriangulation, s: Segment) -> ArcClass {
        if let Some(e) = self.edge_of(s) {
            return ArcClass::from_edge(t, e);
        }
        let (a, crossings, b) = self.itinerary(s);
        let arc = tighten(t, a, &crossings, b).unwrap().arc().expect("essential");
        assert_eq!(arc.len(), crossings.len(), "straight itinerary was not tight");
        arc
    }

    /// All primitive segments starting at a marked point of the fundamental
    /// domain with doubled direction in `[-r, r]^2`.
    pub fn segments(self, r: i64) -> Vec<Segment> {
        let starts: &[(i64, i64)] = match self {
            Model::OnePoint => &[(0, 0)],
            Model::TwoPoints => &[(0, 0), (1, 1)],
        };
        let mut out = Vec::new();
        for &p in starts {
            for dx in -r..=r {
                for dy in -r..=r {
                    let s = Segment { p, d: (dx, dy) };
                    if self.is_primitive(s) {
                        out.push(s);
                    }
                }
            }
        }
        out
    }
}

/// Interior crossings of two straight segments on `R^2 / Z^2`.
pub fn euclidean_crossings(a: Segment, b: Segment) -> usize {
    let det = a.d.0 * (-b.d.1) - (-b.d.0) * a.d.1;
    if det == 0 {
        return 0;
    }
    let reach = (a.d.0.abs() + a.d.1.abs() + b.d.0.abs() + b.d.1.abs()) / 2 + 2;
    let mut n = 0;
    for nx in -reach..=reach {
        for ny in -reach..=reach {
            // t a.d - u b.d = 2 n + b.p - a.p
            let rx = 2 * nx + b.p.0 - a.p.0;
            let ry = 2 * ny + b.p.1 - a.p.1;
            let t = Q::new(rx * (-b.d.1) - (-b.d.0) * ry, det);
            let u = Q::new(a.d.0 * ry - a.d.1 * rx, det);
            let zero = Q::from(0);
            let one = Q::from(1);
            if t > zero && t < one && u > zero && u < one {
                n += 1;
            }
        }
    }
    n
}
