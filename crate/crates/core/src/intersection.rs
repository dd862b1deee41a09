//! Minimal-position intersection numbers of arcs.
//!
//! Tight itineraries are the combinatorial shadow of geodesics in the
//! universal cover, where two lifted geodesics cross at most once and cross
//! exactly when their endpoints interleave. Two lifts whose triangle paths
//! overlap share a maximal run of triangles; whether they cross is read off
//! the ports (corners or sides) through which each lift enters and leaves
//! that run. Pairs of lifts are counted modulo deck transformations by
//! anchoring each run at its first triangle along the first arc.

use crate::arc::ArcClass;
use crate::triangulation::IdealTriangulation;

/// Ports of a triangle sit on a six-cycle in counterclockwise order:
/// corner `c` at `2c`, side `s` at `2s + 1`.
#[inline]
pub(crate) fn corner_port(c: usize) -> u8 {
    (2 * c) as u8
}

#[inline]
pub(crate) fn side_port(s: usize) -> u8 {
    (2 * s + 1) as u8
}

#[inline]
pub(crate) fn is_side(p: u8) -> bool {
    p % 2 == 1
}

/// Triangle path of an arc with the port used to enter and leave each
/// triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcPath {
    pub(crate) tris: Vec<u32>,
    pub(crate) entry: Vec<u8>,
    pub(crate) exit: Vec<u8>,
}

impl ArcPath {
    pub fn new(t: &IdealTriangulation, a: &ArcClass) -> Self {
        let n = a.len();
        let mut tris = Vec::with_capacity(n + 1);
        let mut entry = Vec::with_capacity(n + 1);
        let mut exit = Vec::with_capacity(n + 1);
        let mut cur = a.start().triangle;
        tris.push(cur as u32);
        entry.push(corner_port(a.start().corner));
        for &e in a.crossings() {
            let s = t.side_on_edge(cur, e).expect("itinerary is consistent");
            exit.push(side_port(s));
            let nb = t.neighbor(crate::triangulation::Side::new(cur, s)).expect("crossed edges are glued");
            cur = nb.triangle;
            tris.push(cur as u32);
            entry.push(side_port(nb.side));
        }
        exit.push(corner_port(a.end().corner));
        ArcPath { tris, entry, exit }
    }

    pub fn len(&self) -> usize {
        self.tris.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tris.is_empty()
    }
}

/// `x` lies strictly inside the counterclockwise run from `from` to `to`.
#[inline]
fn strictly_between(x: u8, from: u8, to: u8) -> bool {
    let span = (to + 6 - from) % 6;
    let off = (x + 6 - from) % 6;
    off != 0 && off < span
}

#[inline]
fn chords_cross(a: (u8, u8), b: (u8, u8)) -> bool {
    if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
        return false;
    }
    strictly_between(b.0, a.0, a.1) != strictly_between(b.1, a.0, a.1)
}

/// Counts interleaving lift pairs of `a` against `b`. With `same` the
/// identity pairing of an arc with itself is skipped and each crossing is
/// seen twice.
fn lift_crossings(a: &ArcPath, b: &ArcPath, same: bool) -> usize {
    let mut count = 0;
    for i in 0..a.len() {
        let ta = a.tris[i];
        for j in 0..b.len() {
            if b.tris[j] != ta || (same && i == j) {
                continue;
            }
            let ae = a.entry[i];
            if is_side(ae) && (b.entry[j] == ae || b.exit[j] == ae) {
                // the run started earlier
                continue;
            }
            let mut k = 0usize;
            let mut dir = 0i8;
            loop {
                let ii = i + k;
                let jj = j as isize + dir as isize * k as isize;
                let ax = a.exit[ii];
                if !is_side(ax) {
                    break;
                }
                let jj = jj as usize;
                if dir >= 0 && b.exit[jj] == ax {
                    dir = 1;
                } else if dir <= 0 && b.entry[jj] == ax {
                    dir = -1;
                } else {
                    break;
                }
                k += 1;
            }
            let crosses = if k == 0 {
                chords_cross((a.entry[i], a.exit[i]), (b.entry[j], b.exit[j]))
            } else {
                let b_start = if dir > 0 { b.entry[j] } else { b.exit[j] };
                let ii = i + k;
                let jj = (j as isize + dir as isize * k as isize) as usize;
                let b_end = if dir > 0 { b.exit[jj] } else { b.entry[jj] };
                let s0 = a.exit[i];
                let s1 = a.entry[ii];
                let r = |p: u8, base: u8| ((p + 6 - base) % 6) as i8;
                let d0 = r(a.entry[i], s0) - r(b_start, s0);
                let d1 = r(a.exit[ii], s1) - r(b_end, s1);
                (d0 as i16) * (d1 as i16) > 0
            };
            if crosses {
                count += 1;
            }
        }
    }
    count
}

/// Interior intersections of minimal-position representatives. Meetings at
/// shared marked endpoints are not counted and `i(a, a) = 0`.
pub fn geometric_intersection(t: &IdealTriangulation, a: &ArcClass, b: &ArcClass) -> usize {
    if a == b {
        return 0;
    }
    path_intersection(&ArcPath::new(t, a), &ArcPath::new(t, b))
}

/// [`geometric_intersection`] on precomputed paths of distinct classes.
pub fn path_intersection(a: &ArcPath, b: &ArcPath) -> usize {
    lift_crossings(a, b, false)
}

/// Minimal number of transverse self-crossings.
pub fn self_intersection(p: &ArcPath) -> usize {
    let twice = lift_crossings(p, p, true);
    debug_assert!(twice.is_multiple_of(2));
    twice / 2
}
