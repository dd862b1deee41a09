//! Simultaneous minimal-position drawing of an arc system.
//!
//! Strands are ordered along every edge by their geodesic crossing height.
//! Inside a triangle each arc piece becomes a straight chord between points
//! placed in convex position in boundary order, so two pieces cross exactly
//! when their endpoints interleave and the order of crossings along a piece
//! is read off exact integer geometry.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arc::ArcClass;
use crate::error::{Error, Result};
use crate::geometry::strand_heights;
use crate::intersection::{is_side, path_intersection, ArcPath};
use crate::triangulation::{IdealTriangulation, Side};

/// Rank of every strand along the reference side of its edge, per arc and
/// crossing index. Ranks are comparable only between strands on one edge.
#[derive(Clone, Debug)]
pub struct StrandRanks {
    ranks: Vec<Vec<u32>>,
}

impl StrandRanks {
    /// Ranks for a fixed arc list; ties in height fall back to the arc order.
    pub fn new(t: &IdealTriangulation, arcs: &[ArcClass]) -> Self {
        let heights: Vec<Vec<BigRational>> = arcs.par_iter().map(|a| strand_heights(t, a)).collect();
        let mut per_edge: Vec<Vec<(&BigRational, &ArcClass, usize, usize)>> = vec![Vec::new(); t.edge_count()];
        for (i, a) in arcs.iter().enumerate() {
            for (k, &e) in a.crossings().iter().enumerate() {
                per_edge[e].push((&heights[i][k], a, k, i));
            }
        }
        let mut ranks: Vec<Vec<u32>> = arcs.iter().map(|a| vec![0; a.len()]).collect();
        for strands in &mut per_edge {
            strands.sort_by(|x, y| (x.0, x.1, x.2).cmp(&(y.0, y.1, y.2)));
            for (r, &(_, _, k, i)) in strands.iter().enumerate() {
                ranks[i][k] = r as u32;
            }
        }
        StrandRanks { ranks }
    }

    pub fn of(&self, arc: usize) -> &[u32] {
        &self.ranks[arc]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    /// participating arcs, `arcs.0 < arcs.1`
    pub arcs: (usize, usize),
    /// rotation around the crossing is `(a+, b+, a-, b-)` when set and
    /// `(a+, b-, a-, b+)` otherwise; `+` points towards an arc's end
    pub positive: bool,
}

/// One end of an arc at a marked point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArcEnd {
    pub arc: usize,
    pub at_start: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingLayout {
    pub crossings: Vec<Crossing>,
    /// crossing ids along each arc from its start to its end
    pub sequences: Vec<Vec<usize>>,
    /// counterclockwise rotation of arc ends at each marked point
    pub rotations: Vec<Vec<ArcEnd>>,
}

impl CrossingLayout {
    pub fn arc_count(&self) -> usize {
        self.sequences.len()
    }

    pub fn pair_count(&self, a: usize, b: usize) -> usize {
        let key = (a.min(b), a.max(b));
        self.crossings.iter().filter(|c| c.arcs == key).count()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }
}

pub(crate) struct Chord {
    pub arc: usize,
    pub piece: usize,
    pub from: usize,
    pub to: usize,
}

type Point = (i128, i128);

fn sub(a: Point, b: Point) -> Point {
    (a.0 - b.0, a.1 - b.1)
}

fn cross(a: Point, b: Point) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

/// Parameter along `p1 -> p2` where it meets `q1 -> q2`, as a positive
/// denominator fraction.
fn param(p1: Point, p2: Point, q1: Point, q2: Point) -> (i128, i128) {
    let d = sub(q2, q1);
    let num = cross(sub(q1, p1), d);
    let den = cross(sub(p2, p1), d);
    if den < 0 {
        (-num, -den)
    } else {
        (num, den)
    }
}

fn interleaved(x: usize, a: usize, b: usize, n: usize) -> bool {
    let span = (b + n - a) % n;
    let off = (x + n - a) % n;
    off != 0 && off < span
}

/// Builds the layout for `arcs` with strand positions from `ranks`.
pub fn crossing_layout_ranked(t: &IdealTriangulation, arcs: &[ArcClass], ranks: &[&[u32]]) -> Result<CrossingLayout> {
    let paths: Vec<ArcPath> = arcs.iter().map(|a| ArcPath::new(t, a)).collect();
    for attempt in 0..8 {
        if let Some(layout) = try_layout(t, &paths, ranks, attempt)? {
            return Ok(layout);
        }
    }
    Err(Error::Layout("could not separate concurrent crossings".into()))
}

/// Layout of a system with ranks computed from the system alone.
pub fn crossing_layout(t: &IdealTriangulation, arcs: &[ArcClass]) -> Result<CrossingLayout> {
    for (i, a) in arcs.iter().enumerate() {
        if crate::intersection::self_intersection(&ArcPath::new(t, a)) > 0 {
            return Err(Error::NotSimple);
        }
        if arcs[..i].contains(a) {
            return Err(Error::Invalid(format!("arc {a} listed twice")));
        }
    }
    let ranks = StrandRanks::new(t, arcs);
    let view: Vec<&[u32]> = (0..arcs.len()).map(|i| ranks.of(i)).collect();
    crossing_layout_ranked(t, arcs, &view)
}

/// Port and height of a strand end on a triangle boundary.
type PortKey = (u8, u64);
/// Parameter of a crossing along a chord, as a fraction.
type Param = (i128, i128);

/// Chords of every arc piece, per triangle, with endpoints indexed into the
/// sorted boundary keys of that triangle.
pub(crate) struct Placement {
    /// boundary keys per triangle: (port, offset); corners use offset 0
    pub keys: Vec<Vec<PortKey>>,
    pub chords: Vec<Vec<Chord>>,
}

pub(crate) fn place_chords(t: &IdealTriangulation, paths: &[ArcPath], ranks: &[&[u32]]) -> Placement {
    let tri_count = t.triangle_count();
    let mut keys: Vec<Vec<(u8, u64)>> = vec![Vec::new(); tri_count];
    let key_of = |tri: usize, port: u8, arc: usize, k: usize| -> (u8, u64) {
        if !is_side(port) {
            return (port, 0);
        }
        let s = (port as usize - 1) / 2;
        let e = t.edge_at(Side::new(tri, s));
        let r = ranks[arc][k] as u64 + 1;
        if t.edges()[e].first == Side::new(tri, s) {
            (port, r)
        } else {
            (port, u64::MAX - r)
        }
    };
    // (triangle, arc, piece, entry key, exit key)
    let mut raw: Vec<(usize, usize, usize, PortKey, PortKey)> = Vec::new();
    for (i, p) in paths.iter().enumerate() {
        for piece in 0..p.len() {
            let tri = p.tris[piece] as usize;
            // the strand entering at piece `piece` is crossing `piece - 1`
            let from = key_of(tri, p.entry[piece], i, piece.wrapping_sub(1));
            let to = key_of(tri, p.exit[piece], i, piece);
            keys[tri].push(from);
            keys[tri].push(to);
            raw.push((tri, i, piece, from, to));
        }
    }
    for k in &mut keys {
        k.sort_unstable();
        k.dedup();
    }
    let index = |tri: usize, key: (u8, u64)| keys[tri].binary_search(&key).expect("key registered");
    let mut chords: Vec<Vec<Chord>> = (0..tri_count).map(|_| Vec::new()).collect();
    for &(tri, arc, piece, from, to) in &raw {
        chords[tri].push(Chord { arc, piece, from: index(tri, from), to: index(tri, to) });
    }
    Placement { keys, chords }
}

fn try_layout(
    t: &IdealTriangulation,
    paths: &[ArcPath],
    ranks: &[&[u32]],
    attempt: i128,
) -> Result<Option<CrossingLayout>> {
    let Placement { keys, chords } = place_chords(t, paths, ranks);

    let coord = |k: usize| -> Point {
        let k = k as i128 + 1;
        // strictly increasing in k for every attempt
        let u = k * (5 * attempt + 1) + attempt * (k * k % 5);
        (u, u * u)
    };

    // per (arc, piece): crossings found inside that piece as (param, crossing id)
    let mut along: BTreeMap<(usize, usize), Vec<(Param, usize)>> = BTreeMap::new();
    let mut crossings = Vec::new();
    for (tri, list) in chords.iter().enumerate() {
        let n = keys[tri].len();
        for (x, a) in list.iter().enumerate() {
            for b in &list[x + 1..] {
                let ends = [a.from, a.to, b.from, b.to];
                if ends[2] == ends[0] || ends[2] == ends[1] || ends[3] == ends[0] || ends[3] == ends[1] {
                    continue;
                }
                if interleaved(b.from, a.from, a.to, n) == interleaved(b.to, a.from, a.to, n) {
                    continue;
                }
                if a.arc == b.arc {
                    return Err(Error::Layout(format!("arc {} meets itself", a.arc)));
                }
                let (pa, pb) = if a.arc < b.arc { (a, b) } else { (b, a) };
                let positive = interleaved(pb.from, pa.from, pa.to, n);
                let id = crossings.len();
                crossings.push(Crossing { arcs: (pa.arc, pb.arc), positive });
                let (a1, a2, b1, b2) = (coord(a.from), coord(a.to), coord(b.from), coord(b.to));
                along.entry((a.arc, a.piece)).or_default().push((param(a1, a2, b1, b2), id));
                along.entry((b.arc, b.piece)).or_default().push((param(b1, b2, a1, a2), id));
            }
        }
    }

    let mut sequences: Vec<Vec<usize>> = vec![Vec::new(); paths.len()];
    for ((arc, _), mut list) in along {
        list.sort_by(|x, y| (x.0 .0 * y.0 .1).cmp(&(y.0 .0 * x.0 .1)));
        for w in list.windows(2) {
            if w[0].0 .0 * w[1].0 .1 == w[1].0 .0 * w[0].0 .1 {
                return Ok(None);
            }
        }
        sequences[arc].extend(list.into_iter().map(|(_, id)| id));
    }

    let mut rotations = vec![Vec::new(); t.points().len()];
    for (point, rot) in rotations.iter_mut().enumerate() {
        for corner in t.corner_cycle(point) {
            let tri = corner.triangle;
            let n = keys[tri].len();
            let Ok(here) = keys[tri].binary_search(&((2 * corner.corner) as u8, 0)) else {
                continue;
            };
            let mut ends: Vec<(usize, ArcEnd)> = Vec::new();
            for c in &chords[tri] {
                let last = paths[c.arc].len() - 1;
                if c.piece == 0 && c.from == here {
                    ends.push(((c.to + n - here) % n, ArcEnd { arc: c.arc, at_start: true }));
                }
                if c.piece == last && c.to == here {
                    ends.push(((c.from + n - here) % n, ArcEnd { arc: c.arc, at_start: false }));
                }
            }
            ends.sort();
            rot.extend(ends.into_iter().map(|(_, e)| e));
        }
    }

    let layout = CrossingLayout { crossings, sequences, rotations };
    for (i, p) in paths.iter().enumerate() {
        for (j, q) in paths.iter().enumerate().skip(i + 1) {
            let expected = path_intersection(p, q);
            let found = layout.pair_count(i, j);
            if expected != found {
                return Err(Error::Layout(format!(
                    "arcs {i} and {j}: drawn with {found} crossings, minimal position has {expected}"
                )));
            }
        }
    }
    Ok(Some(layout))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc::{enumerate_arc_classes, tighten};
    use crate::triangulation::{standard_fixture, Corner};

    #[test]
    fn disjoint_edges_have_no_crossings() {
        let t = standard_fixture("torus-1-marked").unwrap();
        let arcs = vec![ArcClass::from_edge(&t, 0), ArcClass::from_edge(&t, 1)];
        let l = crossing_layout(&t, &arcs).unwrap();
        assert!(l.crossings.is_empty());
        // one marked point with four arc ends
        assert_eq!(l.rotations[0].len(), 4);
    }

    #[test]
    fn diagonals_cross_once() {
        let t = standard_fixture("torus-1-marked").unwrap();
        let d = ArcClass::from_edge(&t, 2);
        let anti = tighten(&t, Corner::new(0, 1), &[2], Corner::new(1, 2)).unwrap().arc().unwrap();
        let l = crossing_layout(&t, &[d, anti]).unwrap();
        assert_eq!(l.crossing_count(), 1);
        assert_eq!(l.sequences, vec![vec![0], vec![0]]);
    }

    #[test]
    fn singleton_has_no_crossings() {
        let t = standard_fixture("torus-2-marked").unwrap();
        let l = crossing_layout(&t, &[ArcClass::from_edge(&t, 3)]).unwrap();
        assert!(l.crossings.is_empty());
        assert_eq!(l.rotations[0].len() + l.rotations[1].len(), 2);
    }

    #[test]
    fn whole_pool_layout_matches_intersection_numbers() {
        // a layout of many arcs at once checks global consistency of the
        // edge orders
        let t = standard_fixture("torus-2-marked").unwrap();
        let pool = enumerate_arc_classes(&t, 3);
        let l = crossing_layout(&t, &pool).unwrap();
        for (i, seq) in l.sequences.iter().enumerate() {
            let mut ids = seq.clone();
            ids.sort_unstable();
            ids.dedup();
            assert_eq!(ids.len(), seq.len(), "crossing repeated along arc {i}");
        }
        for c in &l.crossings {
            assert!(c.arcs.0 < c.arcs.1);
        }
    }
}
