//! Homotopy classes of arcs as tight edge-crossing itineraries.
//!
//! An arc leaves a marked point through a triangle corner, crosses a sequence
//! of edges and arrives at a marked point through another corner. Lifting to
//! the universal cover, the itinerary is tight exactly when the crossed edges
//! are the ones separating the two lifted endpoints: no edge is crossed twice
//! in a row through the same triangle, the first crossed side is opposite the
//! start corner and the last crossed side is opposite the end corner. Arcs
//! crossing nothing are triangulation edges.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intersection::{self_intersection, ArcPath};
use crate::triangulation::{next, Corner, IdealTriangulation, Side};

/// Canonical representative of an unoriented homotopy class of essential arcs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcClass {
    start: Corner,
    crossings: Vec<usize>,
    end: Corner,
}

impl Ord for ArcClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.start
            .cmp(&other.start)
            .then_with(|| self.crossings.cmp(&other.crossings))
            .then_with(|| self.end.cmp(&other.end))
    }
}

impl PartialOrd for ArcClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ArcClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})[", self.start.triangle, self.start.corner)?;
        for (i, e) in self.crossings.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]({},{})", self.end.triangle, self.end.corner)
    }
}

/// Result of tightening a raw itinerary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tightened {
    Arc(ArcClass),
    /// The path is homotopic to a constant at its marked point.
    Inessential,
}

impl Tightened {
    pub fn arc(self) -> Option<ArcClass> {
        match self {
            Tightened::Arc(a) => Some(a),
            Tightened::Inessential => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Endpoints {
    Loop(usize),
    Between(usize, usize),
}

impl ArcClass {
    pub fn start(&self) -> Corner {
        self.start
    }

    pub fn end(&self) -> Corner {
        self.end
    }

    pub fn crossings(&self) -> &[usize] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// The same class traversed backwards. Not canonical in general.
    pub fn reversed(&self) -> ArcClass {
        let mut crossings = self.crossings.clone();
        crossings.reverse();
        ArcClass { start: self.end, crossings, end: self.start }
    }

    /// Reads the marked points at the two end corners.
    pub fn endpoints(&self, t: &IdealTriangulation) -> Endpoints {
        let a = t.point_at(self.start);
        let b = t.point_at(self.end);
        if a == b {
            Endpoints::Loop(a)
        } else {
            Endpoints::Between(a.min(b), a.max(b))
        }
    }

    pub fn is_loop(&self, t: &IdealTriangulation) -> bool {
        matches!(self.endpoints(t), Endpoints::Loop(_))
    }

    /// The triangulation edge carrying this arc, if it crosses nothing.
    pub fn as_edge(&self, t: &IdealTriangulation) -> Option<usize> {
        if !self.crossings.is_empty() {
            return None;
        }
        let (a, b) = (self.start.corner, self.end.corner);
        let side = if b == next(a) { a } else { b };
        Some(t.edge_at(Side::new(self.start.triangle, side)))
    }

    /// Canonical arc along a triangulation edge.
    pub fn from_edge(t: &IdealTriangulation, edge: usize) -> ArcClass {
        let e = &t.edges()[edge];
        let mut reps = Vec::with_capacity(4);
        for side in std::iter::once(e.first).chain(e.second) {
            let a = Corner::new(side.triangle, side.side);
            let b = Corner::new(side.triangle, next(side.side));
            reps.push(ArcClass { start: a, crossings: Vec::new(), end: b });
            reps.push(ArcClass { start: b, crossings: Vec::new(), end: a });
        }
        reps.into_iter().min().expect("edge has a side")
    }

    /// Builds an arc from parts that are already tight and canonical.
    /// Returns `None` if they are not.
    pub fn from_canonical_parts(
        t: &IdealTriangulation,
        start: Corner,
        crossings: Vec<usize>,
        end: Corner,
    ) -> Option<ArcClass> {
        let raw = ArcClass { start, crossings, end };
        match tighten(t, raw.start, &raw.crossings, raw.end) {
            Ok(Tightened::Arc(a)) if a == raw => Some(a),
            _ => None,
        }
    }
}

/// One transversal passage through an edge: leave `from`, arrive through `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Passage {
    from: Side,
    to: Side,
}

/// Reduces a raw itinerary to its canonical tight form.
pub fn tighten(t: &IdealTriangulation, start: Corner, edges: &[usize], end: Corner) -> Result<Tightened> {
    for c in [start, end] {
        if c.triangle >= t.triangle_count() || c.corner >= 3 {
            return Err(Error::MalformedItinerary(format!("corner {c:?} out of range")));
        }
    }
    let mut stack: Vec<Passage> = Vec::with_capacity(edges.len());
    let mut cur = start.triangle;
    for (i, &e) in edges.iter().enumerate() {
        if e >= t.edge_count() {
            return Err(Error::MalformedItinerary(format!("edge {e} does not exist")));
        }
        let side = t
            .side_on_edge(cur, e)
            .ok_or_else(|| Error::MalformedItinerary(format!("step {i}: edge {e} is not a side of triangle {cur}")))?;
        let from = Side::new(cur, side);
        let to = t
            .neighbor(from)
            .ok_or_else(|| Error::MalformedItinerary(format!("step {i}: edge {e} is a boundary edge")))?;
        match stack.last() {
            Some(p) if p.to == from => {
                cur = p.from.triangle;
                stack.pop();
            }
            _ => {
                stack.push(Passage { from, to });
                cur = to.triangle;
            }
        }
    }
    if cur != end.triangle {
        return Err(Error::MalformedItinerary(format!(
            "itinerary ends in triangle {cur} but the end corner lies in triangle {}",
            end.triangle
        )));
    }

    // Swing each end around its marked point until it leaves through the
    // opposite side.
    let mut lo = 0;
    let mut hi = stack.len();
    let mut s = start;
    let mut e = end;
    loop {
        let mut changed = false;
        if lo < hi {
            let p = stack[lo];
            if s.corner != (p.from.side + 2) % 3 {
                s = t.corner_across(p.from, s.corner).expect("corner lies on the crossed side");
                lo += 1;
                changed = true;
            }
        }
        if lo < hi {
            let p = stack[hi - 1];
            if e.corner != (p.to.side + 2) % 3 {
                e = t.corner_across(p.to, e.corner).expect("corner lies on the crossed side");
                hi -= 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    if lo == hi {
        debug_assert_eq!(s.triangle, e.triangle);
        if s.corner == e.corner {
            return Ok(Tightened::Inessential);
        }
        let side = if e.corner == next(s.corner) { s.corner } else { e.corner };
        return Ok(Tightened::Arc(ArcClass::from_edge(t, t.edge_at(Side::new(s.triangle, side)))));
    }
    let crossings: Vec<usize> = stack[lo..hi].iter().map(|p| t.edge_at(p.from)).collect();
    let arc = ArcClass { start: s, crossings, end: e };
    let rev = arc.reversed();
    Ok(Tightened::Arc(if rev < arc { rev } else { arc }))
}

/// All tight oriented itineraries of exactly `len` crossings leaving `start`.
fn walks_from(t: &IdealTriangulation, start: Corner, len: usize, out: &mut Vec<ArcClass>) {
    if len == 0 {
        return;
    }
    let first = Side::new(start.triangle, next(start.corner));
    let mut crossings = Vec::with_capacity(len);
    descend(t, start, first, len, &mut crossings, out);
}

fn descend(
    t: &IdealTriangulation,
    start: Corner,
    exit: Side,
    remaining: usize,
    crossings: &mut Vec<usize>,
    out: &mut Vec<ArcClass>,
) {
    let Some(entry) = t.neighbor(exit) else { return };
    crossings.push(t.edge_at(exit));
    if remaining == 1 {
        let end = Corner::new(entry.triangle, (entry.side + 2) % 3);
        let arc = ArcClass { start, crossings: crossings.clone(), end };
        if arc <= arc.reversed() {
            out.push(arc);
        }
    } else {
        for k in [1, 2] {
            let side = Side::new(entry.triangle, (entry.side + k) % 3);
            descend(t, start, side, remaining - 1, crossings, out);
        }
    }
    crossings.pop();
}

/// Every simple essential arc class crossing at most `max_crossings` edges,
/// sorted by canonical itinerary.
pub fn enumerate_arc_classes(t: &IdealTriangulation, max_crossings: usize) -> Vec<ArcClass> {
    let mut pool: Vec<ArcClass> =
        (0..t.edge_count()).filter(|&e| t.edges()[e].second.is_some()).map(|e| ArcClass::from_edge(t, e)).collect();
    let starts: Vec<(Corner, usize)> = (1..=max_crossings)
        .flat_map(|len| (0..t.triangle_count()).flat_map(move |tri| (0..3).map(move |c| (Corner::new(tri, c), len))))
        .collect();
    let found: Vec<Vec<ArcClass>> = starts
        .par_iter()
        .map(|&(c, len)| {
            let mut out = Vec::new();
            walks_from(t, c, len, &mut out);
            out.retain(|a| self_intersection(&ArcPath::new(t, a)) == 0);
            out
        })
        .collect();
    pool.extend(found.into_iter().flatten());
    pool.sort();
    pool.dedup();
    pool
}

/// Serialized arc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcRecord {
    pub surface: String,
    pub start: [usize; 2],
    pub crossings: Vec<usize>,
    pub end: [usize; 2],
}

impl ArcRecord {
    pub fn from_arc(t: &IdealTriangulation, a: &ArcClass) -> Self {
        ArcRecord {
            surface: t.name().to_string(),
            start: [a.start.triangle, a.start.corner],
            crossings: a.crossings.clone(),
            end: [a.end.triangle, a.end.corner],
        }
    }

    /// Tightens the record against `t`. Inessential records are rejected.
    pub fn resolve(&self, t: &IdealTriangulation) -> Result<ArcClass> {
        if self.surface != t.name() {
            return Err(Error::SurfaceMismatch(self.surface.clone(), t.name().to_string()));
        }
        let start = Corner::new(self.start[0], self.start[1]);
        let end = Corner::new(self.end[0], self.end[1]);
        tighten(t, start, &self.crossings, end)?
            .arc()
            .ok_or_else(|| Error::MalformedItinerary("arc is inessential".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::standard_fixture;

    fn t1() -> IdealTriangulation {
        standard_fixture("torus-1-marked").unwrap()
    }

    fn t2() -> IdealTriangulation {
        standard_fixture("torus-2-marked").unwrap()
    }

    #[test]
    fn constant_arc_is_inessential() {
        let t = t1();
        let c = Corner::new(0, 1);
        assert_eq!(tighten(&t, c, &[], c).unwrap(), Tightened::Inessential);
    }

    #[test]
    fn bigon_with_edge_cancels() {
        let t = t2();
        // leave x at corner 0 of triangle 0, cross the edge opposite and come back
        let start = Corner::new(0, 0);
        let end = Corner::new(0, 1);
        let reduced = tighten(&t, start, &[3, 3], end).unwrap();
        let direct = tighten(&t, start, &[], end).unwrap();
        assert_eq!(reduced, direct);
        assert_eq!(reduced.arc().unwrap().as_edge(&t), Some(0));
    }

    #[test]
    fn tight_length_one_is_fixed() {
        let t = t2();
        // horizontal loop through y: right triangle to left triangle across v
        let a = tighten(&t, Corner::new(1, 2), &[1], Corner::new(3, 2)).unwrap().arc().unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a.crossings(), &[1]);
        let b = tighten(&t, Corner::new(3, 2), &[1], Corner::new(1, 2)).unwrap().arc().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn swinging_around_an_endpoint() {
        let t = t2();
        // start at x in triangle 0 corner 0 but leave through side 2 (touching x)
        let a = tighten(&t, Corner::new(0, 0), &[2], Corner::new(3, 0)).unwrap();
        // lands in triangle 3 at corner 0, which carries x: the edge d00 swung
        assert!(a.arc().is_some());
    }

    #[test]
    fn malformed_itinerary_rejected() {
        let t = t2();
        // edge 4 (d11) is not a side of triangle 0
        assert!(matches!(tighten(&t, Corner::new(0, 0), &[4], Corner::new(1, 0)), Err(Error::MalformedItinerary(_))));
    }

    #[test]
    fn torus_one_marked_bound_zero() {
        let t = t1();
        let pool = enumerate_arc_classes(&t, 0);
        assert_eq!(pool.len(), 3);
        assert!(pool.iter().all(|a| a.is_empty()));
    }

    #[test]
    fn endpoints_read_from_corners() {
        let t = t2();
        let d = ArcClass::from_edge(&t, 2);
        assert_eq!(d.endpoints(&t), Endpoints::Between(0, 1));
        let h = ArcClass::from_edge(&t, 0);
        assert_eq!(h.endpoints(&t), Endpoints::Loop(0));
        for a in enumerate_arc_classes(&t1(), 3) {
            assert_eq!(a.endpoints(&t1()), Endpoints::Loop(0));
        }
    }

    #[test]
    fn enumeration_is_monotone_in_the_bound() {
        let t = t2();
        let small = enumerate_arc_classes(&t, 2);
        let big = enumerate_arc_classes(&t, 3);
        assert!(small.iter().all(|a| big.binary_search(a).is_ok()));
        assert!(big.len() > small.len());
    }

    #[test]
    fn record_resolves_only_on_its_surface() {
        let t = t2();
        let a = ArcClass::from_edge(&t, 3);
        let rec = ArcRecord::from_arc(&t, &a);
        assert_eq!(rec.resolve(&t).unwrap(), a);
        assert!(matches!(rec.resolve(&t1()), Err(Error::SurfaceMismatch(..))));
    }
}
