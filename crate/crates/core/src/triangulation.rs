//! Ideal triangulations of marked surfaces.
//!
//! Triangles are oriented counterclockwise. Side `s` of a triangle runs from
//! corner `s` to corner `s + 1 (mod 3)`, so corner `s + 2` is opposite side `s`.
//! A gluing `[t, s, t', s']` identifies side `s` of `t` with side `s'` of `t'`
//! reversing direction: corner `s` of `t` meets corner `s' + 1` of `t'` and
//! corner `s + 1` of `t` meets corner `s'` of `t'`. Every gluing is therefore
//! orientation preserving and every triangulation describes an orientable
//! surface. Edge `k` is the `k`-th gluing, followed by boundary sides.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::SurfaceInvariants;

/// Version of the fixture JSON layout.
pub const FORMAT_VERSION: u32 = 1;

const TORUS_1_MARKED: &str = include_str!("../fixtures/torus-1-marked.json");
const TORUS_2_MARKED: &str = include_str!("../fixtures/torus-2-marked.json");

pub const FIXTURE_NAMES: [&str; 2] = ["torus-1-marked", "torus-2-marked"];

#[inline]
pub fn next(i: usize) -> usize {
    (i + 1) % 3
}

#[inline]
pub fn prev(i: usize) -> usize {
    (i + 2) % 3
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Corner {
    pub triangle: usize,
    pub corner: usize,
}

impl Corner {
    pub fn new(triangle: usize, corner: usize) -> Self {
        Corner { triangle, corner }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Side {
    pub triangle: usize,
    pub side: usize,
}

impl Side {
    pub fn new(triangle: usize, side: usize) -> Self {
        Side { triangle, side }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedPoint {
    pub name: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub boundary: bool,
}

/// Serialized form of a triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationSpec {
    #[serde(default = "default_version")]
    pub format_version: u32,
    #[serde(default)]
    pub name: String,
    pub triangles: usize,
    pub gluings: Vec<[usize; 4]>,
    pub vertices: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boundary: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<MarkedPoint>,
    /// Exponentiated shear coordinate of each glued edge as `[num, den]`.
    /// Missing entries default to `1` (the symmetric structure).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub shears: Vec<[i64; 2]>,
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub first: Side,
    /// `None` for a boundary side.
    pub second: Option<Side>,
}

/// A validated ideal triangulation. Immutable after construction.
#[derive(Clone, Debug)]
pub struct IdealTriangulation {
    spec: TriangulationSpec,
    points: Vec<MarkedPoint>,
    neighbor: Vec<[Option<Side>; 3]>,
    side_edge: Vec<[usize; 3]>,
    edges: Vec<Edge>,
    shears: Vec<(i64, i64)>,
    invariants: SurfaceInvariants,
    counts: EulerCounts,
}

/// Cell counts of the triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCounts {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl EulerCounts {
    pub fn euler(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

/// Result of [`validate_triangulation`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub counts: EulerCounts,
    pub invariants: SurfaceInvariants,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Checks a gluing table and derives `(V, E, F)` and the surface type.
pub fn validate_triangulation(spec: &TriangulationSpec) -> Result<Validation> {
    IdealTriangulation::from_spec(spec.clone()).map(|t| Validation { counts: t.counts, invariants: t.invariants })
}

/// Looks up one of the shipped fixtures by name.
pub fn standard_fixture(name: &str) -> Result<IdealTriangulation> {
    let text = match name {
        "torus-1-marked" => TORUS_1_MARKED,
        "torus-2-marked" => TORUS_2_MARKED,
        other => return Err(Error::UnknownSurface(other.to_string())),
    };
    let spec: TriangulationSpec =
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("fixture {name}: {e}")))?;
    IdealTriangulation::from_spec(spec)
}

/// Raw JSON of a shipped fixture, byte for byte.
pub fn fixture_json(name: &str) -> Result<&'static str> {
    match name {
        "torus-1-marked" => Ok(TORUS_1_MARKED),
        "torus-2-marked" => Ok(TORUS_2_MARKED),
        other => Err(Error::UnknownSurface(other.to_string())),
    }
}

impl IdealTriangulation {
    pub fn from_spec(spec: TriangulationSpec) -> Result<Self> {
        let n = spec.triangles;
        if n == 0 {
            return Err(Error::BadIndex("a triangulation needs at least one triangle".into()));
        }
        if spec.vertices.len() != n {
            return Err(Error::BadIndex(format!("{} vertex triples for {} triangles", spec.vertices.len(), n)));
        }
        let point_count =
            spec.vertices.iter().flat_map(|v| v.iter().copied()).max().map_or(0, |m| m + 1).max(spec.points.len());
        let mut points = spec.points.clone();
        for i in points.len()..point_count {
            points.push(MarkedPoint { name: format!("p{i}"), boundary: false });
        }

        let mut neighbor = vec![[None; 3]; n];
        let mut side_edge = vec![[usize::MAX; 3]; n];
        let mut edges = Vec::new();
        let check = |t: usize, s: usize| -> Result<()> {
            if t >= n || s >= 3 {
                Err(Error::BadIndex(format!("side ({t}, {s})")))
            } else {
                Ok(())
            }
        };
        for g in &spec.gluings {
            let [t, s, u, r] = *g;
            check(t, s)?;
            check(u, r)?;
            for side in [Side::new(t, s), Side::new(u, r)] {
                if side_edge[side.triangle][side.side] != usize::MAX {
                    return Err(Error::SideReused { triangle: side.triangle, side: side.side });
                }
                side_edge[side.triangle][side.side] = edges.len();
            }
            if (t, s) == (u, r) {
                return Err(Error::SideReused { triangle: t, side: s });
            }
            if t == u {
                return Err(Error::SelfAdjacentEdge(edges.len()));
            }
            neighbor[t][s] = Some(Side::new(u, r));
            neighbor[u][r] = Some(Side::new(t, s));
            edges.push(Edge { first: Side::new(t, s), second: Some(Side::new(u, r)) });
        }
        for b in &spec.boundary {
            let [t, s] = *b;
            check(t, s)?;
            if side_edge[t][s] != usize::MAX {
                return Err(Error::SideReused { triangle: t, side: s });
            }
            side_edge[t][s] = edges.len();
            edges.push(Edge { first: Side::new(t, s), second: None });
        }
        for (t, sides) in side_edge.iter().enumerate() {
            if let Some(s) = sides.iter().position(|&e| e == usize::MAX) {
                return Err(Error::DanglingSide { triangle: t, side: s });
            }
        }

        // vertex classes of corners
        let mut uf = UnionFind::new(3 * n);
        for g in &spec.gluings {
            let [t, s, u, r] = *g;
            uf.union(3 * t + s, 3 * u + next(r));
            uf.union(3 * t + next(s), 3 * u + r);
        }
        let mut class_point: Vec<Option<usize>> = vec![None; 3 * n];
        for t in 0..n {
            for c in 0..3 {
                let root = uf.find(3 * t + c);
                let p = spec.vertices[t][c];
                match class_point[root] {
                    None => class_point[root] = Some(p),
                    Some(q) if q != p => return Err(Error::InconsistentVertex(q, p)),
                    _ => {}
                }
            }
        }
        let mut seen_point = vec![false; points.len()];
        let mut vertex_count = 0;
        for p in class_point.iter().flatten() {
            if seen_point[*p] {
                return Err(Error::SplitVertex(*p));
            }
            seen_point[*p] = true;
            vertex_count += 1;
        }
        if seen_point.iter().any(|s| !s) {
            return Err(Error::BadIndex("a marked point is not a vertex of the triangulation".into()));
        }

        // connectivity of the dual graph
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for nb in neighbor[t].iter().flatten() {
                if !seen[nb.triangle] {
                    seen[nb.triangle] = true;
                    stack.push(nb.triangle);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Disconnected);
        }

        // boundary circles: each boundary side runs corner s -> corner s+1
        let mut boundary_points = vec![false; points.len()];
        let mut circle_uf = UnionFind::new(3 * n);
        for b in &spec.boundary {
            let [t, s] = *b;
            let a = uf.find(3 * t + s);
            let z = uf.find(3 * t + next(s));
            circle_uf.union(a, z);
            boundary_points[spec.vertices[t][s]] = true;
            boundary_points[spec.vertices[t][next(s)]] = true;
        }
        let mut roots: Vec<usize> = spec
            .boundary
            .iter()
            .map(|b| {
                let a = uf.find(3 * b[0] + b[1]);
                circle_uf.find(a)
            })
            .collect();
        roots.sort_unstable();
        roots.dedup();
        let boundary_components = roots.len();

        let counts = EulerCounts { vertices: vertex_count, edges: edges.len(), faces: n };
        let chi = counts.euler();
        let twice_genus = 2 - boundary_components as i64 - chi;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(Error::EulerMismatch { chi, boundary: boundary_components });
        }
        let boundary_marked = boundary_points.iter().filter(|b| **b).count() as u32;
        let invariants = SurfaceInvariants::new(
            (twice_genus / 2) as u32,
            boundary_components as u32,
            vertex_count as u32 - boundary_marked,
            boundary_marked,
        );
        for (i, p) in points.iter_mut().enumerate() {
            p.boundary = boundary_points[i];
        }

        let mut shears = Vec::with_capacity(spec.gluings.len());
        for k in 0..spec.gluings.len() {
            let (num, den) = spec.shears.get(k).map_or((1, 1), |s| (s[0], s[1]));
            if num <= 0 || den <= 0 {
                return Err(Error::Invalid(format!("shear of edge {k} must be a positive fraction")));
            }
            shears.push((num, den));
        }
        let tri = IdealTriangulation { spec, points, neighbor, side_edge, edges, shears, invariants, counts };
        tri.check_shear_completeness()?;
        Ok(tri)
    }

    /// The product of exponentiated shears around every interior marked point
    /// must be one, otherwise the developed hyperbolic structure is incomplete.
    fn check_shear_completeness(&self) -> Result<()> {
        let mut num = vec![1i128; self.points.len()];
        let mut den = vec![1i128; self.points.len()];
        for (k, g) in self.spec.gluings.iter().enumerate() {
            let (a, b) = self.shears[k];
            let t = g[0];
            let s = g[1];
            for c in [s, next(s)] {
                let p = self.spec.vertices[t][c];
                num[p] *= a as i128;
                den[p] *= b as i128;
            }
        }
        for p in 0..self.points.len() {
            if !self.points[p].boundary && num[p] != den[p] {
                return Err(Error::IncompleteShears(p));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn spec(&self) -> &TriangulationSpec {
        &self.spec
    }

    pub fn triangle_count(&self) -> usize {
        self.spec.triangles
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn points(&self) -> &[MarkedPoint] {
        &self.points
    }

    pub fn point_name(&self, p: usize) -> &str {
        &self.points[p].name
    }

    pub fn invariants(&self) -> SurfaceInvariants {
        self.invariants
    }

    pub fn counts(&self) -> EulerCounts {
        self.counts
    }

    pub fn point_at(&self, c: Corner) -> usize {
        self.spec.vertices[c.triangle][c.corner]
    }

    pub fn edge_at(&self, s: Side) -> usize {
        self.side_edge[s.triangle][s.side]
    }

    pub fn neighbor(&self, s: Side) -> Option<Side> {
        self.neighbor[s.triangle][s.side]
    }

    /// Exponentiated shear of a glued edge as `(num, den)`.
    pub fn shear(&self, edge: usize) -> (i64, i64) {
        self.shears[edge]
    }

    pub fn is_closed(&self) -> bool {
        self.spec.boundary.is_empty()
    }

    /// The side of `triangle` lying on `edge`, if any.
    pub fn side_on_edge(&self, triangle: usize, edge: usize) -> Option<usize> {
        (0..3).find(|&s| self.side_edge[triangle][s] == edge)
    }

    /// Corner of the neighbouring triangle that coincides with `corner`, where
    /// `corner` must be an endpoint of `side` (both in the same triangle).
    pub fn corner_across(&self, side: Side, corner: usize) -> Option<Corner> {
        let other = self.neighbor(side)?;
        let c = if corner == side.side {
            next(other.side)
        } else if corner == next(side.side) {
            other.side
        } else {
            return None;
        };
        Some(Corner::new(other.triangle, c))
    }

    /// Corners around a marked point in counterclockwise order, starting from
    /// the smallest corner carrying it. Each step crosses the side preceding
    /// the corner.
    pub fn corner_cycle(&self, point: usize) -> Vec<Corner> {
        let start = (0..self.triangle_count())
            .flat_map(|t| (0..3).map(move |c| Corner::new(t, c)))
            .find(|&c| self.point_at(c) == point);
        let Some(start) = start else { return Vec::new() };
        let mut cycle = vec![start];
        let mut cur = start;
        loop {
            let side = Side::new(cur.triangle, prev(cur.corner));
            match self.corner_across(side, cur.corner) {
                Some(nc) if nc != start => {
                    cycle.push(nc);
                    cur = nc;
                }
                _ => break,
            }
        }
        cycle
    }
}
