//! Cutting a marked surface along a set of pairwise disjoint arcs.
//!
//! Each triangle is sliced along the chords of the arcs passing through it.
//! The resulting polygons are reglued across every side segment except the
//! edges that are themselves members of the system, and the invariants of
//! each connected piece are read off its cell structure.

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::arc::ArcClass;
use crate::error::{Error, Result};
use crate::intersection::{geometric_intersection, self_intersection, ArcPath};
use crate::layout::{place_chords, StrandRanks};
use crate::surface::{Rational, SurfaceInvariants};
use crate::triangulation::IdealTriangulation;

/// Connected components of a surface cut along a 0-system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutResult {
    pub components: Vec<SurfaceInvariants>,
    /// boundary marked points present after cutting but not before
    pub boundary_marked_created: u32,
    pub system: Vec<ArcClass>,
}

impl CutResult {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn total_chi(&self) -> Rational {
        self.components.iter().map(SurfaceInvariants::chi).sum()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// Every component is an ideal triangle.
    pub fn all_triangles(&self) -> bool {
        self.components.iter().all(|c| *c == SurfaceInvariants::new(0, 1, 0, 3))
    }

    pub fn report(&self) -> CutReport {
        CutReport {
            components: self
                .components
                .iter()
                .map(|c| ComponentReport { invariants: *c, chi: c.chi().to_string() })
                .collect(),
            boundary_marked_created: self.boundary_marked_created,
            total_chi: self.total_chi().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    #[serde(flatten)]
    pub invariants: SurfaceInvariants,
    pub chi: String,
}

/// JSON form of a [`CutResult`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutReport {
    pub components: Vec<ComponentReport>,
    pub boundary_marked_created: u32,
    pub total_chi: String,
}

#[derive(Clone, Copy)]
enum Piece {
    /// boundary segment of the triangle from point `i` to `i + 1`
    Segment(usize),
    Chord,
}

struct Region {
    tri: usize,
    points: Vec<usize>,
    pieces: Vec<Piece>,
}

/// Faces of a convex polygon on `n` boundary points cut by non-crossing
/// chords, each traced counterclockwise.
fn polygon_faces(n: usize, chords: &[(usize, usize)]) -> Vec<(Vec<usize>, Vec<Piece>)> {
    let mut nbrs: Vec<Vec<usize>> = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
    for &(a, b) in chords {
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    for (i, list) in nbrs.iter_mut().enumerate() {
        list.sort_by_key(|&x| (x + n - i) % n);
        list.dedup();
    }
    let is_chord = |a: usize, b: usize| chords.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a));
    let mut starts: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for &(a, b) in chords {
        starts.push((a, b));
        starts.push((b, a));
    }
    let mut seen = std::collections::HashSet::new();
    let mut faces = Vec::new();
    for start in starts {
        if seen.contains(&start) {
            continue;
        }
        let (mut points, mut pieces) = (Vec::new(), Vec::new());
        let (mut p, mut q) = start;
        loop {
            seen.insert((p, q));
            points.push(p);
            pieces.push(if q == (p + 1) % n && !is_chord(p, q) { Piece::Segment(p) } else { Piece::Chord });
            // keep the face on the left: the neighbour of q just before p
            // in counterclockwise order around q
            let back = (p + n - q) % n;
            let r = *nbrs[q].iter().rev().find(|&&x| (x + n - q) % n < back).expect("polygon vertex has a successor");
            (p, q) = (q, r);
            if (p, q) == start {
                break;
            }
        }
        faces.push((points, pieces));
    }
    faces
}

fn check_disjoint(t: &IdealTriangulation, arcs: &[ArcClass]) -> Result<()> {
    for (i, a) in arcs.iter().enumerate() {
        if self_intersection(&ArcPath::new(t, a)) > 0 {
            return Err(Error::NotSimple);
        }
        for (j, b) in arcs.iter().enumerate().take(i) {
            if a == b || a == &b.reversed() || geometric_intersection(t, a, b) > 0 {
                return Err(Error::NotDisjoint(j, i));
            }
        }
    }
    Ok(())
}

/// Cuts `t` along the pairwise disjoint arcs `arcs`.
pub fn cut_along(t: &IdealTriangulation, arcs: &[ArcClass]) -> Result<CutResult> {
    check_disjoint(t, arcs)?;
    let mut cut_edge = vec![false; t.edge_count()];
    let mut sliced = Vec::new();
    for a in arcs {
        match a.as_edge(t) {
            Some(e) => cut_edge[e] = true,
            None => sliced.push(a.clone()),
        }
    }
    let paths: Vec<ArcPath> = sliced.iter().map(|a| ArcPath::new(t, a)).collect();
    let ranks = StrandRanks::new(t, &sliced);
    let view: Vec<&[u32]> = (0..sliced.len()).map(|i| ranks.of(i)).collect();
    let placed = place_chords(t, &paths, &view);

    // boundary points of every triangle, corners included, in ccw order
    let mut points: Vec<Vec<(u8, u64)>> = Vec::with_capacity(t.triangle_count());
    let mut regions: Vec<Region> = Vec::new();
    for tri in 0..t.triangle_count() {
        let mut keys = placed.keys[tri].clone();
        keys.extend([(0, 0), (2, 0), (4, 0)]);
        keys.sort_unstable();
        keys.dedup();
        let at = |k: usize| keys.binary_search(&placed.keys[tri][k]).expect("key present");
        let chords: Vec<(usize, usize)> = placed.chords[tri].iter().map(|c| (at(c.from), at(c.to))).collect();
        for (pts, pieces) in polygon_faces(keys.len(), &chords) {
            regions.push(Region { tri, points: pts, pieces });
        }
        points.push(keys);
    }

    let mut first_occ = Vec::with_capacity(regions.len() + 1);
    let mut total = 0;
    for r in &regions {
        first_occ.push(total);
        total += r.points.len();
    }
    let occ = |r: usize, j: usize| first_occ[r] + j % regions[r].points.len();
    // owner of each triangle boundary segment: (tri, start point) -> (region, position)
    let mut owner = std::collections::HashMap::new();
    for (ri, r) in regions.iter().enumerate() {
        for (j, piece) in r.pieces.iter().enumerate() {
            if let Piece::Segment(i) = *piece {
                owner.insert((r.tri, i), (ri, j));
            }
        }
    }
    // start points of the segments along side `s` of `tri`, in ccw order
    let side_segments = |tri: usize, s: usize| -> Vec<usize> {
        let keys = &points[tri];
        let c = keys.binary_search(&((2 * s) as u8, 0)).expect("corner present");
        let strands = keys.iter().filter(|k| k.0 as usize == 2 * s + 1).count();
        (0..=strands).map(|m| (c + m) % keys.len()).collect()
    };

    let mut vertices = UnionFind::<usize>::new(total);
    let mut pieces_of = UnionFind::<usize>::new(regions.len());
    let mut interior_edges: Vec<usize> = Vec::new();
    let mut boundary_edges: Vec<(usize, usize)> = Vec::new();
    for (e, edge) in t.edges().iter().enumerate() {
        let a = edge.first;
        let glued = t.neighbor(a).filter(|_| !cut_edge[e]);
        let sa = side_segments(a.triangle, a.side);
        match glued {
            Some(b) => {
                let sb = side_segments(b.triangle, b.side);
                debug_assert_eq!(sa.len(), sb.len());
                let r = sa.len() - 1;
                for m in 0..=r {
                    let (ra, ja) = owner[&(a.triangle, sa[m])];
                    let (rb, jb) = owner[&(b.triangle, sb[r - m])];
                    vertices.union(occ(ra, ja), occ(rb, jb + 1));
                    vertices.union(occ(ra, ja + 1), occ(rb, jb));
                    pieces_of.union(ra, rb);
                    interior_edges.push(ra);
                }
            }
            None => {
                let mut sides = vec![a];
                sides.extend(t.neighbor(a));
                for side in sides {
                    for i in side_segments(side.triangle, side.side) {
                        let (ri, j) = owner[&(side.triangle, i)];
                        boundary_edges.push((occ(ri, j), occ(ri, j + 1)));
                    }
                }
            }
        }
    }
    for (ri, r) in regions.iter().enumerate() {
        for (j, piece) in r.pieces.iter().enumerate() {
            if let Piece::Chord = piece {
                boundary_edges.push((occ(ri, j), occ(ri, j + 1)));
            }
        }
    }

    let region_of_occ: Vec<usize> =
        (0..regions.len()).flat_map(|ri| std::iter::repeat_n(ri, regions[ri].points.len())).collect();
    let comp_of_region: Vec<usize> = (0..regions.len()).map(|r| pieces_of.find(r)).collect();
    let mut comp_ids: Vec<usize> = comp_of_region.clone();
    comp_ids.sort_unstable();
    comp_ids.dedup();
    let comp_index = |r: usize| comp_ids.binary_search(&comp_of_region[r]).expect("component");
    let nc = comp_ids.len();

    let mut circles = UnionFind::<usize>::new(total);
    let mut on_boundary = vec![false; total];
    for &(x, y) in &boundary_edges {
        let (x, y) = (vertices.find(x), vertices.find(y));
        circles.union(x, y);
        on_boundary[x] = true;
        on_boundary[y] = true;
    }
    let mut marked = vec![false; total];
    for (ri, r) in regions.iter().enumerate() {
        for (j, &p) in r.points.iter().enumerate() {
            if points[r.tri][p].0.is_multiple_of(2) {
                marked[vertices.find(occ(ri, j))] = true;
            }
        }
    }

    let mut faces = vec![0i64; nc];
    let mut edges = vec![0i64; nc];
    let mut verts = vec![0i64; nc];
    let mut interior = vec![0u32; nc];
    let mut on_rim = vec![0u32; nc];
    let mut rims: Vec<Vec<usize>> = vec![Vec::new(); nc];
    for r in 0..regions.len() {
        faces[comp_index(r)] += 1;
    }
    for &r in &interior_edges {
        edges[comp_index(r)] += 1;
    }
    for &(x, _) in &boundary_edges {
        edges[comp_index(region_of_occ[x])] += 1;
    }
    for o in 0..total {
        if vertices.find(o) != o {
            continue;
        }
        let c = comp_index(region_of_occ[o]);
        verts[c] += 1;
        if on_boundary[o] {
            rims[c].push(circles.find(o));
        }
        match (marked[o], on_boundary[o]) {
            (true, true) => on_rim[c] += 1,
            (true, false) => interior[c] += 1,
            _ => {}
        }
    }
    let mut components = Vec::with_capacity(nc);
    for c in 0..nc {
        rims[c].sort_unstable();
        rims[c].dedup();
        let b = rims[c].len() as i64;
        let chi_top = verts[c] - edges[c] + faces[c];
        let twice_genus = 2 - b - chi_top;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(Error::Layout(format!("cut piece with V-E+F = {chi_top} and {b} boundary circles")));
        }
        components.push(SurfaceInvariants::new((twice_genus / 2) as u32, b as u32, interior[c], on_rim[c]));
    }
    let before = t.invariants().boundary_marked;
    let after: u32 = components.iter().map(|c| c.boundary_marked).sum();
    Ok(CutResult { components, boundary_marked_created: after - before, system: arcs.to_vec() })
}

/// `true` when cutting along `arcs` leaves a connected surface.
pub fn complement_is_connected(t: &IdealTriangulation, arcs: &[ArcClass]) -> Result<bool> {
    Ok(cut_along(t, arcs)?.is_connected())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc::tighten;
    use crate::triangulation::{standard_fixture, Corner};

    fn edges(t: &IdealTriangulation, list: &[usize]) -> Vec<ArcClass> {
        list.iter().map(|&e| ArcClass::from_edge(t, e)).collect()
    }

    #[test]
    fn hexagon_cut_is_a_disk() {
        let t = standard_fixture("torus-2-marked").unwrap();
        let r = cut_along(&t, &edges(&t, &[0, 1, 2])).unwrap();
        assert_eq!(r.components, vec![SurfaceInvariants::new(0, 1, 0, 6)]);
        assert_eq!(r.total_chi(), Rational::from_integer(-2));
        assert_eq!(r.boundary_marked_created, 6);
    }

    #[test]
    fn loop_cut_is_an_annulus() {
        let t = standard_fixture("torus-2-marked").unwrap();
        let r = cut_along(&t, &edges(&t, &[0])).unwrap();
        assert_eq!(r.components, vec![SurfaceInvariants::new(0, 2, 1, 2)]);
    }

    #[test]
    fn non_loop_cut_keeps_the_genus() {
        let t = standard_fixture("torus-2-marked").unwrap();
        let r = cut_along(&t, &edges(&t, &[2])).unwrap();
        assert_eq!(r.components, vec![SurfaceInvariants::new(1, 1, 0, 2)]);
    }

    #[test]
    fn empty_cut_is_the_surface() {
        let t = standard_fixture("torus-2-marked").unwrap();
        let r = cut_along(&t, &[]).unwrap();
        assert_eq!(r.components, vec![t.invariants()]);
        assert!(complement_is_connected(&t, &[]).unwrap());
    }

    #[test]
    fn triangulation_cuts_into_triangles() {
        let t = standard_fixture("torus-2-marked").unwrap();
        let r = cut_along(&t, &edges(&t, &[0, 1, 2, 3, 4, 5])).unwrap();
        assert_eq!(r.component_count(), 4);
        assert!(r.all_triangles());
    }

    #[test]
    fn crossing_arcs_are_rejected() {
        let t = standard_fixture("torus-1-marked").unwrap();
        let anti = tighten(&t, Corner::new(0, 1), &[2], Corner::new(1, 2)).unwrap().arc().unwrap();
        let mut arcs = edges(&t, &[2]);
        arcs.push(anti);
        assert_eq!(cut_along(&t, &arcs), Err(Error::NotDisjoint(0, 1)));
    }

    #[test]
    fn polygon_faces_of_a_split_hexagon() {
        let faces = polygon_faces(6, &[(0, 3), (3, 5)]);
        let mut sizes: Vec<usize> = faces.iter().map(|f| f.0.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![3, 3, 4]);
    }
}
