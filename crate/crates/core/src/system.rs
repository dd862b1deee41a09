//! Arc systems, the bounded arc pool and its compatibility graph.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arc::{enumerate_arc_classes, ArcClass, ArcRecord};
use crate::clique::{has_clique_of_size, maximal_cliques, Graph};
use crate::error::{Error, Result};
use crate::intersection::{path_intersection, self_intersection, ArcPath};
use crate::triangulation::IdealTriangulation;

/// Intersection numbers above this are stored saturated.
const SATURATE: usize = u16::MAX as usize;

fn intersection_matrix(paths: &[ArcPath]) -> Vec<Vec<u16>> {
    (0..paths.len())
        .into_par_iter()
        .map(|i| {
            (0..paths.len())
                .map(|j| if i == j { 0 } else { path_intersection(&paths[i], &paths[j]).min(SATURATE) as u16 })
                .collect()
        })
        .collect()
}

/// All simple essential arcs up to a crossing bound, with their pairwise
/// intersection numbers.
#[derive(Clone, Debug)]
pub struct ArcPool {
    bound: usize,
    arcs: Vec<ArcClass>,
    matrix: Vec<Vec<u16>>,
}

impl ArcPool {
    pub fn new(t: &IdealTriangulation, bound: usize) -> Self {
        let arcs = enumerate_arc_classes(t, bound);
        let paths: Vec<ArcPath> = arcs.iter().map(|a| ArcPath::new(t, a)).collect();
        let matrix = intersection_matrix(&paths);
        ArcPool { bound, arcs, matrix }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn arcs(&self) -> &[ArcClass] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn index_of(&self, a: &ArcClass) -> Option<usize> {
        self.arcs.binary_search(a).ok()
    }

    pub fn intersection(&self, i: usize, j: usize) -> usize {
        self.matrix[i][j] as usize
    }

    pub fn matrix(&self) -> &[Vec<u16>] {
        &self.matrix
    }
}

/// Pool arcs as vertices, joined when they intersect at most `k` times.
#[derive(Clone, Debug)]
pub struct CompatibilityGraph {
    k: usize,
    /// pool index of each vertex
    vertices: Vec<usize>,
    graph: Graph,
}

impl CompatibilityGraph {
    pub fn new(pool: &ArcPool, k: usize) -> Self {
        Self::restricted(pool, k, |_| true)
    }

    /// Graph on the pool arcs accepted by `keep`.
    pub fn restricted(pool: &ArcPool, k: usize, keep: impl Fn(&ArcClass) -> bool) -> Self {
        let vertices: Vec<usize> = (0..pool.len()).filter(|&i| keep(&pool.arcs[i])).collect();
        let graph = Graph::from_fn(vertices.len(), |a, b| pool.intersection(vertices[a], vertices[b]) <= k);
        CompatibilityGraph { k, vertices, graph }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn pool_index(&self, v: usize) -> usize {
        self.vertices[v]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Whether some k-system of `size` pool arcs exists.
    pub fn has_system_of_size(&self, size: usize) -> bool {
        has_clique_of_size(&self.graph, size)
    }

    /// Largest size of a k-system within the graph.
    pub fn clique_number(&self) -> usize {
        crate::clique::clique_number(&self.graph)
    }
}

/// All maximal cliques with at least `floor` members, as sorted pool
/// indices in lexicographic order.
pub fn maximum_cliques(g: &CompatibilityGraph, floor: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> =
        maximal_cliques(&g.graph, floor).into_iter().map(|c| c.into_iter().map(|v| g.vertices[v]).collect()).collect();
    out.sort_unstable();
    out
}

/// Outcome of a k-system check; on failure a pair that breaks it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSystemCheck {
    pub witness: Option<(ArcClass, ArcClass)>,
}

impl KSystemCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Pairwise distinct and pairwise intersecting at most `k` times.
pub fn is_k_system(t: &IdealTriangulation, arcs: &[ArcClass], k: usize) -> KSystemCheck {
    let paths: Vec<ArcPath> = arcs.iter().map(|a| ArcPath::new(t, a)).collect();
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            if arcs[i] == arcs[j] || path_intersection(&paths[i], &paths[j]) > k {
                return KSystemCheck { witness: Some((arcs[i].clone(), arcs[j].clone())) };
            }
        }
    }
    KSystemCheck { witness: None }
}

/// A k-system with its members in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSystem {
    surface: String,
    k: usize,
    members: Vec<ArcClass>,
    matrix: Vec<Vec<usize>>,
}

impl ArcSystem {
    pub fn new(t: &IdealTriangulation, arcs: Vec<ArcClass>, k: usize) -> Result<Self> {
        let mut members = arcs;
        members.sort();
        for a in &members {
            if self_intersection(&ArcPath::new(t, a)) > 0 {
                return Err(Error::NotSimple);
            }
        }
        let paths: Vec<ArcPath> = members.iter().map(|a| ArcPath::new(t, a)).collect();
        let n = members.len();
        let mut matrix = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                if members[i] == members[j] {
                    return Err(Error::Invalid(format!("arc {} listed twice", members[i])));
                }
                let x = path_intersection(&paths[i], &paths[j]);
                if x > k {
                    return Err(Error::Invalid(format!(
                        "arcs {} and {} meet {x} times, more than k = {k}",
                        members[i], members[j]
                    )));
                }
                matrix[i][j] = x;
                matrix[j][i] = x;
            }
        }
        Ok(ArcSystem { surface: t.name().to_string(), k, members, matrix })
    }

    /// Members drawn from a pool, without recomputing intersections.
    pub fn from_pool(pool: &ArcPool, surface: &str, indices: &[usize], k: usize) -> Self {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        let members = idx.iter().map(|&i| pool.arcs[i].clone()).collect();
        let matrix = idx.iter().map(|&i| idx.iter().map(|&j| pool.intersection(i, j)).collect()).collect();
        ArcSystem { surface: surface.to_string(), k, members, matrix }
    }

    pub fn surface(&self) -> &str {
        &self.surface
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn members(&self) -> &[ArcClass] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn intersection(&self, i: usize, j: usize) -> usize {
        self.matrix[i][j]
    }

    pub fn matrix(&self) -> &[Vec<usize>] {
        &self.matrix
    }

    pub fn total_crossings(&self) -> usize {
        self.matrix.iter().flatten().sum::<usize>() / 2
    }

    /// Positions of the members disjoint from every other member.
    pub fn non_intersecting_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.matrix[i].iter().all(|&x| x == 0)).collect()
    }

    pub fn subsystem(&self, indices: &[usize]) -> ArcSystem {
        let members = indices.iter().map(|&i| self.members[i].clone()).collect();
        let matrix = indices.iter().map(|&i| indices.iter().map(|&j| self.matrix[i][j]).collect()).collect();
        ArcSystem { surface: self.surface.clone(), k: self.k, members, matrix }
    }

    pub fn record(&self, t: &IdealTriangulation) -> SystemRecord {
        SystemRecord {
            surface: self.surface.clone(),
            k: self.k,
            members: self.members.iter().map(|a| ArcRecord::from_arc(t, a)).collect(),
            non_intersecting: self.non_intersecting_indices().len(),
            crossings: self.total_crossings(),
        }
    }
}

/// JSON form of a system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemRecord {
    pub surface: String,
    pub k: usize,
    pub members: Vec<ArcRecord>,
    #[serde(rename = "J", default)]
    pub non_intersecting: usize,
    #[serde(default)]
    pub crossings: usize,
}

impl SystemRecord {
    pub fn resolve(&self, t: &IdealTriangulation) -> Result<ArcSystem> {
        if self.surface != t.name() {
            return Err(Error::SurfaceMismatch(self.surface.clone(), t.name().to_string()));
        }
        let arcs = self.members.iter().map(|r| r.resolve(t)).collect::<Result<Vec<_>>>()?;
        ArcSystem::new(t, arcs, self.k)
    }
}

/// The members disjoint from all other members.
pub fn non_intersecting_subset(s: &ArcSystem) -> ArcSystem {
    s.subsystem(&s.non_intersecting_indices())
}

/// Whether no pool arc outside `s` can join it as a k-system.
pub fn is_saturated(t: &IdealTriangulation, s: &ArcSystem, pool: &ArcPool) -> bool {
    saturation_witness(t, s, pool).is_none()
}

/// A pool arc that extends `s`, if any.
pub fn saturation_witness(t: &IdealTriangulation, s: &ArcSystem, pool: &ArcPool) -> Option<ArcClass> {
    let idx: Option<Vec<usize>> = s.members.iter().map(|a| pool.index_of(a)).collect();
    match idx {
        Some(idx) => (0..pool.len())
            .into_par_iter()
            .find_first(|&c| !idx.contains(&c) && idx.iter().all(|&m| pool.intersection(c, m) <= s.k))
            .map(|c| pool.arcs[c].clone()),
        None => {
            // members outside the pool: fall back to direct computation
            let paths: Vec<ArcPath> = s.members.iter().map(|a| ArcPath::new(t, a)).collect();
            pool.arcs
                .par_iter()
                .find_first(|a| {
                    !s.members.contains(a) && {
                        let p = ArcPath::new(t, a);
                        paths.iter().all(|m| path_intersection(&p, m) <= s.k)
                    }
                })
                .cloned()
        }
    }
}

/// Edges cut open to form the hexagon: the horizontal and vertical loops at
/// the lattice point and one half-diagonal joining it to the centre.
pub const HEXAGON_CUT: [usize; 3] = [0, 1, 2];

/// The three cut arcs together with the nine diagonals of the hexagon
/// obtained by cutting the twice-marked torus along them.
pub fn construct_hexagon_system(t: &IdealTriangulation) -> Result<ArcSystem> {
    if t.name() != "torus-2-marked" {
        return Err(Error::Invalid(format!("the hexagon construction needs torus-2-marked, not {}", t.name())));
    }
    let cut: Vec<ArcClass> = HEXAGON_CUT.iter().map(|&e| ArcClass::from_edge(t, e)).collect();
    // arcs inside the hexagon never cross a cut edge; the hexagon has four
    // triangles, so three crossings suffice
    let inside: Vec<ArcClass> = enumerate_arc_classes(t, t.triangle_count() - 1)
        .into_iter()
        .filter(|a| !cut.contains(a) && a.crossings().iter().all(|e| !HEXAGON_CUT.contains(e)))
        .collect();
    if inside.len() != 9 {
        return Err(Error::Invalid(format!("expected 9 hexagon diagonals, found {}", inside.len())));
    }
    let mut arcs = cut;
    arcs.extend(inside);
    ArcSystem::new(t, arcs, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc::tighten;
    use crate::triangulation::{standard_fixture, Corner};

    fn four_slopes(t: &IdealTriangulation) -> Vec<ArcClass> {
        let anti = tighten(t, Corner::new(0, 1), &[2], Corner::new(1, 2)).unwrap().arc().unwrap();
        vec![ArcClass::from_edge(t, 0), ArcClass::from_edge(t, 1), ArcClass::from_edge(t, 2), anti]
    }

    #[test]
    fn k_system_checks() {
        let t = standard_fixture("torus-1-marked").unwrap();
        let arcs = four_slopes(&t);
        assert!(is_k_system(&t, &arcs, 1).holds());
        let w = is_k_system(&t, &arcs, 0).witness.unwrap();
        let d = ArcClass::from_edge(&t, 2);
        assert!(w.0 == d || w.1 == d);
        assert!(is_k_system(&t, &[], 0).holds());
    }

    #[test]
    fn non_intersecting_subset_of_four_slopes() {
        let t = standard_fixture("torus-1-marked").unwrap();
        let s = ArcSystem::new(&t, four_slopes(&t), 1).unwrap();
        let j = non_intersecting_subset(&s);
        let mut expect = [ArcClass::from_edge(&t, 0), ArcClass::from_edge(&t, 1)];
        expect.sort();
        assert_eq!(j.members(), &expect[..]);
        let empty = ArcSystem::new(&t, vec![], 1).unwrap();
        assert!(non_intersecting_subset(&empty).is_empty());
    }

    #[test]
    fn saturation_on_once_marked_torus() {
        let t = standard_fixture("torus-1-marked").unwrap();
        let pool = ArcPool::new(&t, 6);
        let s = ArcSystem::new(&t, four_slopes(&t), 1).unwrap();
        assert!(is_saturated(&t, &s, &pool));
        let single = ArcSystem::new(&t, vec![ArcClass::from_edge(&t, 1)], 1).unwrap();
        assert!(!is_saturated(&t, &single, &pool));
    }

    #[test]
    fn hexagon_system() {
        let t = standard_fixture("torus-2-marked").unwrap();
        let s = construct_hexagon_system(&t).unwrap();
        assert_eq!(s.len(), 12);
        assert_eq!(non_intersecting_subset(&s).len(), 3);
        assert!(is_k_system(&t, s.members(), 1).holds());
        assert!(construct_hexagon_system(&standard_fixture("torus-1-marked").unwrap()).is_err());
    }

    #[test]
    fn cliques_on_once_marked_torus() {
        let t = standard_fixture("torus-1-marked").unwrap();
        let pool = ArcPool::new(&t, 4);
        let g = CompatibilityGraph::new(&pool, 1);
        assert!(!maximum_cliques(&g, 4).is_empty());
        assert!(!g.has_system_of_size(5));
        assert_eq!(g.clique_number(), 4);
    }

    #[test]
    fn record_round_trip() {
        let t = standard_fixture("torus-2-marked").unwrap();
        let s = construct_hexagon_system(&t).unwrap();
        let json = serde_json::to_string(&s.record(&t)).unwrap();
        let back: SystemRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.resolve(&t).unwrap(), s);
    }
}
