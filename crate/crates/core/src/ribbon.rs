//! Ribbon graphs of arc systems and their canonical codes.
//!
//! Arcs are subdivided at their crossings. Half-edges (darts) carry a
//! rotation `sigma` around their vertex and the edge involution `alpha`;
//! faces are the orbits of `sigma . alpha`. A code is the BFS encoding from a
//! root dart, minimised over roots, over reversing every rotation, and over
//! every realization reachable by triangle moves. Different minimal-position
//! drawings of one system differ by such moves, so the code depends only on
//! the system up to homeomorphism.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::layout::{ArcEnd, CrossingLayout};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Marked(usize),
    Crossing,
}

#[derive(Clone, Debug)]
pub struct RibbonGraph {
    sigma: Vec<u32>,
    sigma_inv: Vec<u32>,
    vertex: Vec<u32>,
    kinds: Vec<VertexKind>,
    /// arc and segment index of each edge
    segments: Vec<(u32, u32)>,
    marked_total: usize,
}

fn fwd(base: usize, seg: usize) -> usize {
    2 * (base + seg)
}

fn bwd(base: usize, seg: usize) -> usize {
    2 * (base + seg) + 1
}

impl RibbonGraph {
    /// `marked_total` is the number of marked points of the ambient surface.
    pub fn from_layout(layout: &CrossingLayout, marked_total: usize) -> Self {
        let arcs = layout.arc_count();
        let mut base = Vec::with_capacity(arcs);
        let mut segments = Vec::new();
        for (i, seq) in layout.sequences.iter().enumerate() {
            base.push(segments.len());
            for s in 0..=seq.len() {
                segments.push((i as u32, s as u32));
            }
        }
        let darts = 2 * segments.len();
        let mut sigma = vec![u32::MAX; darts];
        let mut vertex = vec![u32::MAX; darts];
        let mut kinds = Vec::new();
        let mut close = |cycle: &[usize], kind: VertexKind, sigma: &mut Vec<u32>, vertex: &mut Vec<u32>| {
            let v = kinds.len() as u32;
            kinds.push(kind);
            for (k, &d) in cycle.iter().enumerate() {
                sigma[d] = cycle[(k + 1) % cycle.len()] as u32;
                vertex[d] = v;
            }
        };
        for (p, rot) in layout.rotations.iter().enumerate() {
            if rot.is_empty() {
                continue;
            }
            let cycle: Vec<usize> = rot
                .iter()
                .map(
                    |&ArcEnd { arc, at_start }| {
                        if at_start {
                            fwd(base[arc], 0)
                        } else {
                            bwd(base[arc], layout.sequences[arc].len())
                        }
                    },
                )
                .collect();
            close(&cycle, VertexKind::Marked(p), &mut sigma, &mut vertex);
        }
        let mut position = vec![[usize::MAX; 2]; layout.crossings.len()];
        for (i, seq) in layout.sequences.iter().enumerate() {
            for (k, &c) in seq.iter().enumerate() {
                let slot = usize::from(layout.crossings[c].arcs.1 == i);
                position[c][slot] = k;
            }
        }
        for (c, x) in layout.crossings.iter().enumerate() {
            let (a, b) = x.arcs;
            let (pa, pb) = (position[c][0], position[c][1]);
            let a_plus = fwd(base[a], pa + 1);
            let a_minus = bwd(base[a], pa);
            let b_plus = fwd(base[b], pb + 1);
            let b_minus = bwd(base[b], pb);
            let cycle =
                if x.positive { [a_plus, b_plus, a_minus, b_minus] } else { [a_plus, b_minus, a_minus, b_plus] };
            close(&cycle, VertexKind::Crossing, &mut sigma, &mut vertex);
        }
        let mut sigma_inv = vec![0; darts];
        for (d, &s) in sigma.iter().enumerate() {
            sigma_inv[s as usize] = d as u32;
        }
        RibbonGraph { sigma, sigma_inv, vertex, kinds, segments, marked_total }
    }

    pub fn dart_count(&self) -> usize {
        self.sigma.len()
    }

    pub fn edge_count(&self) -> usize {
        self.segments.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.kinds.iter().filter(|k| **k == VertexKind::Crossing).count()
    }

    pub fn marked_vertex_count(&self) -> usize {
        self.vertex_count() - self.crossing_count()
    }

    pub fn vertex_kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    /// Face circuits as dart sequences, each starting at its smallest dart.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.dart_count()];
        let mut faces = Vec::new();
        for d0 in 0..self.dart_count() {
            if seen[d0] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = d0;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = self.sigma[d ^ 1] as usize;
            }
            faces.push(face);
        }
        faces
    }

    pub fn euler(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.faces().len() as i64
    }

    pub fn is_connected(&self) -> bool {
        if self.dart_count() == 0 {
            return false;
        }
        let mut seen = vec![false; self.dart_count()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(d) = stack.pop() {
            for n in [self.sigma[d] as usize, d ^ 1] {
                if !seen[n] {
                    seen[n] = true;
                    count += 1;
                    stack.push(n);
                }
            }
        }
        count == self.dart_count()
    }

    /// Whether the graph cuts the ambient closed surface of Euler
    /// characteristic `surface_chi` into disks with every marked point used.
    pub fn verify_filling(&self, surface_chi: i64) -> bool {
        self.is_connected() && self.marked_vertex_count() == self.marked_total && self.euler() == surface_chi
    }

    fn kind_code(&self, d: usize, labels: Labels) -> u32 {
        match self.kinds[self.vertex[d] as usize] {
            VertexKind::Crossing => 0,
            VertexKind::Marked(p) => match labels {
                Labels::Anonymous => 1,
                Labels::Named => 1 + p as u32,
                Labels::Swapped => 1 + (self.marked_total - 1 - p) as u32,
            },
        }
    }

    fn rooted_code(&self, root: usize, mirror: bool, labels: Labels, best: Option<&[u32]>) -> Option<Vec<u32>> {
        let n = self.dart_count();
        let mut label = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        label[root] = 0;
        order.push(root);
        let mut code = Vec::with_capacity(3 * n);
        let mut head = 0;
        while head < order.len() {
            let d = order[head];
            head += 1;
            let rot = if mirror { self.sigma_inv[d] } else { self.sigma[d] } as usize;
            for nb in [rot, d ^ 1] {
                if label[nb] == u32::MAX {
                    label[nb] = order.len() as u32;
                    order.push(nb);
                }
            }
            code.push(label[rot]);
            code.push(label[d ^ 1]);
            code.push(self.kind_code(d, labels));
            if let Some(b) = best {
                // prune as soon as this encoding is already larger
                let k = code.len();
                match code[..k].cmp(&b[..k.min(b.len())]) {
                    std::cmp::Ordering::Greater => return None,
                    std::cmp::Ordering::Less => return Some(self.finish(code, order, label, head, mirror, labels)),
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        Some(code)
    }

    fn finish(
        &self,
        mut code: Vec<u32>,
        mut order: Vec<usize>,
        mut label: Vec<u32>,
        mut head: usize,
        mirror: bool,
        labels: Labels,
    ) -> Vec<u32> {
        while head < order.len() {
            let d = order[head];
            head += 1;
            let rot = if mirror { self.sigma_inv[d] } else { self.sigma[d] } as usize;
            for nb in [rot, d ^ 1] {
                if label[nb] == u32::MAX {
                    label[nb] = order.len() as u32;
                    order.push(nb);
                }
            }
            code.push(label[rot]);
            code.push(label[d ^ 1]);
            code.push(self.kind_code(d, labels));
        }
        code
    }

    fn min_code(&self, mirrors: &[bool], labels: Labels) -> Vec<u32> {
        let mut best: Option<Vec<u32>> = None;
        for root in 0..self.dart_count() {
            if self.kinds[self.vertex[root] as usize] == VertexKind::Crossing {
                continue;
            }
            for &m in mirrors {
                if let Some(c) = self.rooted_code(root, m, labels, best.as_deref()) {
                    if best.as_ref().is_none_or(|b| c < *b) {
                        best = Some(c);
                    }
                }
            }
        }
        best.unwrap_or_default()
    }

    /// Code of this drawing up to relabeling, reflection and marked-point
    /// swap.
    pub fn code(&self) -> CanonicalCode {
        CanonicalCode(self.min_code(&[false, true], Labels::Anonymous))
    }

    fn variant(&self, v: Variant) -> Vec<u32> {
        match v {
            Variant::Oriented => self.min_code(&[false], Labels::Anonymous),
            Variant::Mirrored => self.min_code(&[true], Labels::Anonymous),
            Variant::Named => self.min_code(&[false, true], Labels::Named),
            Variant::Swapped => self.min_code(&[false, true], Labels::Swapped),
        }
    }

    /// Three-sided faces with a crossing at every corner, as the segments
    /// `(arc, segment)` bounding them.
    pub fn triangles(&self) -> Vec<[(u32, u32); 3]> {
        self.faces()
            .into_iter()
            .filter(|f| f.len() == 3 && f.iter().all(|&d| self.kinds[self.vertex[d] as usize] == VertexKind::Crossing))
            .map(|f| [0, 1, 2].map(|k| self.segments[f[k] / 2]))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Labels {
    Anonymous,
    Named,
    Swapped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Variant {
    Oriented,
    Mirrored,
    Named,
    Swapped,
}

/// Canonical encoding of a ribbon graph; ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CanonicalCode(pub Vec<u32>);

impl CanonicalCode {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|v| format!("{v:04x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        if !s.len().is_multiple_of(4) || !s.is_ascii() {
            return None;
        }
        (0..s.len() / 4)
            .map(|k| u32::from_str_radix(&s[4 * k..4 * k + 4], 16).ok())
            .collect::<Option<Vec<_>>>()
            .map(CanonicalCode)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Applies the triangle move across a three-sided face: on each bounding
/// arc the two crossings at the ends of its side trade places.
pub fn triangle_move(layout: &CrossingLayout, face: &[(u32, u32); 3]) -> CrossingLayout {
    let mut out = layout.clone();
    for &(arc, seg) in face {
        let (arc, seg) = (arc as usize, seg as usize);
        out.sequences[arc].swap(seg - 1, seg);
    }
    out
}

/// Every drawing reachable from `layout` by triangle moves.
pub fn triangle_orbit(layout: &CrossingLayout, marked_total: usize, limit: usize) -> Option<Vec<CrossingLayout>> {
    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    seen.insert(layout.sequences.clone());
    queue.push_back(layout.clone());
    while let Some(l) = queue.pop_front() {
        let g = RibbonGraph::from_layout(&l, marked_total);
        for face in g.triangles() {
            let m = triangle_move(&l, &face);
            if seen.insert(m.sequences.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(m);
            }
        }
        out.push(l);
    }
    Some(out)
}

/// Codes of a system over its whole triangle-move orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCodes {
    /// per-drawing codes, used to recognise other drawings of the class
    pub members: BTreeSet<CanonicalCode>,
    pub code: CanonicalCode,
    pub amphichiral: bool,
    pub swap_symmetric: bool,
    pub drawings: usize,
}

/// Upper bound on explored drawings per system.
pub const ORBIT_LIMIT: usize = 200_000;

pub fn orbit_codes(layout: &CrossingLayout, marked_total: usize) -> Option<OrbitCodes> {
    let orbit = triangle_orbit(layout, marked_total, ORBIT_LIMIT)?;
    let graphs: Vec<RibbonGraph> = orbit.iter().map(|l| RibbonGraph::from_layout(l, marked_total)).collect();
    let members: BTreeSet<CanonicalCode> = graphs.iter().map(RibbonGraph::code).collect();
    let code = members.iter().next().cloned().unwrap_or_default();
    let min_of = |v: Variant| graphs.iter().map(|g| g.variant(v)).min().unwrap_or_default();
    Some(OrbitCodes {
        members,
        code,
        amphichiral: min_of(Variant::Oriented) == min_of(Variant::Mirrored),
        swap_symmetric: min_of(Variant::Named) == min_of(Variant::Swapped),
        drawings: orbit.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc::{tighten, ArcClass};
    use crate::layout::{crossing_layout, Crossing};
    use crate::triangulation::{standard_fixture, Corner};

    #[test]
    fn two_disjoint_loops() {
        let t = standard_fixture("torus-2-marked").unwrap();
        let l = crossing_layout(&t, &[ArcClass::from_edge(&t, 0), ArcClass::from_edge(&t, 1)]).unwrap();
        let g = RibbonGraph::from_layout(&l, 2);
        assert_eq!(g.marked_vertex_count(), 1);
        assert_eq!(g.crossing_count(), 0);
        assert_eq!(g.edge_count(), 2);
        assert!(!g.verify_filling(0));
    }

    #[test]
    fn crossing_diagonals_on_once_marked_torus() {
        let t = standard_fixture("torus-1-marked").unwrap();
        let d = ArcClass::from_edge(&t, 2);
        let anti = tighten(&t, Corner::new(0, 1), &[2], Corner::new(1, 2)).unwrap().arc().unwrap();
        let l = crossing_layout(&t, &[d, anti]).unwrap();
        let g = RibbonGraph::from_layout(&l, 1);
        assert_eq!(g.marked_vertex_count(), 1);
        assert_eq!(g.crossing_count(), 1);
        assert_eq!(g.edge_count(), 4);
        // two vertices, four edges: the complement is two disks
        assert!(g.verify_filling(0));
        assert_eq!(g.faces().len(), 2);
    }

    #[test]
    fn single_arc_does_not_fill() {
        let t = standard_fixture("torus-1-marked").unwrap();
        let l = crossing_layout(&t, &[ArcClass::from_edge(&t, 0)]).unwrap();
        assert!(!RibbonGraph::from_layout(&l, 1).verify_filling(0));
    }

    #[test]
    fn hex_round_trip() {
        let c = CanonicalCode(vec![0, 1, 0x2ff, 65535]);
        assert_eq!(CanonicalCode::from_hex(&c.to_hex()), Some(c));
        assert_eq!(CanonicalCode::from_hex("abc"), None);
    }

    #[test]
    fn triangle_move_on_a_pseudoline_triangle() {
        // three arcs on a disk crossing pairwise: a, b, c with crossings
        // x = (a, b), y = (b, c), z = (a, c) bounding a triangle
        let layout = CrossingLayout {
            crossings: vec![
                Crossing { arcs: (0, 1), positive: true },
                Crossing { arcs: (1, 2), positive: true },
                Crossing { arcs: (0, 2), positive: true },
            ],
            sequences: vec![vec![0, 2], vec![0, 1], vec![2, 1]],
            rotations: vec![vec![
                ArcEnd { arc: 0, at_start: true },
                ArcEnd { arc: 1, at_start: true },
                ArcEnd { arc: 2, at_start: true },
                ArcEnd { arc: 0, at_start: false },
                ArcEnd { arc: 1, at_start: false },
                ArcEnd { arc: 2, at_start: false },
            ]],
        };
        let g = RibbonGraph::from_layout(&layout, 1);
        assert_eq!(g.triangles().len(), 1);
        let moved = triangle_move(&layout, &g.triangles()[0]);
        assert_eq!(moved.sequences, vec![vec![2, 0], vec![1, 0], vec![1, 2]]);
        // the move is an involution
        let back = triangle_move(&moved, &RibbonGraph::from_layout(&moved, 1).triangles()[0]);
        assert_eq!(back, layout);
    }
}
