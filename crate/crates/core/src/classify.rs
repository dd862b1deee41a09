//! Deduplication of arc systems into classes up to homeomorphism of the
//! marked surface.
//!
//! Each system is drawn in minimal position and turned into a ribbon graph.
//! Its class code is the least ribbon-graph code over every minimal drawing,
//! so two systems share a code exactly when some homeomorphism carries one
//! onto the other.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arc::{ArcClass, ArcRecord};
use crate::error::{Error, Result};
use crate::layout::{crossing_layout_ranked, CrossingLayout, StrandRanks};
use crate::ribbon::{orbit_codes, CanonicalCode, OrbitCodes, RibbonGraph};
use crate::system::ArcSystem;
use crate::triangulation::IdealTriangulation;

/// One equivalence class of systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemClass {
    pub code: CanonicalCode,
    /// first input system of the class
    pub representative: ArcSystem,
    /// number of input systems in the class
    pub multiplicity: usize,
    pub amphichiral: bool,
    pub swap_symmetric: bool,
    /// minimal drawings visited while canonicalising
    pub drawings: usize,
}

impl SystemClass {
    pub fn size(&self) -> usize {
        self.representative.len()
    }

    pub fn j(&self) -> usize {
        self.representative.non_intersecting_indices().len()
    }

    pub fn crossings(&self) -> usize {
        self.representative.total_crossings()
    }

    /// Number of loop members based at each marked point.
    pub fn loops_per_point(&self, t: &IdealTriangulation) -> Vec<usize> {
        let mut out = vec![0; t.points().len()];
        for a in self.representative.members() {
            if a.is_loop(t) {
                out[t.point_at(a.start())] += 1;
            }
        }
        out
    }

    pub fn entry(&self, t: &IdealTriangulation) -> CatalogEntry {
        CatalogEntry {
            code: self.code.to_hex(),
            surface: t.name().to_string(),
            k: self.representative.k(),
            size: self.size(),
            j: self.j(),
            members: self.representative.members().iter().map(|a| ArcRecord::from_arc(t, a)).collect(),
            crossings: self.crossings(),
            loops: self.loops_per_point(t),
            multiplicity: self.multiplicity,
            amphichiral: self.amphichiral,
            swap_symmetric: self.swap_symmetric,
        }
    }
}

/// JSON row of the catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub code: String,
    pub surface: String,
    pub k: usize,
    pub size: usize,
    #[serde(rename = "J")]
    pub j: usize,
    pub members: Vec<ArcRecord>,
    pub crossings: usize,
    /// loop members per marked point
    pub loops: Vec<usize>,
    pub multiplicity: usize,
    pub amphichiral: bool,
    pub swap_symmetric: bool,
}

impl CatalogEntry {
    pub fn system(&self, t: &IdealTriangulation) -> Result<ArcSystem> {
        if self.surface != t.name() {
            return Err(Error::SurfaceMismatch(self.surface.clone(), t.name().to_string()));
        }
        let arcs = self.members.iter().map(|r| r.resolve(t)).collect::<Result<Vec<_>>>()?;
        ArcSystem::new(t, arcs, self.k)
    }
}

/// Classes sorted by code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub classes: Vec<SystemClass>,
    pub systems: usize,
}

impl Classification {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Number of classes for each `|J|`.
    pub fn by_j(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for c in &self.classes {
            *out.entry(c.j()).or_default() += 1;
        }
        out
    }

    pub fn codes(&self) -> Vec<CanonicalCode> {
        self.classes.iter().map(|c| c.code.clone()).collect()
    }

    pub fn catalog(&self, t: &IdealTriangulation) -> Vec<CatalogEntry> {
        self.classes.iter().map(|c| c.entry(t)).collect()
    }
}

/// Minimal-position layouts for many systems, sharing one strand order.
struct Drawer<'a> {
    t: &'a IdealTriangulation,
    ranks: StrandRanks,
    index: HashMap<ArcClass, usize>,
}

impl<'a> Drawer<'a> {
    fn new(t: &'a IdealTriangulation, systems: &[ArcSystem]) -> Self {
        let mut arcs: Vec<ArcClass> = systems.iter().flat_map(|s| s.members().iter().cloned()).collect();
        arcs.sort();
        arcs.dedup();
        let ranks = StrandRanks::new(t, &arcs);
        let index = arcs.into_iter().enumerate().map(|(i, a)| (a, i)).collect();
        Drawer { t, ranks, index }
    }

    fn layout(&self, s: &ArcSystem) -> Result<CrossingLayout> {
        let view: Vec<&[u32]> = s.members().iter().map(|a| self.ranks.of(self.index[a])).collect();
        crossing_layout_ranked(self.t, s.members(), &view)
    }
}

fn marked_total(t: &IdealTriangulation) -> usize {
    t.points().len()
}

fn filling_graph(t: &IdealTriangulation, layout: &CrossingLayout, which: usize) -> Result<RibbonGraph> {
    let g = RibbonGraph::from_layout(layout, marked_total(t));
    if !g.verify_filling(t.invariants().topological_chi()) {
        return Err(Error::NotFilling(format!(
            "system {which}: V - E + F = {} with {} faces",
            g.euler(),
            g.faces().len()
        )));
    }
    Ok(g)
}

fn orbit(t: &IdealTriangulation, layout: &CrossingLayout) -> Result<OrbitCodes> {
    orbit_codes(layout, marked_total(t))
        .ok_or_else(|| Error::Layout("too many minimal drawings to canonicalise".into()))
}

/// Class code and symmetry flags of a single filling system.
pub fn system_code(t: &IdealTriangulation, s: &ArcSystem) -> Result<OrbitCodes> {
    let drawer = Drawer::new(t, std::slice::from_ref(s));
    let layout = drawer.layout(s)?;
    filling_graph(t, &layout, 0)?;
    orbit(t, &layout)
}

/// Groups filling systems into homeomorphism classes.
///
/// Fails when any system does not fill, since the code then stops
/// determining the system up to homeomorphism.
pub fn classify(t: &IdealTriangulation, systems: &[ArcSystem]) -> Result<Classification> {
    for s in systems {
        if s.surface() != t.name() {
            return Err(Error::SurfaceMismatch(s.surface().to_string(), t.name().to_string()));
        }
    }
    let drawer = Drawer::new(t, systems);
    let drawn: Vec<CanonicalCode> = systems
        .par_iter()
        .enumerate()
        .map(|(i, s)| Ok(filling_graph(t, &drawer.layout(s)?, i)?.code()))
        .collect::<Result<_>>()?;

    // every drawing code seen in an explored orbit, mapped to its class
    let mut known: HashMap<CanonicalCode, usize> = HashMap::new();
    let mut found: Vec<(OrbitCodes, usize)> = Vec::new();
    let mut class_of = Vec::with_capacity(systems.len());
    for (i, code) in drawn.iter().enumerate() {
        let id = match known.get(code) {
            Some(&id) => id,
            None => {
                let o = orbit(t, &drawer.layout(&systems[i])?)?;
                let id = found.len();
                for m in &o.members {
                    known.insert(m.clone(), id);
                }
                found.push((o, i));
                id
            }
        };
        class_of.push(id);
    }

    // distinct orbits can share a class code only through a bug in the
    // orbit search; merge them anyway so the code stays the class key
    let mut by_code: BTreeMap<CanonicalCode, SystemClass> = BTreeMap::new();
    for (id, (o, first)) in found.into_iter().enumerate() {
        let count = class_of.iter().filter(|&&c| c == id).count();
        by_code.entry(o.code.clone()).and_modify(|c| c.multiplicity += count).or_insert(SystemClass {
            code: o.code,
            representative: systems[first].clone(),
            multiplicity: count,
            amphichiral: o.amphichiral,
            swap_symmetric: o.swap_symmetric,
            drawings: o.drawings,
        });
    }
    Ok(Classification { classes: by_code.into_values().collect(), systems: systems.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::construct_hexagon_system;
    use crate::triangulation::standard_fixture;

    #[test]
    fn hexagon_system_is_one_class() {
        let t = standard_fixture("torus-2-marked").unwrap();
        let s = construct_hexagon_system(&t).unwrap();
        let c = classify(&t, &[s.clone(), s.clone()]).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.classes[0].multiplicity, 2);
        assert_eq!(c.classes[0].j(), 3);
        assert_eq!(c.classes[0].code, system_code(&t, &s).unwrap().code);
        // the hexagon has five copies of x and one of y on its boundary
        assert_eq!(c.classes[0].loops_per_point(&t), vec![8, 0]);
    }

    #[test]
    fn non_filling_systems_are_refused() {
        let t = standard_fixture("torus-2-marked").unwrap();
        let s = ArcSystem::new(&t, vec![ArcClass::from_edge(&t, 0)], 1).unwrap();
        assert!(matches!(classify(&t, &[s]), Err(Error::NotFilling(_))));
    }
}
