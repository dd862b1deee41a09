//! The verification suite: cardinality, classification and the structural
//! facts about maximal 1-systems, checked at two crossing bounds.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arc::ArcClass;
use crate::classify::{classify, system_code, CatalogEntry, Classification};
use crate::cut::cut_along;
use crate::error::{Error, Result};
use crate::formulas::{max_cardinality, slope_intersection};
use crate::intersection::geometric_intersection;
use crate::slope::{reduced_slopes, slope_arc};
use crate::system::{
    construct_hexagon_system, is_k_system, is_saturated, maximum_cliques, non_intersecting_subset, ArcPool, ArcSystem,
    CompatibilityGraph,
};
use crate::triangulation::{standard_fixture, IdealTriangulation};

/// Smallest bound at which the class count was observed to be stable.
pub const DEFAULT_BOUND: usize = 4;
/// Offset of the second bound compared against the first.
pub const BOUND_STEP: usize = 2;
/// Number of classes of maximal 1-systems on the twice-marked torus.
pub const EXPECTED_CLASSES: usize = 23;
/// Classes per size of the non-intersecting subset.
pub const EXPECTED_J: [(usize, usize); 4] = [(0, 3), (1, 5), (2, 12), (3, 3)];

const SURFACE: &str = "torus-2-marked";
const ONCE_MARKED: &str = "torus-1-marked";

/// Largest surface entries checked by the slope formula.
const SLOPE_RANGE: i64 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub surface: String,
    pub bounds: [usize; 2],
    pub rows: Vec<CheckRow>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn row(&self, id: u8) -> Option<&CheckRow> {
        self.rows.iter().find(|r| r.id == id)
    }

    /// Plain-text table, one line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "surface {} at crossing bounds {} and {}", self.surface, self.bounds[0], self.bounds[1]);
        for r in &self.rows {
            let mark = if r.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{:>2} {mark} {:<16} {}", r.id, r.name, r.detail);
        }
        let total = self.rows.iter().filter(|r| r.passed).count();
        let _ = writeln!(out, "{total}/{} checks passed", self.rows.len());
        out
    }
}

/// Maximal 1-systems found in the pool at one bound.
pub struct Survey {
    pub bound: usize,
    pub pool: ArcPool,
    pub max_size: usize,
    pub larger_exists: bool,
    pub systems: Vec<ArcSystem>,
    pub classes: Result<Classification>,
}

impl Survey {
    pub fn new(t: &IdealTriangulation, bound: usize) -> Self {
        let pool = ArcPool::new(t, bound);
        let g = CompatibilityGraph::new(&pool, 1);
        let max_size = g.clique_number();
        let larger_exists = g.has_system_of_size(max_size + 1);
        let systems: Vec<ArcSystem> = maximum_cliques(&g, max_size.max(1))
            .into_iter()
            .filter(|c| c.len() == max_size)
            .map(|c| ArcSystem::from_pool(&pool, t.name(), &c, 1))
            .collect();
        let classes = classify(t, &systems);
        Survey { bound, pool, max_size, larger_exists, systems, classes }
    }

    pub fn catalog(&self, t: &IdealTriangulation) -> Result<Vec<CatalogEntry>> {
        self.classes.clone().map(|c| c.catalog(t))
    }
}

fn row(id: u8, name: &str, passed: bool, detail: String) -> CheckRow {
    CheckRow { id, name: name.to_string(), passed, detail }
}

fn unstable(what: &str, a: impl std::fmt::Display, b: impl std::fmt::Display, bounds: [usize; 2]) -> String {
    format!("bound not stabilized: {what} {a} at bound {} but {b} at bound {}", bounds[0], bounds[1])
}

fn expected_size(t: &IdealTriangulation) -> Result<usize> {
    let inv = t.invariants();
    Ok(max_cardinality(inv.chi(), inv.boundary_marked)? as usize)
}

fn check_cardinality(t: &IdealTriangulation, s: [&Survey; 2]) -> Result<CheckRow> {
    let want = expected_size(t)?;
    let bounds = [s[0].bound, s[1].bound];
    let detail = if s[0].max_size != s[1].max_size {
        unstable("maximum 1-system size", s[0].max_size, s[1].max_size, bounds)
    } else {
        format!(
            "maximum {} (expected {want}), size {} {} (pools of {} and {} arcs)",
            s[0].max_size,
            want + 1,
            if s[0].larger_exists || s[1].larger_exists { "exists" } else { "absent" },
            s[0].pool.len(),
            s[1].pool.len()
        )
    };
    let passed = s.iter().all(|x| x.max_size == want && !x.larger_exists);
    Ok(row(1, "cardinality", passed, detail))
}

fn class_counts(s: &Survey) -> std::result::Result<&Classification, String> {
    s.classes.as_ref().map_err(|e| format!("classification at bound {} failed: {e}", s.bound))
}

fn check_classes(s: [&Survey; 2]) -> CheckRow {
    let bounds = [s[0].bound, s[1].bound];
    let (a, b) = match (class_counts(s[0]), class_counts(s[1])) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return row(2, "classification", false, e),
    };
    if a.codes() != b.codes() {
        let detail = if a.len() != b.len() {
            unstable("class count", a.len(), b.len(), bounds)
        } else {
            format!("bound not stabilized: class codes differ between bounds {} and {}", bounds[0], bounds[1])
        };
        return row(2, "classification", false, detail);
    }
    row(
        2,
        "classification",
        a.len() == EXPECTED_CLASSES,
        format!(
            "{} classes (expected {EXPECTED_CLASSES}) from {} and {} maximal systems",
            a.len(),
            a.systems,
            b.systems
        ),
    )
}

fn j_text(m: &BTreeMap<usize, usize>) -> String {
    let parts: Vec<String> = m.iter().rev().map(|(j, n)| format!("|J|={j}: {n}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn check_j_distribution(s: [&Survey; 2]) -> CheckRow {
    let (a, b) = match (class_counts(s[0]), class_counts(s[1])) {
        (Ok(a), Ok(b)) => (a.by_j(), b.by_j()),
        (Err(e), _) | (_, Err(e)) => return row(3, "J distribution", false, e),
    };
    let want: BTreeMap<usize, usize> = EXPECTED_J.into_iter().collect();
    if a != b {
        return row(
            3,
            "J distribution",
            false,
            unstable("distribution", j_text(&a), j_text(&b), [s[0].bound, s[1].bound]),
        );
    }
    row(3, "J distribution", a == want, format!("{} (expected {})", j_text(&a), j_text(&want)))
}

fn check_once_marked(bound: usize) -> Result<CheckRow> {
    let t = standard_fixture(ONCE_MARKED)?;
    let want = expected_size(&t)?;
    let pool = ArcPool::new(&t, bound);
    let g = CompatibilityGraph::new(&pool, 1);
    let max = g.clique_number();
    let larger = g.has_system_of_size(max + 1);
    let slopes = [(1, 1), (-1, 1), (1, 0), (0, 1)];
    let arcs: Vec<ArcClass> = slopes.iter().map(|&(p, q)| slope_arc(&t, p, q)).collect::<Result<_>>()?;
    // each slope is pinned down by how often it meets the three edges
    let signature: Vec<String> = arcs
        .iter()
        .zip(slopes)
        .map(|(a, (p, q))| {
            let hits: Vec<String> = (0..t.edge_count())
                .map(|e| geometric_intersection(&t, a, &ArcClass::from_edge(&t, e)).to_string())
                .collect();
            format!("{p}/{q}:({})", hits.join(","))
        })
        .collect();
    let system = ArcSystem::new(&t, arcs.clone(), 1)?;
    let valid = is_k_system(&t, &arcs, 1).holds();
    let saturated = is_saturated(&t, &system, &pool);
    let passed = max == want && !larger && valid && saturated && system.len() == want;
    Ok(row(
        4,
        "once-marked",
        passed,
        format!(
            "maximum {max} (expected {want}); four slopes {} 1-system, {}; edge hits {}",
            if valid { "form a" } else { "do not form a" },
            if saturated { "saturated" } else { "not saturated" },
            signature.join(" ")
        ),
    ))
}

fn check_slope_formula() -> Result<CheckRow> {
    let t = standard_fixture(ONCE_MARKED)?;
    let slopes = reduced_slopes(SLOPE_RANGE);
    let arcs: Vec<ArcClass> = slopes.iter().map(|&(p, q)| slope_arc(&t, p, q)).collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for i in 0..slopes.len() {
        for j in i + 1..slopes.len() {
            pairs.push((i, j));
        }
    }
    let bad: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let ((a, b), (c, d)) = (slopes[i], slopes[j]);
            let want = slope_intersection(a, b, c, d).ok()? as usize;
            let got = geometric_intersection(&t, &arcs[i], &arcs[j]);
            (want != got).then(|| format!("{a}/{b} vs {c}/{d}: {got} != {want}"))
        })
        .collect();
    let detail = match bad.first() {
        None => format!("{} slope pairs with entries up to {SLOPE_RANGE} agree", pairs.len()),
        Some(first) => format!("{} of {} pairs disagree, first {first}", bad.len(), pairs.len()),
    };
    Ok(row(5, "slope formula", bad.is_empty(), detail))
}

fn check_non_loop_bound(t: &IdealTriangulation, pool: &ArcPool) -> CheckRow {
    let g = CompatibilityGraph::restricted(pool, 0, |a| !a.is_loop(t));
    let max = g.clique_number();
    let chi = t.invariants().chi();
    let want = (chi.abs() * 2).to_integer() as usize;
    row(
        6,
        "non-loop bound",
        max == want,
        format!("largest disjoint family of non-loop arcs has {max} members (expected 2|chi| = {want})"),
    )
}

fn check_triangulations(t: &IdealTriangulation, pool: &ArcPool) -> Result<CheckRow> {
    // V - E + F = chi with 2E = 3F and V marked points
    let v = t.points().len() as i64;
    let want = (3 * (v - t.invariants().topological_chi())) as usize;
    let g = CompatibilityGraph::new(pool, 0);
    let max = g.clique_number();
    let cliques: Vec<Vec<usize>> = maximum_cliques(&g, max.max(1)).into_iter().filter(|c| c.len() == max).collect();
    let results: Vec<bool> = cliques
        .par_iter()
        .map(|c| {
            let arcs: Vec<ArcClass> = c.iter().map(|&i| pool.arcs()[i].clone()).collect();
            cut_along(t, &arcs).map(|r| r.all_triangles())
        })
        .collect::<Result<_>>()?;
    let good = results.iter().filter(|&&b| b).count();
    Ok(row(
        7,
        "triangulations",
        max == want && good == results.len() && !results.is_empty(),
        format!(
            "maximal 0-systems have {max} arcs (expected {want}); {good} of {} cut into triangles only",
            results.len()
        ),
    ))
}

fn check_cutting(t: &IdealTriangulation, s: &Survey) -> Result<CheckRow> {
    let chi = t.invariants().chi();
    let outcomes: Vec<(bool, bool, usize)> = s
        .systems
        .par_iter()
        .map(|sys| {
            let j = non_intersecting_subset(sys);
            let r = cut_along(t, j.members())?;
            Ok((r.total_chi() == chi, r.is_connected(), j.len()))
        })
        .collect::<Result<_>>()?;
    let additive = outcomes.iter().filter(|o| o.0).count();
    let connected = outcomes.iter().filter(|o| o.1).count();
    let largest = outcomes.iter().map(|o| o.2).max().unwrap_or(0);
    let n = outcomes.len();
    Ok(row(
        8,
        "cutting along J",
        n > 0 && additive == n && connected == n && largest <= 3,
        format!(
            "{n} systems: chi additive for {additive}, connected complement for {connected}, largest |J| = {largest}"
        ),
    ))
}

fn check_saturation(t: &IdealTriangulation, s: &Survey, pool: &ArcPool) -> CheckRow {
    let classes = match class_counts(s) {
        Ok(c) => c,
        Err(e) => return row(9, "saturation", false, e),
    };
    let saturated = classes.classes.par_iter().filter(|c| is_saturated(t, &c.representative, pool)).count();
    row(
        9,
        "saturation",
        saturated == classes.len() && !classes.is_empty(),
        format!("{saturated} of {} representatives saturated against {} pool arcs", classes.len(), pool.len()),
    )
}

fn check_hexagon(t: &IdealTriangulation, s: &Survey) -> Result<CheckRow> {
    let hex = construct_hexagon_system(t)?;
    let valid = is_k_system(t, hex.members(), 1).holds() && hex.len() == expected_size(t)?;
    let code = system_code(t, &hex)?.code;
    let classes = match class_counts(s) {
        Ok(c) => c,
        Err(e) => return Ok(row(10, "hexagon", false, e)),
    };
    let position = classes.classes.iter().position(|c| c.code == code);
    let matched = position.filter(|&i| classes.classes[i].j() == 3);
    let detail = match position {
        Some(i) => format!(
            "{}-arc system with |J| = {}, matches class {} (|J| = {})",
            hex.len(),
            hex.non_intersecting_indices().len(),
            i + 1,
            classes.classes[i].j()
        ),
        None => {
            let hex_code = code.to_hex();
            format!("{}-arc system with code {}... matches no class", hex.len(), &hex_code[..hex_code.len().min(24)])
        }
    };
    Ok(row(10, "hexagon", valid && matched.is_some(), detail))
}

fn catalog_bytes(t: &IdealTriangulation, bound: usize) -> Result<String> {
    let s = Survey::new(t, bound);
    let catalog = s.catalog(t)?;
    serde_json::to_string(&catalog).map_err(|e| Error::Invalid(e.to_string()))
}

fn check_determinism(t: &IdealTriangulation, s: &Survey) -> Result<CheckRow> {
    let reference = serde_json::to_string(&s.catalog(t)?).map_err(|e| Error::Invalid(e.to_string()))?;
    let mut agree = Vec::new();
    for threads in [1, 3] {
        let pool =
            rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| Error::Invalid(e.to_string()))?;
        let bytes = pool.install(|| catalog_bytes(t, s.bound))?;
        agree.push(bytes == reference);
    }
    let all = agree.iter().all(|&b| b);
    Ok(row(
        11,
        "determinism",
        all,
        format!(
            "catalog at bound {} recomputed with 1 and 3 threads: {}",
            s.bound,
            if all { "byte-identical" } else { "differs" }
        ),
    ))
}

/// Runs every check on the twice-marked torus at `bound` and
/// `bound + BOUND_STEP`.
pub fn run_verify(surface: &str, bound: usize) -> Result<VerifyReport> {
    let t = standard_fixture(surface)?;
    if surface != SURFACE {
        return Err(Error::Invalid(format!("the verification suite targets {SURFACE}, not {surface}")));
    }
    let upper = bound + BOUND_STEP;
    let (low, high) = rayon::join(|| Survey::new(&t, bound), || Survey::new(&t, upper));
    let pair = [&low, &high];
    let rows = vec![
        check_cardinality(&t, pair)?,
        check_classes(pair),
        check_j_distribution(pair),
        check_once_marked(upper)?,
        check_slope_formula()?,
        check_non_loop_bound(&t, &low.pool),
        check_triangulations(&t, &low.pool)?,
        check_cutting(&t, &low)?,
        check_saturation(&t, &low, &high.pool),
        check_hexagon(&t, &low)?,
        check_determinism(&t, &low)?,
    ];
    Ok(VerifyReport { surface: surface.to_string(), bounds: [bound, upper], rows })
}
