//! Straight arcs of rational slope on the once-marked torus.
//!
//! The fixture is the unit square with opposite sides identified, split by
//! its main diagonal: triangle 0 lies below the diagonal and triangle 1
//! above it. The arc of slope `p/q` is the image of the segment from the
//! origin to `(q, p)`.

use num_integer::Integer;
use num_rational::Ratio;

use crate::arc::{tighten, ArcClass};
use crate::error::{Error, Result};
use crate::triangulation::{Corner, IdealTriangulation};

type Q = Ratio<i64>;

/// Line families `a x + b y ∈ Z` and the edge each one carries.
const FAMILIES: [((i64, i64), usize); 3] = [((1, 0), 1), ((0, 1), 0), ((-1, 1), 2)];

/// Corner at the lattice point of the face entered when leaving the origin
/// in direction `d`.
fn leaving(d: (i64, i64)) -> Corner {
    // lattice corner of the entered square, in that square's coordinates
    let u = i64::from(d.0 < 0);
    let w = i64::from(d.1 < 0);
    // the point (u, w) + eps d lies below the diagonal
    let below = if w != u { w < u } else { d.1 < d.0 };
    let corners: [(i64, i64); 3] = if below { [(0, 0), (1, 0), (1, 1)] } else { [(0, 0), (1, 1), (0, 1)] };
    let c = corners.iter().position(|&p| p == (u, w)).expect("origin is a corner of the entered face");
    Corner::new(if below { 0 } else { 1 }, c)
}

/// Arc of slope `p / q`; `1/0` is vertical.
pub fn slope_arc(t: &IdealTriangulation, p: i64, q: i64) -> Result<ArcClass> {
    if t.name() != "torus-1-marked" {
        return Err(Error::Invalid(format!("slopes are defined on torus-1-marked, not {}", t.name())));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::Invalid(format!("{p}/{q} is not a reduced slope")));
    }
    let d = (q, p);
    for &((a, b), e) in &FAMILIES {
        if a * d.0 + b * d.1 == 0 {
            return Ok(ArcClass::from_edge(t, e));
        }
    }
    let mut hits: Vec<(Q, usize)> = Vec::new();
    for &((a, b), e) in &FAMILIES {
        let f = a * d.0 + b * d.1;
        let (lo, hi) = if f > 0 { (0, f) } else { (f, 0) };
        hits.extend((lo + 1..hi).map(|n| (Q::new(n, f), e)));
    }
    hits.sort();
    let crossings: Vec<usize> = hits.into_iter().map(|(_, e)| e).collect();
    let arc = tighten(t, leaving(d), &crossings, leaving((-d.0, -d.1)))?
        .arc()
        .ok_or_else(|| Error::Invalid(format!("slope {p}/{q} gave an inessential arc")))?;
    debug_assert_eq!(arc.len(), crossings.len());
    Ok(arc)
}

/// Reduced slopes `p/q` with `|p|, |q| <= n`, one per unoriented direction.
pub fn reduced_slopes(n: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for q in 0..=n {
        for p in -n..=n {
            if p.gcd(&q) == 1 && (q > 0 || p == 1) {
                out.push((p, q));
            }
        }
    }
    out
}
