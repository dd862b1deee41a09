//! Closed-form counts and intersection formulas, used as oracles.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::Rational;

fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn as_count(r: Rational, what: &str) -> Result<u64> {
    if !r.is_integer() || r.is_negative() {
        return Err(domain(format!("{what} = {r} is not a non-negative integer")));
    }
    Ok(r.to_integer() as u64)
}

/// Cardinality `2|χ|(|χ| + 1) − v/2` of a maximal 1-system.
pub fn max_cardinality(chi: Rational, v: u32) -> Result<u64> {
    if !chi.is_negative() {
        return Err(domain(format!("χ = {chi} must be negative")));
    }
    let c = chi.abs();
    let n = Rational::from_integer(2) * c * (c + 1) - Rational::new(v as i64, 2);
    as_count(n, "maximal cardinality")
}

/// `i(a/b, c/d) = |ad − bc| − 1` for slopes on the once-marked torus.
/// Equal slopes give 0 by the class convention.
pub fn slope_intersection(a: i64, b: i64, c: i64, d: i64) -> Result<u64> {
    if a.gcd(&b) != 1 || c.gcd(&d) != 1 {
        return Err(domain(format!("slopes {a}/{b} and {c}/{d} must be in lowest terms")));
    }
    let det = (a * d - b * c).unsigned_abs();
    Ok(det.saturating_sub(1))
}

/// A pair of members of one of the twist families, identified by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyPair {
    /// `v_{j1 k1}` against `v_{j2 k2}`, by index difference
    VV { dj: i64, dk: i64 },
    /// `w_j`, `w_k` with indices in `Z + 1/2`
    WW { j: Rational, k: Rational },
    /// `w_j` against `h(w_k)`
    WhW { j: Rational, k: Rational },
    /// `x_j` (integer index) against `w_k`
    XW { j: i64, k: Rational },
    /// `v_{jk}` against `w_l`
    VW { j: i64, l: Rational },
    /// `y_k`, `y_l` with indices in `(1/3)Z`
    YY { k: Rational, l: Rational },
    /// `c_k`, `c_l` (equally `d_k`, `d_l`) with indices in `(1/2)Z`
    CC { k: Rational, l: Rational },
    /// `c_k` against `d_l`
    CD { k: Rational, l: Rational },
}

fn in_grid(x: Rational, denom: i64) -> bool {
    (x * Rational::from_integer(denom)).is_integer()
}

fn half_odd(x: Rational) -> bool {
    in_grid(x, 2) && !x.is_integer()
}

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(domain(msg))
    }
}

/// Intersection number of two distinct family members.
pub fn family_intersection(p: FamilyPair) -> Result<u64> {
    use FamilyPair::*;
    let floor_abs = |d: Rational| d.abs().floor().to_integer() as u64;
    let ceil_abs = |d: Rational| d.abs().ceil().to_integer() as u64;
    match p {
        VV { dj, dk } => {
            require((dj, dk) != (0, 0), "VV needs distinct members")?;
            let s = dj.unsigned_abs() + dk.unsigned_abs();
            Ok(if dj * dk < 0 { s - 2 } else { s - 1 })
        }
        WW { j, k } => {
            require(half_odd(j) && half_odd(k), "W indices lie in Z + 1/2")?;
            require(j != k, "WW needs distinct members")?;
            Ok(floor_abs(j - k) - 1)
        }
        WhW { j, k } => {
            require(half_odd(j) && half_odd(k), "W indices lie in Z + 1/2")?;
            Ok(0)
        }
        XW { j, k } => {
            require(half_odd(k), "W indices lie in Z + 1/2")?;
            Ok(2 * floor_abs(Rational::from_integer(j) - k))
        }
        VW { j, l } => {
            require(half_odd(l), "W indices lie in Z + 1/2")?;
            Ok(floor_abs(Rational::from_integer(j) - l))
        }
        YY { k, l } => {
            require(in_grid(k, 3) && in_grid(l, 3), "Y indices lie in (1/3)Z")?;
            require(k != l, "YY needs distinct members")?;
            Ok(ceil_abs(k - l) - 1)
        }
        CC { k, l } => {
            require(in_grid(k, 2) && in_grid(l, 2), "C indices lie in (1/2)Z")?;
            require(k != l, "CC needs distinct members")?;
            Ok(ceil_abs(k - l) - 1)
        }
        CD { k, l } => {
            require(in_grid(k, 2) && in_grid(l, 2), "C and D indices lie in (1/2)Z")?;
            Ok(floor_abs(k - l))
        }
    }
}

/// Counts of the polygon construction of a maximal system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PolygonCounts {
    pub cut_arcs: u64,
    pub polygon_vertices: u64,
    pub diagonals: u64,
    pub total: u64,
}

/// Cut along `|χ| + 1 − v/2` disjoint arcs to a `(2|χ| + 2)`-gon and add all
/// of its diagonals.
pub fn polygon_construction_counts(chi: Rational, v: u32) -> Result<PolygonCounts> {
    if !chi.is_negative() {
        return Err(domain(format!("χ = {chi} must be negative")));
    }
    let c = chi.abs();
    let cut = c + 1 - Rational::new(v as i64, 2);
    if !cut.is_integer() || cut <= Rational::zero() {
        return Err(domain(format!("{cut} cut arcs is not a positive integer")));
    }
    let n = as_count(Rational::from_integer(2) * c + 2, "polygon vertices")?;
    let cut_arcs = cut.to_integer() as u64;
    let diagonals = n * (n - 3) / 2;
    Ok(PolygonCounts { cut_arcs, polygon_vertices: n, diagonals, total: cut_arcs + diagonals })
}

/// One row of the formula self-check table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaCheck {
    pub name: String,
    pub expected: u64,
    pub actual: Option<u64>,
}

impl FormulaCheck {
    pub fn passed(&self) -> bool {
        self.actual == Some(self.expected)
    }
}

/// Reference values of every formula.
pub fn formula_checks() -> Vec<FormulaCheck> {
    let r = Rational::from_integer;
    let q = Rational::new;
    let row = |name: &str, expected: u64, actual: Result<u64>| FormulaCheck {
        name: name.to_string(),
        expected,
        actual: actual.ok(),
    };
    let total = |chi, v| polygon_construction_counts(chi, v).map(|p| p.total);
    vec![
        row("max_cardinality(-2, 0)", 12, max_cardinality(r(-2), 0)),
        row("max_cardinality(-1, 0)", 4, max_cardinality(r(-1), 0)),
        row("max_cardinality(-2, 2)", 11, max_cardinality(r(-2), 2)),
        row("slope(1/0, 0/1)", 0, slope_intersection(1, 0, 0, 1)),
        row("slope(1/1, -1/1)", 1, slope_intersection(1, 1, -1, 1)),
        row("slope(2/1, -1/1)", 2, slope_intersection(2, 1, -1, 1)),
        row("VV(1, -1)", 0, family_intersection(FamilyPair::VV { dj: 1, dk: -1 })),
        row("WW(1/2, 3/2)", 0, family_intersection(FamilyPair::WW { j: q(1, 2), k: q(3, 2) })),
        row("YY(0, 4/3)", 1, family_intersection(FamilyPair::YY { k: r(0), l: q(4, 3) })),
        row("CD(0, 1/2)", 0, family_intersection(FamilyPair::CD { k: r(0), l: q(1, 2) })),
        row("polygon(-2, 0).total", 12, total(r(-2), 0)),
        row("polygon(-1, 0).total", 4, total(r(-1), 0)),
        row("polygon(-2, 2).total", 11, total(r(-2), 2)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn cardinalities() {
        assert_eq!(max_cardinality(r(-2), 0), Ok(12));
        assert_eq!(max_cardinality(r(-1), 0), Ok(4));
        assert_eq!(max_cardinality(r(-2), 2), Ok(11));
        assert!(max_cardinality(r(0), 0).is_err());
        assert!(max_cardinality(r(1), 0).is_err());
    }

    #[test]
    fn slopes() {
        assert_eq!(slope_intersection(1, 0, 0, 1), Ok(0));
        assert_eq!(slope_intersection(1, 1, -1, 1), Ok(1));
        assert_eq!(slope_intersection(2, 1, -1, 1), Ok(2));
        assert_eq!(slope_intersection(2, 1, -2, -1), Ok(0));
        assert!(slope_intersection(2, 2, 1, 0).is_err());
    }

    #[test]
    fn family_examples() {
        use FamilyPair::*;
        let q = Rational::new;
        assert_eq!(family_intersection(VV { dj: 1, dk: -1 }), Ok(0));
        assert_eq!(family_intersection(VV { dj: 2, dk: 1 }), Ok(2));
        assert_eq!(family_intersection(WW { j: q(1, 2), k: q(3, 2) }), Ok(0));
        assert_eq!(family_intersection(YY { k: r(0), l: q(4, 3) }), Ok(1));
        assert_eq!(family_intersection(CD { k: r(0), l: q(1, 2) }), Ok(0));
        assert_eq!(family_intersection(CC { k: r(0), l: q(3, 2) }), Ok(1));
        assert_eq!(family_intersection(XW { j: 1, k: q(-1, 2) }), Ok(2));
        assert_eq!(family_intersection(VW { j: 2, l: q(1, 2) }), Ok(1));
        assert_eq!(family_intersection(WhW { j: q(1, 2), k: q(-7, 2) }), Ok(0));
    }

    #[test]
    fn family_domain_errors() {
        use FamilyPair::*;
        let q = Rational::new;
        assert!(family_intersection(VV { dj: 0, dk: 0 }).is_err());
        assert!(family_intersection(WW { j: r(1), k: q(3, 2) }).is_err());
        assert!(family_intersection(WW { j: q(1, 2), k: q(1, 2) }).is_err());
        assert!(family_intersection(YY { k: q(1, 2), l: r(0) }).is_err());
        assert!(family_intersection(CC { k: q(1, 3), l: r(0) }).is_err());
        assert!(family_intersection(XW { j: 0, k: r(1) }).is_err());
    }

    #[test]
    fn symmetric_families() {
        use FamilyPair::*;
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                let (x, y) = (Rational::new(a, 6), Rational::new(b, 6));
                if (a, b) != (0, 0) {
                    assert_eq!(family_intersection(VV { dj: a, dk: b }), family_intersection(VV { dj: -a, dk: -b }));
                }
                for (p, q) in [(YY { k: x, l: y }, YY { k: y, l: x }), (CC { k: x, l: y }, CC { k: y, l: x })] {
                    assert_eq!(family_intersection(p).ok(), family_intersection(q).ok());
                }
                let (w1, w2) = (Rational::new(2 * a + 1, 2), Rational::new(2 * b + 1, 2));
                assert_eq!(
                    family_intersection(WW { j: w1, k: w2 }).ok(),
                    family_intersection(WW { j: w2, k: w1 }).ok()
                );
            }
        }
    }

    #[test]
    fn polygon_counts() {
        let p = polygon_construction_counts(r(-2), 0).unwrap();
        assert_eq!((p.cut_arcs, p.polygon_vertices, p.diagonals, p.total), (3, 6, 9, 12));
        let p = polygon_construction_counts(r(-1), 0).unwrap();
        assert_eq!((p.cut_arcs, p.polygon_vertices, p.diagonals, p.total), (2, 4, 2, 4));
        let p = polygon_construction_counts(r(-2), 2).unwrap();
        assert_eq!((p.cut_arcs, p.polygon_vertices, p.diagonals, p.total), (2, 6, 9, 11));
        assert!(polygon_construction_counts(r(-1), 4).is_err());
    }

    #[test]
    fn polygon_total_matches_cardinality() {
        for twice in 1..=12 {
            let chi = -Rational::new(twice, 2);
            for v in 0..=30u32 {
                if let Ok(p) = polygon_construction_counts(chi, v) {
                    assert_eq!(Ok(p.total), max_cardinality(chi, v), "χ = {chi}, v = {v}");
                }
            }
        }
    }

    #[test]
    fn reference_table_passes() {
        assert!(formula_checks().iter().all(FormulaCheck::passed));
    }
}
