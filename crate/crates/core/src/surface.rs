//! Marked surfaces: topological invariants and the marked Euler characteristic.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Exact half-integer arithmetic for Euler characteristics.
pub type Rational = Ratio<i64>;

/// Topological type of a compact orientable surface `S` with a finite set of
/// marked points `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub genus: u32,
    pub boundary_components: u32,
    /// Marked points in the interior of `S`.
    pub interior_marked: u32,
    /// Marked points on `∂S`.
    pub boundary_marked: u32,
}

impl SurfaceInvariants {
    pub fn new(genus: u32, boundary_components: u32, interior_marked: u32, boundary_marked: u32) -> Self {
        SurfaceInvariants { genus, boundary_components, interior_marked, boundary_marked }
    }

    /// A closed surface of genus `genus` with `marked` interior marked points.
    pub fn closed(genus: u32, marked: u32) -> Self {
        SurfaceInvariants::new(genus, 0, marked, 0)
    }

    pub fn chi(&self) -> Rational {
        euler_characteristic(self)
    }

    /// Topological Euler characteristic of `S` itself, ignoring `P`.
    pub fn topological_chi(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary_components as i64
    }

    /// Closed surfaces cannot carry boundary marked points.
    pub fn is_consistent(&self) -> bool {
        self.boundary_components > 0 || self.boundary_marked == 0
    }

    pub fn is_disk(&self) -> bool {
        self.genus == 0 && self.boundary_components == 1
    }
}

/// `χ(S, P) = 2 − 2g − b − p − v/2`, computed exactly.
pub fn euler_characteristic(inv: &SurfaceInvariants) -> Rational {
    let whole = inv.topological_chi() - inv.interior_marked as i64;
    Rational::from_integer(whole) - Rational::new(inv.boundary_marked as i64, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_of_standard_surfaces() {
        assert_eq!(euler_characteristic(&SurfaceInvariants::closed(1, 2)), Rational::from_integer(-2));
        assert_eq!(euler_characteristic(&SurfaceInvariants::closed(1, 1)), Rational::from_integer(-1));
        // ideal triangle: a disk with three boundary marked points
        assert_eq!(euler_characteristic(&SurfaceInvariants::new(0, 1, 0, 3)), Rational::new(-1, 2));
    }

    #[test]
    fn odd_boundary_count_stays_exact() {
        let chi = SurfaceInvariants::new(0, 1, 1, 5).chi();
        assert_eq!(chi, Rational::new(-5, 2));
        assert_eq!(*chi.denom(), 2);
    }

    #[test]
    fn closed_surfaces_have_no_boundary_marks() {
        assert!(SurfaceInvariants::closed(2, 0).is_consistent());
        assert!(!SurfaceInvariants::new(1, 0, 0, 2).is_consistent());
    }
}
