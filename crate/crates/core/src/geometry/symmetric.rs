//! The one-parameter family of equilateral pentagons symmetric under the
//! reflection swapping `1 ↔ 2` and `3 ↔ 5`.
//!
//! With `q1 = (-1/2, 0)`, `q2 = (1/2, 0)`, `q3 = (x3, y3)`, `q4 = (0, y4)` and
//! `q5 = (-x3, y3)`, the unit-edge constraints are solved for `(x3, y3)` in
//! terms of `y4`:
//!
//! ```text
//! y3 = (8 y4³ + 2 y4 ± √ρ) / (4 (4 y4² + 1))
//! x3 = (4 y4² + 1 ± 2 y4 √ρ) / (4 (4 y4² + 1))
//! ρ  = -16 y4⁴ + 56 y4² + 15
//! ```
//!
//! with matched signs; `+` is branch A and `-` branch B.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{PlanarConfiguration, Point2};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Positive root of the radicand, `√15 / 2`.
pub const Y4_MAX: f64 = 1.936_491_673_103_708_5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    A,
    B,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::A => 1.0,
            Branch::B => -1.0,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::A => f.write_str("A"),
            Branch::B => f.write_str("B"),
        }
    }
}

impl FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Branch::A),
            "B" | "b" => Ok(Branch::B),
            other => Err(Error::Parse(format!("unknown branch {other:?}"))),
        }
    }
}

/// A point `(y4, branch)` on the symmetric equilateral family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetricShape {
    pub y4: f64,
    pub branch: Branch,
}

pub(crate) fn radicand(y4: f64) -> f64 {
    let s = y4 * y4;
    15.0 + s * (56.0 - 16.0 * s)
}

impl SymmetricShape {
    pub fn new(y4: f64, branch: Branch) -> Result<Self> {
        if !y4.is_finite() || y4 < 0.0 {
            return Err(Error::OutOfDomain(format!("y4 = {y4} must be >= 0")));
        }
        if radicand(y4) < 0.0 {
            return Err(Error::OutOfDomain(format!(
                "y4 = {y4} exceeds sqrt(15)/2 (negative radicand)"
            )));
        }
        Ok(SymmetricShape { y4, branch })
    }
}

/// Coordinates, squared distances and oriented areas of a symmetric shape,
/// generic over the arithmetic. Squared distances use the constraint-reduced
/// forms `r13² = 1 + 2 x3`, `r14² = 1/4 + y4²`, `r35² = 4 x3²`; on branch B
/// `r13²` is evaluated as `(4 y4² − 3)² / (2 (3 (4 y4² + 1) + 2 y4 √ρ))`,
/// which avoids cancellation near the collision of `q1` and `q3`.
#[derive(Clone, Copy, Debug)]
pub struct SymmetricQuantities<T> {
    pub x3: T,
    pub y3: T,
    pub y4: T,
    pub r13_sq: T,
    pub r14_sq: T,
    pub r35_sq: T,
    pub area123: T,
    pub area124: T,
    pub area134: T,
    pub area135: T,
    pub area145: T,
    pub area345: T,
}

pub fn symmetric_quantities<T: Scalar>(y4: T, branch: Branch) -> SymmetricQuantities<T> {
    let c = T::constant;
    let s = y4.sqr();
    let rad = c(15.0) + s * (c(56.0) - c(16.0) * s);
    let sqrt_rad = rad.sqrt();
    let root = sqrt_rad * c(branch.sign());
    let p = c(4.0) * s + c(1.0);
    let denom = c(4.0) * p;
    let y3 = (c(8.0) * s * y4 + c(2.0) * y4 + root) / denom;
    let x3 = (p + c(2.0) * y4 * root) / denom;
    let half_gap = (y4 - y3) * c(0.5);
    let r13_sq = match branch {
        Branch::A => c(1.0) + c(2.0) * x3,
        // 1 + 2 x3 rationalized: q1 and q3 collide at the double root s = 3/4
        Branch::B => (c(4.0) * s - c(3.0)).sqr() / (c(2.0) * (c(3.0) * p + c(2.0) * y4 * sqrt_rad)),
    };
    SymmetricQuantities {
        x3,
        y3,
        y4,
        r13_sq,
        r14_sq: c(0.25) + s,
        r35_sq: c(4.0) * x3.sqr(),
        area123: y3,
        area124: y4,
        area134: x3 * y4 + half_gap,
        area135: c(2.0) * y3 * x3,
        area145: x3 * y4 - half_gap,
        area345: c(2.0) * x3 * (y4 - y3),
    }
}

/// Points `q1..q5` of a symmetric shape.
pub fn symmetric_coords(shape: &SymmetricShape) -> Result<PlanarConfiguration> {
    let shape = SymmetricShape::new(shape.y4, shape.branch)?;
    let q = symmetric_quantities(shape.y4, shape.branch);
    Ok(PlanarConfiguration::normalized(
        Point2::new(q.x3, q.y3),
        Point2::new(0.0, shape.y4),
        Point2::new(-q.x3, q.y3),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{mutual_distances, oriented_area};

    fn constraints(c: &PlanarConfiguration) -> (f64, f64) {
        let (x3, y3, y4) = (c.points[2].x, c.points[2].y, c.points[3].y);
        (
            4.0 * x3 * x3 - 4.0 * x3 + 4.0 * y3 * y3 - 3.0,
            x3 * x3 + y3 * y3 - 2.0 * y3 * y4 + y4 * y4 - 1.0,
        )
    }

    #[test]
    fn y4_bound_is_radicand_root() {
        assert!((Y4_MAX - 15f64.sqrt() / 2.0).abs() < 1e-16);
        assert!(radicand(Y4_MAX).abs() < 1e-12);
        assert!(SymmetricShape::new(Y4_MAX + 1e-6, Branch::A).is_err());
        assert!(SymmetricShape::new(-0.1, Branch::A).is_err());
    }

    #[test]
    fn square_endpoint() {
        let y4 = (2.0 - 3f64.sqrt()) / 2.0;
        let c = symmetric_coords(&SymmetricShape::new(y4, Branch::A).unwrap()).unwrap();
        assert!((c.points[2].x - 0.5).abs() < 1e-12);
        assert!((c.points[2].y - 1.0).abs() < 1e-12);
        let md = mutual_distances(&c).unwrap();
        let d = md.classes.unwrap();
        assert!((d.get(1, 4) - (2.0 - 3f64.sqrt()).sqrt()).abs() < 1e-12);
        assert!((d.get(3, 5) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn collinear_endpoint() {
        let y4 = (5.0 - 2.0 * 5f64.sqrt()).sqrt() / 2.0;
        let c = symmetric_coords(&SymmetricShape::new(y4, Branch::A).unwrap()).unwrap();
        assert!(oriented_area(&c, 1, 3, 4).unwrap().abs() < 1e-12);
        assert!(oriented_area(&c, 2, 4, 5).unwrap().abs() < 1e-12);
    }

    #[test]
    fn regular_pentagon_on_branch_a() {
        let y4 = 0.5 * (5.0 + 2.0 * 5f64.sqrt()).sqrt();
        assert!((y4 - 1.538842).abs() < 1e-6);
        let c = symmetric_coords(&SymmetricShape::new(y4, Branch::A).unwrap()).unwrap();
        // vertex 3 of a unit regular pentagon on the base (-1/2,0)-(1/2,0)
        let x3 = 0.5 + (2.0 * std::f64::consts::PI / 5.0).cos();
        let y3 = (2.0 * std::f64::consts::PI / 5.0).sin();
        assert!((c.points[2].x - x3).abs() < 1e-12);
        assert!((c.points[2].y - y3).abs() < 1e-12);
        assert!((x3 - 0.809017).abs() < 1e-6 && (y3 - 0.951057).abs() < 1e-6);
    }

    #[test]
    fn constraints_hold_on_both_branches() {
        for branch in [Branch::A, Branch::B] {
            for i in 1..400 {
                let y4 = Y4_MAX * i as f64 / 400.0;
                let c = symmetric_coords(&SymmetricShape::new(y4, branch).unwrap()).unwrap();
                let (g1, g2) = constraints(&c);
                assert!(g1.abs() < 1e-12 && g2.abs() < 1e-12, "{branch} {y4}: {g1} {g2}");
            }
        }
    }

    #[test]
    fn closed_form_areas_match_coordinates() {
        for branch in [Branch::A, Branch::B] {
            for i in 1..200 {
                let y4 = Y4_MAX * i as f64 / 200.0;
                let c = symmetric_coords(&SymmetricShape::new(y4, branch).unwrap()).unwrap();
                let q = symmetric_quantities(y4, branch);
                let pairs = [
                    ((1, 2, 3), q.area123),
                    ((1, 2, 4), q.area124),
                    ((1, 3, 4), q.area134),
                    ((1, 3, 5), q.area135),
                    ((1, 4, 5), q.area145),
                    ((3, 4, 5), q.area345),
                    ((2, 3, 4), q.area145),
                ];
                for ((i, j, k), v) in pairs {
                    let direct = oriented_area(&c, i, j, k).unwrap();
                    assert!((direct - v).abs() < 1e-12, "Δ{i}{j}{k} at {y4}");
                }
                // Δ134 − Δ234 = y4 − y3
                let d = oriented_area(&c, 1, 3, 4).unwrap() - oriented_area(&c, 2, 3, 4).unwrap();
                assert!((d - (q.y4 - q.y3)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn branch_a_r13_bound_and_branch_b_signs() {
        let bound = 6f64.sqrt() / 2.0;
        for i in 1..=10_000 {
            let y4 = Y4_MAX * (i as f64 - 0.5) / 10_000.0;
            let a = symmetric_quantities(y4, Branch::A);
            assert!(a.r13_sq.sqrt() > bound, "r13 at {y4}");
            let b = symmetric_quantities(y4, Branch::B);
            assert!(b.r35_sq.sqrt() < 1.0, "r35 at {y4}");
            assert!(b.area145 < 0.0, "Δ145 at {y4}");
        }
    }
}
