//! General equilateral pentagons from two interior angles.
//!
//! The unit edges 1-2, 2-3 and 3-4 are laid out from the interior angles at
//! vertices 2 and 3 (measured counterclockwise from the outgoing edge to the
//! incoming one, so a counterclockwise convex pentagon has angles in
//! `(0, π)`); `q5` is then one of the two points at unit distance from both
//! `q4` and `q1`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{PlanarConfiguration, Point2};
use crate::error::{Error, Result};

/// Which circle intersection closes the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Closure {
    /// `q5` to the right of the directed chord `q4 → q1`.
    Plus,
    /// `q5` to the left of the directed chord `q4 → q1`.
    Minus,
}

impl Closure {
    pub fn label(self) -> &'static str {
        match self {
            Closure::Plus => "plus",
            Closure::Minus => "minus",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainAngles {
    /// Interior angle at vertex 2, radians in `(0, 2π)`.
    pub theta12: f64,
    /// Interior angle at vertex 3, radians in `(0, 2π)`.
    pub theta23: f64,
    pub closure: Closure,
}

impl ChainAngles {
    pub fn new(theta12: f64, theta23: f64, closure: Closure) -> Self {
        ChainAngles {
            theta12,
            theta23,
            closure,
        }
    }

    pub fn from_degrees(theta12: f64, theta23: f64, closure: Closure) -> Self {
        ChainAngles::new(theta12.to_radians(), theta23.to_radians(), closure)
    }

    /// First three vertices after `q1`, `q2`: returns `(q3, q4)`.
    fn open_chain(&self) -> (Point2, Point2) {
        let dir23 = PI - self.theta12;
        let q3 = Point2::new(0.5 + dir23.cos(), dir23.sin());
        let dir34 = dir23 + PI - self.theta23;
        let q4 = Point2::new(q3.x + dir34.cos(), q3.y + dir34.sin());
        (q3, q4)
    }

    /// `|q4 - q1|` of the open chain; the pentagon closes iff this is in `(0, 2]`.
    pub fn chord(&self) -> f64 {
        let (_, q4) = self.open_chain();
        q4.sub(Point2::new(-0.5, 0.0)).norm()
    }

    pub fn is_closable(&self) -> bool {
        let c = self.chord();
        c > 0.0 && c <= 2.0
    }
}

/// Realizes the equilateral pentagon with the given angles.
pub fn cyclic_from_angles(angles: &ChainAngles) -> Result<PlanarConfiguration> {
    for t in [angles.theta12, angles.theta23] {
        if !(t > 0.0 && t < 2.0 * PI) {
            return Err(Error::OutOfDomain(format!("angle {t} outside (0, 2π)")));
        }
    }
    let (q3, q4) = angles.open_chain();
    let q1 = Point2::new(-0.5, 0.0);
    let chord = q1.sub(q4);
    let c = chord.norm();
    if !(c > 0.0 && c <= 2.0) {
        return Err(Error::OutOfDomain(format!(
            "chain does not close: |q4 - q1| = {c}"
        )));
    }
    let mid = Point2::new(0.5 * (q4.x + q1.x), 0.5 * (q4.y + q1.y));
    let h = (1.0 - 0.25 * c * c).max(0.0).sqrt();
    // right-hand normal of q4 → q1
    let normal = Point2::new(chord.y / c, -chord.x / c);
    let s = match angles.closure {
        Closure::Plus => 1.0,
        Closure::Minus => -1.0,
    };
    let q5 = Point2::new(mid.x + s * h * normal.x, mid.y + s * h * normal.y);
    Ok(PlanarConfiguration::normalized(q3, q4, q5))
}

/// Interior angle at `vertex` using the counterclockwise convention of
/// [`ChainAngles`], in `[0, 2π)`.
pub fn interior_angle(config: &PlanarConfiguration, vertex: usize) -> Result<f64> {
    if !(1..=5).contains(&vertex) {
        return Err(Error::InvalidArgument(format!("vertex {vertex}")));
    }
    let p = config.points;
    let v = vertex - 1;
    let next = p[(v + 1) % 5].sub(p[v]);
    let prev = p[(v + 4) % 5].sub(p[v]);
    let a = next.wedge(prev).atan2(next.x * prev.x + next.y * prev.y);
    Ok(if a < 0.0 { a + 2.0 * PI } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{mutual_distances, CYCLE_EDGES};

    fn edges_unit(c: &PlanarConfiguration) {
        let md = mutual_distances(c).unwrap();
        for (i, j) in CYCLE_EDGES {
            assert!((md.table.get(i, j) - 1.0).abs() < 1e-12, "edge {i}{j}");
        }
    }

    #[test]
    fn regular_pentagon_from_108_degrees() {
        let c = cyclic_from_angles(&ChainAngles::new(0.6 * PI, 0.6 * PI, Closure::Plus)).unwrap();
        edges_unit(&c);
        let phi = 0.5 * (1.0 + 5f64.sqrt());
        let d = mutual_distances(&c).unwrap().classes.unwrap();
        for x in d.diagonals() {
            assert!((x - phi).abs() < 1e-12);
        }
        assert!(c.is_strictly_convex());
        for v in 1..=5 {
            assert!((interior_angle(&c, v).unwrap() - 0.6 * PI).abs() < 1e-12);
        }
    }

    #[test]
    fn pentagram_from_36_degrees() {
        let c = cyclic_from_angles(&ChainAngles::new(0.2 * PI, 0.2 * PI, Closure::Plus)).unwrap();
        edges_unit(&c);
        let d = mutual_distances(&c).unwrap().classes.unwrap();
        let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
        for x in d.diagonals() {
            assert!((x - inv_phi).abs() < 1e-12, "{x}");
        }
    }

    #[test]
    fn flat_chain_cannot_close() {
        let r = cyclic_from_angles(&ChainAngles::new(PI, PI, Closure::Plus));
        assert!(matches!(r, Err(Error::OutOfDomain(_))));
        assert!(!ChainAngles::new(PI, PI, Closure::Minus).is_closable());
    }

    #[test]
    fn both_closures_have_unit_edges() {
        for (a, b) in [(1.0, 2.0), (2.5, 1.2), (4.0, 1.9), (1.3, 5.0)] {
            for cl in [Closure::Plus, Closure::Minus] {
                let ang = ChainAngles::new(a, b, cl);
                if ang.is_closable() {
                    edges_unit(&cyclic_from_angles(&ang).unwrap());
                }
            }
        }
    }

    #[test]
    fn angles_are_recovered() {
        let ang = ChainAngles::new(2.1, 1.7, Closure::Minus);
        let c = cyclic_from_angles(&ang).unwrap();
        assert!((interior_angle(&c, 2).unwrap() - 2.1).abs() < 1e-12);
        assert!((interior_angle(&c, 3).unwrap() - 1.7).abs() < 1e-12);
    }
}
