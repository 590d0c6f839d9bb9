//! Positive-mass feasibility of the two-mass wedge equations and the angle
//! regions it carves out of the equilateral family.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{Exponent, TWO_MASS_PAIRS};
use crate::error::{Error, Result};
use crate::geometry::{
    cyclic_from_angles, interior_angle, mutual_distances, oriented_area, ChainAngles,
    PlanarConfiguration,
};

/// Coefficients below this (at unit edge length) count as zero.
pub const ZERO_COEFF: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct La2Equation {
    pub label: String,
    /// Labels of the two masses that appear.
    pub masses: [usize; 2],
    pub coefficients: [f64; 2],
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct La2Verdict {
    pub feasible: bool,
    pub equations: Vec<La2Equation>,
}

fn coefficient_sign(c: f64) -> i8 {
    if c > ZERO_COEFF {
        1
    } else if c < -ZERO_COEFF {
        -1
    } else {
        0
    }
}

/// Checks whether each two-mass wedge equation admits positive masses: the
/// two coefficients have strictly opposite signs, or both vanish.
pub fn la2_feasible(config: &PlanarConfiguration, a: Exponent) -> Result<La2Verdict> {
    let md = mutual_distances(config)?;
    let classes = md.classes.ok_or(Error::NotEquilateral(md.edge_spread))?;
    let unit = config.scaled(1.0 / classes.edge());
    let t = mutual_distances(&unit)?.table;
    let r = |i: usize, j: usize| t.get(i, j).powf(-a.value);
    let mut equations = Vec::with_capacity(5);
    for (i, j) in TWO_MASS_PAIRS {
        // the mass between i and j drops out: both of its distances are edges
        let between = if j - i == 2 { i + 1 } else { (j % 5) + 1 };
        let others: Vec<usize> = (1..=5).filter(|&k| k != i && k != j && k != between).collect();
        let mut coefficients = [0.0; 2];
        for (slot, &k) in coefficients.iter_mut().zip(&others) {
            *slot = (r(i, k) - r(j, k)) * oriented_area(&unit, i, j, k)?;
        }
        let (s0, s1) = (coefficient_sign(coefficients[0]), coefficient_sign(coefficients[1]));
        let passes = s0 * s1 < 0 || (s0 == 0 && s1 == 0);
        equations.push(La2Equation {
            label: format!("L{i}{j}"),
            masses: [others[0], others[1]],
            coefficients,
            passes,
        });
    }
    Ok(La2Verdict {
        feasible: equations.iter().all(|e| e.passes),
        equations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// Every diagonal longer than the edge.
    I,
    /// Every diagonal shorter than the edge.
    II,
    /// Concave with the given point inside the hull of the other four.
    III(usize),
    Outside,
}

impl Region {
    pub fn label(&self) -> String {
        match self {
            Region::I => "I".into(),
            Region::II => "II".into(),
            Region::III(k) => format!("III({k})"),
            Region::Outside => "none".into(),
        }
    }
}

/// Region III conditions with point 5 as the interior point.
fn region_three_with_interior_five(c: &PlanarConfiguration) -> Result<bool> {
    let t2 = interior_angle(c, 2)?;
    let t3 = interior_angle(c, 3)?;
    let limit = 5.0 * PI / 3.0;
    Ok(t2 + t3 <= 3.0 * PI
        && t2 <= limit
        && t3 <= limit
        && oriented_area(c, 1, 3, 5)? >= 0.0
        && oriented_area(c, 2, 4, 5)? >= 0.0)
}

pub fn region_classify(angles: &ChainAngles, a: Exponent) -> Result<Region> {
    let config = cyclic_from_angles(angles)?;
    if !la2_feasible(&config, a)?.feasible {
        return Ok(Region::Outside);
    }
    let d = mutual_distances(&config)?
        .classes
        .expect("closed chains are equilateral");
    let edge = d.edge();
    if d.diagonals().iter().all(|&x| x > edge) {
        return Ok(Region::I);
    }
    if d.diagonals().iter().all(|&x| x < edge) {
        return Ok(Region::II);
    }
    if config.is_strictly_convex() {
        return Ok(Region::Outside);
    }
    for k in 1..=5 {
        // new label i carries old label ((i + k - 1) mod 5) + 1, so old k becomes 5
        let perm = [1, 2, 3, 4, 5].map(|i| (i + k - 1) % 5 + 1);
        if region_three_with_interior_five(&config.relabeled(perm)?)? {
            return Ok(Region::III(k));
        }
    }
    Ok(Region::Outside)
}
