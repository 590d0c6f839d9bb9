//! Change in the number of type A4 solutions as `A` grows.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::roots::{isolate_roots, scan_window, RootRecord, DEFAULT_TOL};
use super::{f_with_derivative, pentagon_y4};
use crate::error::{Error, Result};
use crate::geometry::{Branch, SignType};

/// Half-width of the neighborhood of the pentagon excluded when counting the
/// other roots.
pub const PENTAGON_EPS: f64 = 1e-8;

/// Grid points per side used to count sign changes away from the pentagon.
const COUNT_GRID: usize = 400;

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Sign changes of `F` over increasing sample points, skipping exact zeros.
fn sign_changes(points: impl Iterator<Item = f64>, a: f64) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for y in points {
        let s = sign(f_with_derivative(y, a, Branch::A).map(|p| p.0).unwrap_or(0.0));
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Samples from `from` toward `to`, uniform plus geometrically clustered
/// near `from`.
fn samples(from: f64, to: f64) -> Vec<f64> {
    let span = to - from;
    let mut t: Vec<f64> = (0..=COUNT_GRID).map(|i| i as f64 / COUNT_GRID as f64).collect();
    let mut g = PENTAGON_EPS / span.abs();
    while g < 1.0 / COUNT_GRID as f64 {
        t.push(g);
        g *= 1.5;
    }
    t.sort_by(f64::total_cmp);
    t.into_iter().map(|s| from + s * span).collect()
}

/// Number of type A4 roots of `F` at exponent `a`: the pentagon plus sign
/// changes on either side of it beyond [`PENTAGON_EPS`].
pub fn count_a4_roots(a: f64) -> usize {
    let (lo, hi) = scan_window(Branch::A, &SignType::A4).expect("A4 window");
    let p = pentagon_y4();
    let mut left = samples(p - PENTAGON_EPS, lo);
    left.reverse();
    let right = samples(p + PENTAGON_EPS, hi);
    1 + sign_changes(left.into_iter(), a) + sign_changes(right.into_iter(), a)
}

/// All type A4 roots at exponent `a`.
pub fn a4_roots(a: f64) -> Result<Vec<RootRecord>> {
    let window = scan_window(Branch::A, &SignType::A4).expect("A4 window");
    Ok(isolate_roots(Branch::A, a, window, DEFAULT_TOL)?.roots)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bifurcation {
    /// `A` bracket of the count jump.
    pub a_lo: f64,
    pub a_hi: f64,
    pub count_below: usize,
    pub count_above: usize,
    pub pentagon_y4: f64,
    /// `F` and `∂F/∂y4` at the pentagon at the bracket midpoint.
    pub f_at_pentagon: f64,
    pub df_at_pentagon: f64,
}

impl Bifurcation {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a_lo + self.a_hi)
    }
}

/// Target bracket width in `A`.
pub const BRACKET_WIDTH: f64 = 1e-6;

/// Scans `A` at the given step for the first jump in the A4 root count, then
/// bisects on the sign of `∂F/∂y4` at the pentagon, which changes exactly
/// where the two extra roots leave it.
pub fn bifurcation_scan(range: (f64, f64), step: f64) -> Result<Bifurcation> {
    let (a0, a1) = range;
    if !(a0 >= 2.0 && a0 < a1 && step > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "bad A range [{a0}, {a1}] or step {step}"
        )));
    }
    let n = ((a1 - a0) / step).ceil() as usize;
    let grid: Vec<f64> = (0..=n).map(|i| (a0 + i as f64 * step).min(a1)).collect();
    let counts: Vec<usize> = grid.par_iter().map(|&a| count_a4_roots(a)).collect();
    let jump = counts
        .windows(2)
        .position(|w| w[1] > w[0])
        .ok_or(Error::NoBifurcation(a0, a1))?;
    let (mut lo, mut hi) = (grid[jump], grid[jump + 1]);
    let p = pentagon_y4();
    let slope = |a: f64| f_with_derivative(p, a, Branch::A).map(|v| v.1);
    let s_lo = sign(slope(lo)?);
    if s_lo == 0 || s_lo == sign(slope(hi)?) {
        return Err(Error::NoBifurcation(lo, hi));
    }
    while hi - lo > BRACKET_WIDTH {
        let mid = 0.5 * (lo + hi);
        if sign(slope(mid)?) == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (f, df) = f_with_derivative(p, 0.5 * (lo + hi), Branch::A)?;
    Ok(Bifurcation {
        a_lo: lo,
        a_hi: hi,
        count_below: counts[jump],
        count_above: counts[jump + 1],
        pentagon_y4: p,
        f_at_pentagon: f,
        df_at_pentagon: df,
    })
}
