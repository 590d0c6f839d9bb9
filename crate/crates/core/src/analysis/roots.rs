//! Interval root isolation of `F` in `y4` at fixed `A`.

use serde::{Deserialize, Serialize};

use super::{f_enclosure, proven_sign};
use crate::equations::{laura_andoyer, mass_coefficient_matrix, mass_kernel, Exponent, MassVector};
use crate::error::{Error, Result};
use crate::geometry::{
    classify_sign_type, sign_type_windows, symmetric_coords, Branch, SignType, SymmetricShape, Y4_MAX,
};
use crate::interval::Interval;

pub const DEFAULT_TOL: f64 = 1e-13;

/// Relative inset applied to window ends where `F` is singular or the
/// branch ends.
pub const WINDOW_INSET: f64 = 1e-9;

/// Boxes narrower than this fraction of the window that still cannot be
/// decided are reported as unresolved.
const MIN_RELATIVE_WIDTH: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootRecord {
    /// Enclosure of the root; `F` has opposite proven signs at its ends.
    pub y4: Interval,
    pub branch: Branch,
    pub sign_type: SignType,
    pub a: f64,
    /// Kernel of the mass-coefficient matrix at the enclosure midpoint.
    pub masses: Option<MassVector>,
    pub positive: bool,
    /// Largest wedge-equation residual with the recovered masses.
    pub wedge_residual: Option<f64>,
    /// Smallest singular value over the largest.
    pub kernel_ratio: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RootIsolation {
    pub roots: Vec<RootRecord>,
    /// Subintervals where neither exclusion nor monotonicity could be proven.
    pub unresolved: Vec<Interval>,
}

fn record(y4: Interval, branch: Branch, a: f64) -> RootRecord {
    let mid = y4.mid();
    let shape = SymmetricShape { y4: mid, branch };
    let exponent = Exponent { value: a, rational: None };
    let kernel = mass_coefficient_matrix(&shape, exponent).map(|m| mass_kernel(&m)).ok();
    let (masses, kernel_ratio) = match &kernel {
        Some(crate::equations::MassKernel::Kernel { masses, singular_values, .. }) => {
            (Some(*masses), Some(singular_values[2] / singular_values[0]))
        }
        Some(crate::equations::MassKernel::Infeasible { singular_values }) => {
            (None, Some(singular_values[2] / singular_values[0]))
        }
        None => (None, None),
    };
    let wedge_residual = masses.and_then(|m| {
        let c = symmetric_coords(&shape).ok()?;
        laura_andoyer(&c, &m, exponent).ok().map(|r| r.max_abs())
    });
    RootRecord {
        y4,
        branch,
        sign_type: classify_sign_type(&shape),
        a,
        masses,
        positive: masses.map(|m| m.is_positive()).unwrap_or(false),
        wedge_residual,
        kernel_ratio,
    }
}

/// Bisects a proven sign change down to width `tol`.
fn refine(mut lo: f64, mut hi: f64, s_lo: i8, branch: Branch, a: f64, tol: f64) -> Interval {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match proven_sign(mid, a, branch) {
            0 => break,
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Interval { lo, hi }
}

/// Split point slightly off center so it rarely lands exactly on a root.
fn split_point(lo: f64, hi: f64) -> f64 {
    lo + 0.5009765625 * (hi - lo)
}

/// Encloses every zero of `F` in `window` by interval bisection: boxes where
/// the `F` enclosure excludes zero are dropped, boxes where the derivative
/// enclosure excludes zero hold at most one root and are refined by
/// bisection on proven signs.
pub fn isolate_roots(branch: Branch, a: f64, window: (f64, f64), tol: f64) -> Result<RootIsolation> {
    let (lo, hi) = window;
    if !(lo < hi) || lo < 0.0 || hi > Y4_MAX {
        return Err(Error::OutOfDomain(format!("window [{lo}, {hi}] outside [0, {Y4_MAX}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    Exponent::new(a)?;
    let min_width = MIN_RELATIVE_WIDTH * (hi - lo);
    let ai = Interval::point(a);
    let mut out = RootIsolation::default();
    let mut stack = vec![(lo, hi)];
    while let Some((l, h)) = stack.pop() {
        let (f, df) = f_enclosure(Interval { lo: l, hi: h }, ai, branch);
        if !f.is_empty() && !f.contains_zero() {
            continue;
        }
        if !df.is_empty() && !df.contains_zero() {
            let (sl, sh) = (proven_sign(l, a, branch), proven_sign(h, a, branch));
            if sl != 0 && sh != 0 {
                if sl != sh {
                    let enc = refine(l, h, sl, branch, a, tol);
                    out.roots.push(record(enc, branch, a));
                }
                continue;
            }
            if h - l <= tol {
                // a root sits on an undecided endpoint; the box encloses it
                out.roots.push(record(Interval { lo: l, hi: h }, branch, a));
                continue;
            }
        }
        if h - l <= min_width {
            out.unresolved.push(Interval { lo: l, hi: h });
            continue;
        }
        let m = split_point(l, h);
        stack.push((m, h));
        stack.push((l, m));
    }
    out.roots.sort_by(|x, y| x.y4.lo.total_cmp(&y.y4.lo));
    // a root on a split point can be reported from both sides
    out.roots.dedup_by(|x, y| x.y4.lo <= y.y4.hi && y.y4.lo <= x.y4.hi);
    out.unresolved.sort_by(|x, y| x.lo.total_cmp(&y.lo));
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub branch: Option<Branch>,
    pub a: f64,
    /// Roots with strictly positive recovered masses.
    pub records: Vec<RootRecord>,
    /// Roots without a positive mass vector.
    pub rejected: Vec<RootRecord>,
    pub unresolved: Vec<(SignType, Interval)>,
}

/// The sign-type window `[lo, hi]`, pulled in at singular or branch ends.
pub fn scan_window(branch: Branch, t: &SignType) -> Option<(f64, f64)> {
    let w = sign_type_windows(branch).iter().find(|w| &w.sign_type == t)?;
    let (lo, mut hi) = w.closed_subwindow(WINDOW_INSET);
    if hi >= Y4_MAX {
        hi = Y4_MAX - WINDOW_INSET * (w.hi - w.lo);
    }
    Some((lo, hi))
}

/// Isolates roots in every sign-type window of a branch and keeps those with
/// positive masses.
pub fn symmetric_scan(branch: Branch, a: f64, tol: f64) -> Result<ScanReport> {
    let mut report = ScanReport {
        branch: Some(branch),
        a,
        ..Default::default()
    };
    for w in sign_type_windows(branch) {
        let window = scan_window(branch, &w.sign_type).expect("window of its own type");
        let iso = isolate_roots(branch, a, window, tol)?;
        for r in iso.roots {
            if r.positive {
                report.records.push(r);
            } else {
                report.rejected.push(r);
            }
        }
        report
            .unresolved
            .extend(iso.unresolved.into_iter().map(|i| (w.sign_type.clone(), i)));
    }
    Ok(report)
}
