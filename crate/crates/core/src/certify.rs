//! Rigorous statements about `F` over parameter boxes: unique roots in a
//! `y4` window for a range of `A`, and absence of common zeros of `F` and
//! `∂F/∂y4`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::f_enclosure;
use crate::error::{Error, Result};
use crate::geometry::Branch;
use crate::interval::Interval;

/// A box in `(y4, A)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamBox {
    pub y4: Interval,
    pub a: Interval,
}

impl ParamBox {
    pub fn new(y4: Interval, a: Interval) -> Result<Self> {
        if y4.is_empty() || a.is_empty() {
            return Err(Error::EmptyInterval);
        }
        if y4.lo < 0.0 {
            return Err(Error::OutOfDomain(format!("y4 interval {y4} reaches below 0")));
        }
        if a.lo < 2.0 {
            return Err(Error::OutOfDomain(format!("A interval {a} reaches below 2")));
        }
        Ok(ParamBox { y4, a })
    }

    /// Halves along the coordinate that is wider relative to `scale`.
    fn split(&self, scale: &ParamBox) -> (ParamBox, ParamBox) {
        let wy = self.y4.width() / scale.y4.width().max(f64::MIN_POSITIVE);
        let wa = self.a.width() / scale.a.width().max(f64::MIN_POSITIVE);
        if wy >= wa {
            let (l, r) = self.y4.bisect();
            (ParamBox { y4: l, ..*self }, ParamBox { y4: r, ..*self })
        } else {
            let (l, r) = self.a.bisect();
            (ParamBox { a: l, ..*self }, ParamBox { a: r, ..*self })
        }
    }
}

fn radicand(y4: Interval) -> Interval {
    let s = y4.sqr();
    Interval::point(15.0) + s * (Interval::point(56.0) - s * 16.0)
}

/// Enclosures of `F` and `∂F/∂y4` over the box.
pub fn eval_f_interval(b: &ParamBox, branch: Branch) -> Result<(Interval, Interval)> {
    let b = ParamBox::new(b.y4, b.a)?;
    if radicand(b.y4).lo < 0.0 {
        return Err(Error::OutOfDomain(format!(
            "radicand is not provably nonnegative on y4 = {}",
            b.y4
        )));
    }
    Ok(f_enclosure(b.y4, b.a, branch))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafReason {
    /// `0 ∉ F(box)`.
    NoZero,
    /// `0 ∉ ∂F/∂y4(box)`.
    Monotone,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Leaf {
    #[serde(rename = "box")]
    pub region: ParamBox,
    pub depth: u32,
    pub reason: LeafReason,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoCommonZeroCertificate {
    pub kind: String,
    pub branch: Branch,
    pub region: ParamBox,
    pub max_depth: u32,
    pub verdict: Verdict,
    /// Leaves ordered by `(y4.lo, a.lo)`.
    pub leaves: Vec<Leaf>,
    pub boxes_examined: u64,
}

impl NoCommonZeroCertificate {
    pub fn undecided(&self) -> impl Iterator<Item = &Leaf> {
        self.leaves.iter().filter(|l| l.reason == LeafReason::Undecided)
    }
}

pub const DEFAULT_MAX_DEPTH: u32 = 60;

/// Upper bound on boxes examined before the remaining ones are reported
/// undecided.
pub const DEFAULT_BOX_BUDGET: u64 = 400_000;

fn classify(b: &ParamBox, branch: Branch) -> LeafReason {
    match eval_f_interval(b, branch) {
        Ok((f, df)) => {
            if !f.is_empty() && !f.contains_zero() {
                LeafReason::NoZero
            } else if !df.is_empty() && !df.contains_zero() {
                LeafReason::Monotone
            } else {
                LeafReason::Undecided
            }
        }
        Err(_) => LeafReason::Undecided,
    }
}

fn sort_leaves(leaves: &mut [Leaf]) {
    leaves.sort_by(|x, y| {
        x.region
            .y4
            .lo
            .total_cmp(&y.region.y4.lo)
            .then(x.region.a.lo.total_cmp(&y.region.a.lo))
            .then(x.depth.cmp(&y.depth))
    });
}

/// Adaptive bisection proving that every box has `0 ∉ F` or `0 ∉ ∂F/∂y4`,
/// so the zero set of `F` is a union of graphs over `A` with no fold.
pub fn certify_no_common_zero(
    region: ParamBox,
    branch: Branch,
    max_depth: u32,
    budget: u64,
) -> Result<NoCommonZeroCertificate> {
    let region = ParamBox::new(region.y4, region.a)?;
    let mut leaves = Vec::new();
    let mut level = vec![region];
    let mut examined = 0u64;
    let mut depth = 0u32;
    while !level.is_empty() {
        examined += level.len() as u64;
        let reasons: Vec<LeafReason> = level.par_iter().map(|b| classify(b, branch)).collect();
        let mut next = Vec::new();
        let out_of_budget = examined + 2 * level.len() as u64 > budget;
        for (b, reason) in level.into_iter().zip(reasons) {
            if reason == LeafReason::Undecided && depth < max_depth && !out_of_budget {
                let (l, r) = b.split(&region);
                next.push(l);
                next.push(r);
            } else {
                leaves.push(Leaf {
                    region: b,
                    depth,
                    reason,
                });
            }
        }
        level = next;
        depth += 1;
    }
    sort_leaves(&mut leaves);
    let verdict = if leaves.iter().any(|l| l.reason == LeafReason::Undecided) {
        Verdict::Undecided
    } else {
        Verdict::Certified
    };
    Ok(NoCommonZeroCertificate {
        kind: "no_common_zero".into(),
        branch,
        region,
        max_depth,
        verdict,
        leaves,
        boxes_examined: examined,
    })
}

/// Proof for one `A` sub-interval that the window holds exactly one root.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniqueRootPiece {
    pub a: Interval,
    /// Proven signs of `F` at the window ends.
    pub sign_lo: i8,
    pub sign_hi: i8,
    /// Interval on which `F` is strictly monotone and changes sign.
    pub root_run: Interval,
    pub slope_sign: i8,
    /// Subintervals of the window on which `F` has a proven constant sign.
    pub clear_leaves: usize,
    pub monotone_leaves: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniqueRootCertificate {
    pub kind: String,
    pub branch: Branch,
    pub window: Interval,
    pub a: Interval,
    pub verdict: Verdict,
    pub pieces: Vec<UniqueRootPiece>,
    /// `A` sub-intervals where no proof was found at the depth caps.
    pub undecided: Vec<Interval>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniqueRootOptions {
    /// Bisection depth in `y4` per `A` piece.
    pub y_depth: u32,
    /// Bisection depth in `A`.
    pub a_depth: u32,
}

impl Default for UniqueRootOptions {
    fn default() -> Self {
        UniqueRootOptions {
            y_depth: 40,
            a_depth: 20,
        }
    }
}

fn proven_sign(y: f64, a: Interval, branch: Branch) -> i8 {
    let (f, _) = f_enclosure(Interval::point(y), a, branch);
    if f.is_empty() {
        0
    } else {
        f.strict_sign()
    }
}

enum PieceOutcome {
    Proven(UniqueRootPiece),
    Failed,
}

#[derive(Clone, Copy)]
enum Cell {
    Clear,
    Monotone(i8),
}

fn prove_piece(window: Interval, a: Interval, branch: Branch, y_depth: u32) -> PieceOutcome {
    let (sign_lo, sign_hi) = (proven_sign(window.lo, a, branch), proven_sign(window.hi, a, branch));
    if sign_lo == 0 || sign_hi == 0 || sign_lo == sign_hi {
        return PieceOutcome::Failed;
    }
    let min_width = window.width() / 2f64.powi(y_depth as i32);
    let mut cells: Vec<(f64, f64, Cell)> = Vec::new();
    let mut stack = vec![(window.lo, window.hi)];
    while let Some((l, h)) = stack.pop() {
        let (f, df) = f_enclosure(Interval { lo: l, hi: h }, a, branch);
        if !f.is_empty() && !f.contains_zero() {
            cells.push((l, h, Cell::Clear));
        } else if !df.is_empty() && !df.contains_zero() {
            cells.push((l, h, Cell::Monotone(df.strict_sign())));
        } else if h - l <= min_width {
            return PieceOutcome::Failed;
        } else {
            let m = 0.5 * (l + h);
            stack.push((m, h));
            stack.push((l, m));
        }
    }
    cells.sort_by(|x, y| x.0.total_cmp(&y.0));
    let clear_leaves = cells.iter().filter(|c| matches!(c.2, Cell::Clear)).count();
    let monotone_leaves = cells.len() - clear_leaves;

    // maximal runs of adjacent monotone cells with one slope sign
    let mut runs: Vec<(f64, f64, i8)> = Vec::new();
    for &(l, h, cell) in &cells {
        if let Cell::Monotone(s) = cell {
            match runs.last_mut() {
                Some(run) if run.1 == l && run.2 == s => run.1 = h,
                _ => runs.push((l, h, s)),
            }
        }
    }
    // roots lie only in runs; each run holds at most one, and holds one iff
    // the proven end signs differ
    let mut crossing = None;
    for &(l, h, s) in &runs {
        let (sl, sh) = (proven_sign(l, a, branch), proven_sign(h, a, branch));
        if sl == 0 || sh == 0 {
            return PieceOutcome::Failed;
        }
        if sl != sh {
            if crossing.is_some() {
                return PieceOutcome::Failed;
            }
            crossing = Some((l, h, s));
        }
    }
    match crossing {
        Some((l, h, s)) => PieceOutcome::Proven(UniqueRootPiece {
            a,
            sign_lo,
            sign_hi,
            root_run: Interval { lo: l, hi: h },
            slope_sign: s,
            clear_leaves,
            monotone_leaves,
        }),
        None => PieceOutcome::Failed,
    }
}

/// Proves that for every `A` in `a`, `F(·, A)` has exactly one zero in
/// `window`: opposite proven signs at the ends, and every zero confined to a
/// single run of cells where `∂F/∂y4` has a constant strict sign.
pub fn certify_unique_root(
    window: Interval,
    a: Interval,
    branch: Branch,
    opts: UniqueRootOptions,
) -> Result<UniqueRootCertificate> {
    let whole = ParamBox::new(window, a)?;
    eval_f_interval(&ParamBox::new(Interval::point(window.lo), a)?, branch)?;
    eval_f_interval(&ParamBox::new(Interval::point(window.hi), a)?, branch)?;
    let a_mid = Interval::point(a.mid());
    let (sl, sh) = (
        proven_sign(window.lo, a_mid, branch),
        proven_sign(window.hi, a_mid, branch),
    );
    if sl == 0 || sh == 0 || sl == sh {
        return Err(Error::Precondition(format!(
            "F has no proven sign change over the window {window} at A = {}",
            a.mid()
        )));
    }

    let mut pieces = Vec::new();
    let mut undecided = Vec::new();
    let mut level = vec![whole.a];
    for depth in 0..=opts.a_depth {
        let outcomes: Vec<PieceOutcome> = level
            .par_iter()
            .map(|&ai| prove_piece(window, ai, branch, opts.y_depth))
            .collect();
        let mut next = Vec::new();
        for (ai, outcome) in level.into_iter().zip(outcomes) {
            match outcome {
                PieceOutcome::Proven(p) => pieces.push(p),
                PieceOutcome::Failed if depth < opts.a_depth => {
                    let (l, r) = ai.bisect();
                    next.push(l);
                    next.push(r);
                }
                PieceOutcome::Failed => undecided.push(ai),
            }
        }
        level = next;
        if level.is_empty() {
            break;
        }
    }
    pieces.sort_by(|x, y| x.a.lo.total_cmp(&y.a.lo));
    undecided.sort_by(|x, y| x.lo.total_cmp(&y.lo));
    Ok(UniqueRootCertificate {
        kind: "unique_root".into(),
        branch,
        window,
        a,
        verdict: if undecided.is_empty() {
            Verdict::Certified
        } else {
            Verdict::Undecided
        },
        pieces,
        undecided,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{f_value, pentagon_y4, star_y4};
    use crate::analysis::roots::scan_window;
    use crate::geometry::SignType;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn endpoint_boxes_have_strict_signs() {
        let three = Interval::point(3.0);
        let square = (Interval::point(2.0) - three.sqrt()) * 0.5;
        let five = Interval::point(5.0);
        let collinear = (five - five.sqrt() * 2.0).sqrt() * 0.5;
        let (f, _) = eval_f_interval(&ParamBox::new(square, three).unwrap(), Branch::A).unwrap();
        assert!(f.strictly_positive(), "{f}");
        let (f, _) = eval_f_interval(&ParamBox::new(collinear, three).unwrap(), Branch::A).unwrap();
        assert!(f.strictly_negative(), "{f}");
        let p = pentagon_y4();
        let (f, _) = eval_f_interval(&ParamBox::new(iv(p - 1e-9, p + 1e-9), three).unwrap(), Branch::A).unwrap();
        assert!(f.contains_zero());
        assert!(star_y4() < p);
    }

    #[test]
    fn radicand_domain_is_enforced() {
        let b = ParamBox::new(iv(1.9, 1.95), Interval::point(3.0)).unwrap();
        assert!(matches!(eval_f_interval(&b, Branch::A), Err(Error::OutOfDomain(_))));
        assert!(ParamBox::new(iv(0.5, 0.6), iv(1.5, 3.0)).is_err());
    }

    #[test]
    fn unique_vortex_root() {
        let (lo, hi) = scan_window(Branch::A, &SignType::A2).unwrap();
        let c = certify_unique_root(iv(lo, hi), Interval::point(2.0), Branch::A, Default::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
        assert_eq!(c.pieces.len(), 1);
    }

    #[test]
    fn no_sign_change_is_a_precondition_failure() {
        let r = certify_unique_root(iv(0.2, 0.3), Interval::point(3.0), Branch::A, Default::default());
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn certified_region_has_no_sampled_double_zero() {
        let (lo, hi) = scan_window(Branch::A, &SignType::A2).unwrap();
        let region = ParamBox::new(iv(lo, hi), iv(2.0, 2.2)).unwrap();
        let c = certify_no_common_zero(region, Branch::A, DEFAULT_MAX_DEPTH, DEFAULT_BOX_BUDGET).unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
        // every leaf either excludes zero or is monotone; resample sign changes
        for leaf in c.leaves.iter().filter(|l| l.reason == LeafReason::NoZero).take(200) {
            let b = leaf.region;
            let s = f_value(b.y4.mid(), b.a.mid(), Branch::A).unwrap().signum();
            for i in 0..=10 {
                let y = b.y4.lo + b.y4.width() * i as f64 / 10.0;
                let v = f_value(y, b.a.mid(), Branch::A).unwrap();
                assert_eq!(v.signum(), s);
            }
        }
    }

    #[test]
    fn certificate_serializes() {
        let (lo, hi) = scan_window(Branch::A, &SignType::A2).unwrap();
        let region = ParamBox::new(iv(lo, hi), iv(2.0, 2.05)).unwrap();
        let c = certify_no_common_zero(region, Branch::A, 30, 10_000).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains("\"kind\":\"no_common_zero\""));
        let back: NoCommonZeroCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back.leaves.len(), c.leaves.len());
    }
}
