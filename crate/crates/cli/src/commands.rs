use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use pentacc::analysis::{f_value, scan_window, symmetric_scan as scan};
use pentacc::certify::{
    certify_no_common_zero, certify_unique_root, ParamBox, UniqueRootOptions, Verdict,
    DEFAULT_BOX_BUDGET, DEFAULT_MAX_DEPTH,
};
use pentacc::equations::{
    albouy_chenciner_f, albouy_chenciner_g, laura_andoyer, region_classify, EquationContext,
    Exponent, ResidualReport,
};
use pentacc::geometry::{
    cayley_menger_of, mutual_distances, sign_type_windows, Branch, ChainAngles, Closure, SignType,
    FOUR_POINT_SUBSETS, Y4_MAX,
};
use pentacc::tropical::{check_weight, verify_tables, RationalExponent, WeightVector, Witness};
use pentacc::{Error, Interval};
use serde::Serialize;

use crate::input::{read_configuration, Geometry};
use crate::{svg, Format, Mode, Output};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_UNDECIDED: u8 = 2;
pub const EXIT_EMPTY: u8 = 3;
pub const EXIT_TROPICAL_FAIL: u8 = 4;

pub fn error_json(e: &anyhow::Error) -> String {
    let kind = match e.downcast_ref::<Error>() {
        Some(Error::Collision(..)) => "collision",
        Some(Error::OutOfDomain(_)) => "out_of_domain",
        Some(Error::NotEquilateral(_)) => "not_equilateral",
        Some(Error::Precondition(_)) => "precondition",
        Some(Error::Parse(_)) => "parse",
        Some(_) => "invalid_argument",
        None => "input",
    };
    serde_json::json!({ "error": kind, "message": format!("{e:#}") }).to_string()
}

fn write_out(output: Option<&Path>, body: &str) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn emit<T: Serialize>(output: &Output, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    let body = match output.format {
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
        Format::Text => text(),
    };
    write_out(output.out.as_deref(), &body)
}

fn parse_pair(s: &str, what: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |x: &str| x.parse::<f64>().with_context(|| format!("bad number {x:?} in {what}"));
    match parts.as_slice() {
        [v] => {
            let v = num(v)?;
            Ok((v, v))
        }
        [lo, hi] => Ok((num(lo)?, num(hi)?)),
        _ => bail!("{what} must be `v` or `lo,hi`, got {s:?}"),
    }
}

pub fn symmetric_scan(a: Exponent, branch: Branch, tol: f64, output: &Output) -> Result<u8> {
    let report = scan(branch, a.value, tol)?;
    emit(output, &report, || {
        let mut t = format!("branch {branch}, A = {a}: {} solution(s)\n", report.records.len());
        for r in &report.records {
            let m = r.masses.map(|m| m.0).unwrap_or_default();
            let _ = writeln!(
                t,
                "  {} y4 in {} masses ({:.6}, {:.6}, {:.6}, {:.6}, {:.6})",
                r.sign_type, r.y4, m[0], m[1], m[2], m[3], m[4]
            );
        }
        if !report.unresolved.is_empty() {
            let _ = writeln!(t, "  {} unresolved interval(s)", report.unresolved.len());
        }
        t
    })?;
    Ok(if report.records.is_empty() { EXIT_EMPTY } else { EXIT_OK })
}

fn resolve_window(window: &str, branch: Branch) -> Result<Interval> {
    if let Ok(t) = window.parse::<SignType>() {
        if t.branch() != Some(branch) {
            bail!("sign type {t} is not on branch {branch}");
        }
        let (lo, hi) = scan_window(branch, &t).context("sign type has no window")?;
        return Ok(Interval::new(lo, hi)?);
    }
    let (lo, hi) = parse_pair(window, "--window")?;
    Ok(Interval::new(lo, hi)?)
}

pub fn certify(
    mode: Mode,
    branch: Branch,
    window: &str,
    a: &str,
    max_depth: Option<u32>,
    budget: Option<u64>,
    output: &Output,
) -> Result<u8> {
    let window = resolve_window(window, branch)?;
    let (alo, ahi) = parse_pair(a, "--A")?;
    let a = Interval::new(alo, ahi)?;
    let verdict = match mode {
        Mode::UniqueRoot => {
            let cert = certify_unique_root(window, a, branch, UniqueRootOptions::default())?;
            emit(output, &cert, || {
                format!(
                    "unique root on branch {branch}, y4 in {window}, A in {a}: {:?} ({} piece(s), {} undecided)\n",
                    cert.verdict,
                    cert.pieces.len(),
                    cert.undecided.len()
                )
            })?;
            cert.verdict
        }
        Mode::NoCommonZero => {
            let cert = certify_no_common_zero(
                ParamBox::new(window, a)?,
                branch,
                max_depth.unwrap_or(DEFAULT_MAX_DEPTH),
                budget.unwrap_or(DEFAULT_BOX_BUDGET),
            )?;
            emit(output, &cert, || {
                let mut t = format!(
                    "no common zero on branch {branch}, y4 in {window}, A in {a}: {:?} ({} boxes)\n",
                    cert.verdict, cert.boxes_examined
                );
                for leaf in cert.undecided().take(10) {
                    let _ = writeln!(t, "  undecided y4 {} A {}", leaf.region.y4, leaf.region.a);
                }
                t
            })?;
            cert.verdict
        }
    };
    Ok(match verdict {
        Verdict::Certified => EXIT_OK,
        Verdict::Undecided => EXIT_UNDECIDED,
    })
}

const CLOSURES: [Closure; 2] = [Closure::Plus, Closure::Minus];

fn cell_label(angles: &ChainAngles, a: Exponent) -> String {
    if !angles.is_closable() {
        return "unrealizable".into();
    }
    match region_classify(angles, a) {
        Ok(r) => r.label(),
        Err(_) => "degenerate".into(),
    }
}

#[derive(Serialize)]
struct PointVerdict {
    closure: &'static str,
    region: String,
}

#[derive(Serialize)]
struct PointReport {
    theta12: f64,
    theta23: f64,
    verdicts: Vec<PointVerdict>,
}

pub fn region_map(
    a: Exponent,
    grid: usize,
    at: Option<&str>,
    svg_path: Option<&Path>,
    output: &Output,
) -> Result<u8> {
    if let Some(at) = at {
        let (t12, t23) = parse_pair(at, "--at")?;
        let verdicts: Vec<PointVerdict> = CLOSURES
            .iter()
            .map(|&c| PointVerdict {
                closure: c.label(),
                region: cell_label(&ChainAngles::from_degrees(t12, t23, c), a),
            })
            .collect();
        let report = PointReport {
            theta12: t12.to_radians(),
            theta23: t23.to_radians(),
            verdicts,
        };
        emit(output, &report, || {
            report
                .verdicts
                .iter()
                .map(|v| format!("{}: {}\n", v.closure, v.region))
                .collect()
        })?;
        return Ok(EXIT_OK);
    }
    if grid == 0 {
        bail!("--grid must be positive");
    }
    let step = 360.0 / grid as f64;
    let center = |i: usize| (i as f64 + 0.5) * step;
    let mut csv = String::from("theta12,theta23,closure,region\n");
    let mut cells = Vec::new();
    for c in CLOSURES {
        let mut panel = vec![vec![String::new(); grid]; grid];
        for (i, row) in panel.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let angles = ChainAngles::from_degrees(center(i), center(j), c);
                *cell = cell_label(&angles, a);
                let _ = writeln!(
                    csv,
                    "{:.12},{:.12},{},{}",
                    angles.theta12,
                    angles.theta23,
                    c.label(),
                    cell
                );
            }
        }
        cells.push(panel);
    }
    write_out(output.out.as_deref(), &csv)?;
    if let Some(p) = svg_path {
        let names: Vec<&str> = CLOSURES.iter().map(|c| c.label()).collect();
        write_out(Some(p), &svg::region_map(&names, &cells))?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RayCheck {
    exponent: RationalExponent,
    vector: Vec<String>,
    member: bool,
    witness: Option<Witness>,
}

pub fn tropical_verify(exponents: &[RationalExponent], ray: Option<&WeightVector>, output: &Output) -> Result<u8> {
    let passed;
    if let Some(w) = ray {
        let checks: Vec<RayCheck> = exponents
            .iter()
            .map(|&a| {
                let m = check_weight(w, a);
                RayCheck {
                    exponent: a,
                    vector: w.to_strings(),
                    member: m.member,
                    witness: m.witness,
                }
            })
            .collect();
        passed = checks.iter().all(|c| c.member);
        let doc = serde_json::json!({ "checks": checks, "passed": passed });
        emit(output, &doc, || {
            checks
                .iter()
                .map(|c| match &c.witness {
                    None => format!("A = {}: {w} is in the prevariety\n", c.exponent),
                    Some(wit) => format!(
                        "A = {}: {w} rejected, {} has monomial initial form {}\n",
                        c.exponent, wit.polynomial, wit.initial_term
                    ),
                })
                .collect()
        })?;
    } else {
        let reports: Vec<_> = exponents.iter().map(|&a| verify_tables(a)).collect();
        passed = reports.iter().all(|r| r.passed);
        let doc = serde_json::json!({ "reports": reports, "passed": passed });
        emit(output, &doc, || {
            let mut t = String::new();
            for r in &reports {
                let _ = writeln!(
                    t,
                    "A = {}{}: {}",
                    r.exponent,
                    if r.degenerate { " (degenerate)" } else { "" },
                    if r.passed { "pass" } else { "FAIL" }
                );
                for ray in &r.rays {
                    let _ = writeln!(
                        t,
                        "  {} {:?} orbit C5 {} D5 {} listed {} {}",
                        ray.label,
                        ray.vector,
                        ray.c5_orbit,
                        ray.d5_orbit,
                        ray.multiplicity,
                        if ray.passed { "ok" } else { "FAIL" }
                    );
                }
                let bad: Vec<&str> = r.cones.iter().filter(|c| !c.member).map(|c| c.label.as_str()).collect();
                let _ = writeln!(t, "  cones: {} of {} pass {:?}", r.cones.len() - bad.len(), r.cones.len(), bad);
                let _ = writeln!(t, "  negative-sum rays: {:?}", r.half_space.negative_sum_rays);
            }
            t
        })?;
    }
    Ok(if passed { EXIT_OK } else { EXIT_TROPICAL_FAIL })
}

#[derive(Serialize)]
struct Evaluation {
    exponent: String,
    masses: [f64; 5],
    /// `None` when the input already consists of distance classes.
    equilateral: Option<bool>,
    laura_andoyer: Option<ResidualReport>,
    albouy_chenciner_f: ResidualReport,
    albouy_chenciner_f_least_squares: ResidualReport,
    albouy_chenciner_g: ResidualReport,
    albouy_chenciner_g_least_squares: ResidualReport,
    cayley_menger: BTreeMap<String, f64>,
}

pub fn evaluate(path: &Path, a: Option<Exponent>, output: &Output) -> Result<u8> {
    let config = read_configuration(path)?;
    let a = match a.or(config.exponent) {
        Some(a) => a,
        None => Exponent::rational(3, 1)?,
    };
    let table = config.geometry.table()?;
    let (laura_andoyer_report, equilateral) = match &config.geometry {
        Geometry::Points(c) => (
            Some(laura_andoyer(c, &config.masses, a)?),
            Some(mutual_distances(c)?.is_equilateral()),
        ),
        Geometry::Distances(_) => (None, None),
    };
    let unit = EquationContext::unit();
    let ls = EquationContext::least_squares();
    let cayley_menger = FOUR_POINT_SUBSETS
        .iter()
        .map(|s| {
            let label = format!("cm{}{}{}{}", s[0], s[1], s[2], s[3]);
            (label, cayley_menger_of(&table, *s))
        })
        .collect();
    let report = Evaluation {
        exponent: a.to_string(),
        masses: config.masses.0,
        equilateral,
        laura_andoyer: laura_andoyer_report,
        albouy_chenciner_f: albouy_chenciner_f(&table, &config.masses, a, &unit)?,
        albouy_chenciner_f_least_squares: albouy_chenciner_f(&table, &config.masses, a, &ls)?,
        albouy_chenciner_g: albouy_chenciner_g(&table, &config.masses, a, &unit)?,
        albouy_chenciner_g_least_squares: albouy_chenciner_g(&table, &config.masses, a, &ls)?,
        cayley_menger,
    };
    emit(output, &report, || {
        let mut t = format!("A = {}\n", report.exponent);
        if let Some(la) = &report.laura_andoyer {
            let _ = writeln!(t, "  wedge equations max |L| = {:.3e}", la.max_abs());
        }
        let _ = writeln!(t, "  f (unit) max |f| = {:.3e}", report.albouy_chenciner_f.max_abs());
        let _ = writeln!(
            t,
            "  f (least squares, {:.6}) max |f| = {:.3e}",
            report.albouy_chenciner_f_least_squares.lambda_tilde.unwrap_or(f64::NAN),
            report.albouy_chenciner_f_least_squares.max_abs()
        );
        let _ = writeln!(t, "  g (unit) max |g| = {:.3e}", report.albouy_chenciner_g.max_abs());
        t
    })?;
    Ok(EXIT_OK)
}

pub fn curves(a: Exponent, grid: usize, out: Option<&Path>) -> Result<u8> {
    if grid < 2 {
        bail!("--grid must be at least 2");
    }
    let series: Vec<(&str, Vec<(f64, f64)>, Vec<f64>)> = [("A", Branch::A), ("B", Branch::B)]
        .into_iter()
        .map(|(name, branch)| {
            let pts = (1..grid)
                .map(|i| {
                    let y = Y4_MAX * i as f64 / grid as f64;
                    (y, f_value(y, a.value, branch).unwrap_or(f64::NAN))
                })
                .collect();
            let marks = sign_type_windows(branch).iter().map(|w| w.hi).collect();
            (name, pts, marks)
        })
        .collect();
    write_out(out, &svg::curves(&series, Y4_MAX))?;
    Ok(EXIT_OK)
}
