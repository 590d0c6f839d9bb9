//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};
use pentacc::analysis::{
    bifurcation_scan, exclude_sign_types, f_value, f_with_derivative, proven_sign, scan_window,
    symmetric_scan, verify_mass_polynomial, MassPolynomial, DEFAULT_TOL,
};
use pentacc::certify::{
    certify_no_common_zero, certify_unique_root, ParamBox, UniqueRootOptions, Verdict,
    DEFAULT_BOX_BUDGET, DEFAULT_MAX_DEPTH,
};
use pentacc::equations::{
    albouy_chenciner_f, albouy_chenciner_g, distance_triple, la2_feasible, region_classify,
    EquationContext, Exponent, MassVector, Region,
};
use pentacc::geometry::{
    cayley_menger_of, cyclic_from_angles, mutual_distances, sign_type_windows, Branch,
    ChainAngles, Closure, PlanarConfiguration, Point2, SignType, FOUR_POINT_SUBSETS,
};
use pentacc::tropical::{check_weight, verify_tables, RationalExponent, WeightVector};
use pentacc::Interval;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exponent(v: f64) -> Exponent {
    Exponent::new(v).unwrap()
}

fn vortex_solution() -> Outcome {
    let scan = symmetric_scan(Branch::A, 2.0, DEFAULT_TOL).map_err(|e| e.to_string())?;
    let rec = scan
        .records
        .iter()
        .find(|r| r.sign_type == SignType::A2)
        .ok_or("no positive A2 root at A = 2")?;
    let m = rec.masses.ok_or("no masses")?;
    let (m3, m4, m5) = (m.get(3), m.get(4), m.get(5));
    ensure((m4 - 0.34199).abs() <= 1e-4, || format!("m4 = {m4}"))?;
    ensure((m3 - 2.32).abs() <= 2e-2 && (m5 - 2.32).abs() <= 2e-2, || format!("m3 = {m3}, m5 = {m5}"))?;
    ensure((m3 - m5).abs() <= 1e-9 * m3, || format!("m3 = {m3} differs from m5 = {m5}"))?;
    let res = verify_mass_polynomial(&MassPolynomial::vortex(), m4);
    ensure(res < 1e-6, || format!("degree-9 relative residual {res:e}"))?;
    Ok(format!("m4 = {m4:.6}, m3 = m5 = {m3:.5}, residual {res:.1e}"))
}

fn a4_case() -> Outcome {
    let scan = symmetric_scan(Branch::A, 4.0, DEFAULT_TOL).map_err(|e| e.to_string())?;
    let poly = MassPolynomial::a4();
    let residuals: Vec<(SignType, f64, f64)> = scan
        .records
        .iter()
        .filter_map(|r| r.masses.map(|m| (r.sign_type.clone(), m.get(4), verify_mass_polynomial(&poly, m.get(4)))))
        .collect();
    let best = residuals
        .iter()
        .filter(|r| r.0 == SignType::A2)
        .min_by(|a, b| a.2.total_cmp(&b.2))
        .ok_or("no A2 root at A = 4")?;
    ensure(best.2 < 1e-6, || format!("degree-16 relative residual {:e} at m4 = {}", best.2, best.1))?;
    Ok(format!("m4 = {:.6}, residual {:.1e}", best.1, best.2))
}

fn endpoint_signs() -> Outcome {
    let lo = (2.0 - 3f64.sqrt()) / 2.0;
    let hi = (5.0 - 2.0 * 5f64.sqrt()).sqrt() / 2.0;
    for a in [2.0, 2.5, 3.0, 4.0, 6.0] {
        let (sl, sh) = (proven_sign(lo, a, Branch::A), proven_sign(hi, a, Branch::A));
        ensure(sl == 1 && sh == -1, || format!("A = {a}: signs {sl}, {sh}"))?;
    }
    Ok("F > 0 and F < 0 proven at both ends for 5 exponents".into())
}

fn window(branch: Branch, t: SignType) -> Interval {
    let (lo, hi) = scan_window(branch, &t).unwrap();
    Interval::new(lo, hi).unwrap()
}

fn certification() -> Outcome {
    let iv = |a, b| Interval::new(a, b).unwrap();
    let t = Instant::now();
    let a2 = certify_unique_root(window(Branch::A, SignType::A2), iv(2.0, 3.0), Branch::A, UniqueRootOptions::default())
        .map_err(|e| e.to_string())?;
    let t_a2 = t.elapsed();
    ensure(a2.verdict == Verdict::Certified, || "A2 x [2,3] undecided".into())?;
    let t = Instant::now();
    let b2 = certify_unique_root(window(Branch::B, SignType::B2), iv(2.0, 6.0), Branch::B, UniqueRootOptions::default())
        .map_err(|e| e.to_string())?;
    let t_b2 = t.elapsed();
    ensure(b2.verdict == Verdict::Certified, || "B2 x [2,6] undecided".into())?;
    let t = Instant::now();
    let region = ParamBox::new(window(Branch::A, SignType::A4), iv(2.0, 3.0)).unwrap();
    let a4 = certify_no_common_zero(region, Branch::A, DEFAULT_MAX_DEPTH, DEFAULT_BOX_BUDGET)
        .map_err(|e| e.to_string())?;
    let t_a4 = t.elapsed();
    ensure(a4.verdict == Verdict::Certified, || format!("A4 x [2,3]: {} undecided boxes", a4.undecided().count()))?;
    let cap = Duration::from_secs(300);
    ensure(t_a2 < cap && t_b2 < cap && t_a4 < cap, || "a certificate exceeded 5 min".into())?;
    Ok(format!(
        "A2 {:.2?}, B2 {:.2?}, A4 no common zero {:.2?} ({} boxes)",
        t_a2, t_b2, t_a4, a4.boxes_examined
    ))
}

fn bifurcation() -> Outcome {
    const A_C: f64 = 3.12036856;
    let b = bifurcation_scan((3.0, 3.3), 0.01).map_err(|e| e.to_string())?;
    ensure((b.a_lo - A_C).abs() <= 1e-3 && (b.a_hi - A_C).abs() <= 1e-3, || {
        format!("bracket [{}, {}]", b.a_lo, b.a_hi)
    })?;
    ensure(b.count_below == 1 && b.count_above == 3, || {
        format!("counts {} -> {}", b.count_below, b.count_above)
    })?;
    Ok(format!("A_c in [{:.8}, {:.8}]", b.a_lo, b.a_hi))
}

fn exclusions() -> Outcome {
    let mut checked = 0;
    for a in [2.0, 3.0, 4.0] {
        for branch in [Branch::A, Branch::B] {
            for e in exclude_sign_types(branch, exponent(a), 10_000).map_err(|e| e.to_string())? {
                ensure(e.holds(), || {
                    format!("{} at A = {a}: {} counterexamples", e.sign_type, e.counterexamples.len())
                })?;
                checked += 1;
            }
        }
    }
    ensure(checked == 21, || format!("{checked} claims checked"))?;
    Ok("A1 A3 A5 B1 B3 B4 B5 excluded at A = 2, 3, 4 (10^4 points each)".into())
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let den: i64 = rng.gen_range(1_000..1_000_000);
    let num: i64 = rng.gen_range(-3 * den..=3 * den);
    BigRational::new(num.into(), den.into())
}

fn tropical() -> Outcome {
    for (p, q) in [(3, 1), (5, 2)] {
        let a = RationalExponent::new(p, q).unwrap();
        let report = verify_tables(a);
        let bad_rays: Vec<&str> = report.rays.iter().filter(|r| !r.passed).map(|r| r.label.as_str()).collect();
        let bad_cones: Vec<&str> = report.cones.iter().filter(|c| !c.member).map(|c| c.label.as_str()).collect();
        ensure(report.passed, || format!("A = {a}: rays {bad_rays:?}, cones {bad_cones:?}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = RationalExponent::new(3, 1).unwrap();
    for _ in 0..10 {
        let w = WeightVector(std::array::from_fn(|_| random_rational(&mut rng)));
        let m = check_weight(&w, a);
        ensure(!m.member, || format!("random vector {w} accepted"))?;
    }
    Ok("all orbit members and 22 cones at A = 3, 5/2; 10 random vectors rejected".into())
}

fn lemma_convex_diagonals() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut accepted, mut feasible) = (0usize, 0usize);
    let exponents = [2.0, 2.5, 3.0, 4.0];
    while accepted < 10_000 {
        let closure = if rng.gen_bool(0.5) { Closure::Plus } else { Closure::Minus };
        let angles = ChainAngles::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..PI), closure);
        if !angles.is_closable() {
            continue;
        }
        let Ok(config) = cyclic_from_angles(&angles) else { continue };
        if !config.is_strictly_convex() {
            continue;
        }
        accepted += 1;
        let a = exponent(exponents[accepted % exponents.len()]);
        if la2_feasible(&config, a).map_err(|e| e.to_string())?.feasible {
            feasible += 1;
            let d = mutual_distances(&config).unwrap().classes.unwrap();
            let edge = d.edge();
            ensure(d.diagonals().iter().all(|&x| x > edge), || {
                format!("feasible convex shape with a short diagonal at {angles:?}")
            })?;
        }
    }
    ensure(feasible > 0, || "no feasible convex shape sampled".into())?;
    let at = |deg: f64| region_classify(&ChainAngles::from_degrees(deg, deg, Closure::Plus), exponent(2.0)).unwrap();
    ensure(at(108.0) == Region::I, || format!("108 deg -> {:?}", at(108.0)))?;
    ensure(at(36.0) == Region::II, || format!("36 deg -> {:?}", at(36.0)))?;
    Ok(format!("{feasible} of 10^4 convex samples feasible, all with long diagonals; 108 -> I, 36 -> II"))
}

fn random_config(rng: &mut ChaCha8Rng) -> PlanarConfiguration {
    PlanarConfiguration::new(std::array::from_fn(|_| {
        Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
    }))
}

fn exact(x: f64) -> BigRational {
    BigRational::from_f64(x).unwrap()
}

fn cayley_menger_suite(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    let mut n = 0;
    while n < 1000 {
        let c = random_config(rng);
        let Ok(md) = mutual_distances(&c) else { continue };
        if md.table.min_off_diagonal() < 1e-3 {
            continue;
        }
        n += 1;
        let dmax = md.table.0.iter().flatten().cloned().fold(0.0, f64::max);
        for s in FOUR_POINT_SUBSETS {
            let rel = cayley_menger_of(&md.table, s).abs() / dmax.powi(6);
            worst = worst.max(rel);
        }
    }
    ensure(worst <= 1e-10, || format!("CM relative value {worst:e}"))?;
    Ok(worst)
}

fn random_interval(rng: &mut ChaCha8Rng) -> Interval {
    let scale = 10f64.powi(rng.gen_range(-3..4));
    let a = rng.gen_range(-1.0..1.0) * scale;
    let b = a + rng.gen_range(0.0..1.0) * scale * if rng.gen_bool(0.2) { 0.0 } else { 1.0 };
    Interval::new(a, b).unwrap()
}

fn encloses(iv: Interval, lo: &BigRational, hi: &BigRational) -> bool {
    !iv.is_empty() && exact(iv.lo) <= *lo && *hi <= exact(iv.hi)
}

fn hull(vals: Vec<BigRational>) -> (BigRational, BigRational) {
    let lo = vals.iter().min().unwrap().clone();
    let hi = vals.iter().max().unwrap().clone();
    (lo, hi)
}

fn interval_suite(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut ops = 0;
    while ops < 1_000_000 {
        let (x, y) = (random_interval(rng), random_interval(rng));
        let (xl, xh, yl, yh) = (exact(x.lo), exact(x.hi), exact(y.lo), exact(y.hi));
        let op = ops % 5;
        let ok = match op {
            0 => encloses(x + y, &(&xl + &yl), &(&xh + &yh)),
            1 => encloses(x - y, &(&xl - &yh), &(&xh - &yl)),
            2 => {
                let (lo, hi) = hull(vec![&xl * &yl, &xl * &yh, &xh * &yl, &xh * &yh]);
                encloses(x * y, &lo, &hi)
            }
            3 => {
                if y.contains_zero() {
                    continue;
                }
                let (lo, hi) = hull(vec![&xl / &yl, &xl / &yh, &xh / &yl, &xh / &yh]);
                encloses(x / y, &lo, &hi)
            }
            _ => {
                let ax = Interval::new(x.lo.abs().min(x.hi.abs()), x.lo.abs().max(x.hi.abs())).unwrap();
                let r = ax.sqrt();
                // r must bracket √lo and √hi: r.lo² ≤ lo and r.hi² ≥ hi.
                let (al, ah) = (exact(ax.lo), exact(ax.hi));
                let lo_ok = r.lo <= 0.0 || &exact(r.lo) * &exact(r.lo) <= al;
                let hi_ok = &exact(r.hi) * &exact(r.hi) >= ah;
                let sq = x.sqr();
                let (sl, sh) = if xl.is_negative() && xh.is_positive() {
                    (BigRational::zero(), std::cmp::max(&xl * &xl, &xh * &xh))
                } else {
                    hull(vec![&xl * &xl, &xh * &xh])
                };
                lo_ok && hi_ok && encloses(sq, &sl, &sh)
            }
        };
        ensure(ok, || format!("op {op} on {x} and {y} lost the exact result"))?;
        ops += 1;
    }
    Ok(ops)
}

fn g_identity_suite(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    let mut n = 0;
    while n < 1000 {
        let c = random_config(rng);
        let Ok(md) = mutual_distances(&c) else { continue };
        if md.table.min_off_diagonal() < 1e-2 {
            continue;
        }
        n += 1;
        let t = md.table;
        let m = MassVector::new(std::array::from_fn(|_| rng.gen_range(0.1..10.0))).unwrap();
        let a = exponent(rng.gen_range(2.0..6.0));
        let ctx = if n % 2 == 0 { EquationContext::unit() } else { EquationContext::least_squares() };
        let f = albouy_chenciner_f(&t, &m, a, &ctx).map_err(|e| e.to_string())?;
        let g = albouy_chenciner_g(&t, &m, a, &ctx).map_err(|e| e.to_string())?;
        let lambda = f.lambda_tilde.unwrap();
        for i in 1..=5 {
            for j in i + 1..=5 {
                let fij = f.get(&format!("f{i}{j}")).unwrap();
                let fji = f.get(&format!("f{j}{i}")).unwrap();
                let gij = g.get(&format!("g{i}{j}")).unwrap();
                let mut scale = 0.0;
                for (p, q) in [(i, j), (j, i)] {
                    for k in (1..=5).filter(|&k| k != p) {
                        scale += m.get(k)
                            * (t.get(p, k).powf(-a.value) + lambda.abs())
                            * distance_triple(&t, p, q, k).abs();
                    }
                }
                worst = worst.max((gij - fij - fji).abs() / scale);
            }
        }
    }
    ensure(worst <= 1e-13, || format!("g identity relative error {worst:e}"))?;
    Ok(worst)
}

fn derivative_suite() -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for branch in [Branch::A, Branch::B] {
        let windows = sign_type_windows(branch);
        for &a in &[2.0, 3.0, 4.5, 6.0] {
            for w in windows {
                let (lo, hi) = (w.lo + 0.02 * (w.hi - w.lo), w.hi - 0.02 * (w.hi - w.lo));
                let k = 1000 / (2 * 4 * windows.len()) + 1;
                for i in 0..k {
                    let y = lo + (hi - lo) * (i as f64 + 0.5) / k as f64;
                    let (_, d) = f_with_derivative(y, a, branch).map_err(|e| e.to_string())?;
                    let h = 1e-6 * y.max(1e-2);
                    let fd = (f_value(y + h, a, branch).unwrap() - f_value(y - h, a, branch).unwrap()) / (2.0 * h);
                    let rel = (d - fd).abs() / d.abs().max(fd.abs()).max(1.0);
                    worst = worst.max(rel);
                    n += 1;
                }
            }
        }
    }
    ensure(n >= 1000, || format!("only {n} grid points"))?;
    ensure(worst <= 1e-5, || format!("dual vs finite difference {worst:e}"))?;
    Ok(worst)
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cm = cayley_menger_suite(&mut rng)?;
    let ops = interval_suite(&mut rng)?;
    let g = g_identity_suite(&mut rng)?;
    let d = derivative_suite()?;
    Ok(format!(
        "CM {cm:.1e}, {ops} interval ops exact-enclosed, g identity {g:.1e}, derivative {d:.1e}"
    ))
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "vortex symmetric solution", limit: Duration::from_secs(10), run: vortex_solution },
        Criterion { id: 2, name: "A = 4 mass polynomial", limit: Duration::from_secs(10), run: a4_case },
        Criterion { id: 3, name: "endpoint signs", limit: Duration::from_secs(60), run: endpoint_signs },
        Criterion { id: 4, name: "interval certification", limit: Duration::from_secs(900), run: certification },
        Criterion { id: 5, name: "bifurcation bracket", limit: Duration::from_secs(120), run: bifurcation },
        Criterion { id: 6, name: "sign-type exclusions", limit: Duration::from_secs(600), run: exclusions },
        Criterion { id: 7, name: "tropical tables", limit: Duration::from_secs(60), run: tropical },
        Criterion { id: 8, name: "convex feasibility and regions", limit: Duration::from_secs(600), run: lemma_convex_diagonals },
        Criterion { id: 9, name: "property suites", limit: Duration::from_secs(600), run: property_suites },
    ];
    let mut failed = 0;
    for c in &criteria {
        let t = Instant::now();
        let outcome = (c.run)();
        let elapsed = t.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > c.limit => Err(format!("{msg}; took {elapsed:.2?}, limit {:?}", c.limit)),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("criterion {} {}: PASS ({msg}; {elapsed:.2?})", c.id, c.name),
            Err(msg) => {
                failed += 1;
                println!("criterion {} {}: FAIL ({msg}; {elapsed:.2?})", c.id, c.name);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
