//! Central-configuration equations for the homogeneous potential with
//! exponent `A`: the wedge (Laura-Andoyer) form and the mutual-distance
//! (Albouy-Chenciner) forms, plus the mass-linear algebra built on them.

mod mass;
mod region;

pub use mass::{
    mass_coefficient_matrix, mass_kernel, MassCoefficientMatrix, MassKernel, MATRIX_ROWS, RANK_TOL,
    ROW_SIGNS,
};
pub use region::{la2_feasible, region_classify, La2Equation, La2Verdict, Region};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{mutual_distances, oriented_area, DistanceTable, PlanarConfiguration};

/// Potential exponent `A ≥ 2`, optionally with an exact rational form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Exponent {
    pub value: f64,
    /// `(p, q)` with `q ≥ 1` and `p / q = value`.
    pub rational: Option<(i64, i64)>,
}

impl Exponent {
    pub fn new(value: f64) -> Result<Self> {
        if !(value.is_finite() && value >= 2.0) {
            return Err(Error::InvalidArgument(format!("exponent A = {value} must be >= 2")));
        }
        Ok(Exponent {
            value,
            rational: None,
        })
    }

    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidArgument("exponent denominator is zero".into()));
        }
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        let g = num_integer::gcd(p, q);
        let (p, q) = (p / g, q / g);
        let mut e = Exponent::new(p as f64 / q as f64)?;
        e.rational = Some((p, q));
        Ok(e)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rational {
            Some((p, 1)) => write!(f, "{p}"),
            Some((p, q)) => write!(f, "{p}/{q}"),
            None => write!(f, "{}", self.value),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot parse exponent {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            return Exponent::rational(p, q);
        }
        if let Ok(p) = s.parse::<i64>() {
            return Exponent::rational(p, 1);
        }
        Exponent::new(s.parse::<f64>().map_err(|_| bad())?)
    }
}

/// Masses `m1..m5`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MassVector(pub [f64; 5]);

impl MassVector {
    pub fn new(m: [f64; 5]) -> Result<Self> {
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite mass in {m:?}")));
        }
        Ok(MassVector(m))
    }

    pub fn equal() -> Self {
        MassVector([1.0; 5])
    }

    /// Masses of a symmetric shape: `m2 = m1`, `m5 = m3`.
    pub fn symmetric(m1: f64, m3: f64, m4: f64) -> Self {
        MassVector([m1, m1, m3, m4, m3])
    }

    pub fn get(&self, label: usize) -> f64 {
        self.0[label - 1]
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&m| m > 0.0)
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// How `λ̃ = λ / M` enters the distance equations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum LambdaChoice {
    Fixed(f64),
    /// Minimizes the sum of squared `f_{i,j}`.
    LeastSquares,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquationContext {
    pub lambda: LambdaChoice,
}

impl EquationContext {
    /// `λ̃ = 1`, the normalization of the polynomial systems.
    pub fn unit() -> Self {
        EquationContext {
            lambda: LambdaChoice::Fixed(1.0),
        }
    }

    pub fn least_squares() -> Self {
        EquationContext {
            lambda: LambdaChoice::LeastSquares,
        }
    }
}

impl Default for EquationContext {
    fn default() -> Self {
        EquationContext::unit()
    }
}

/// Residuals keyed by equation label (`L13`, `f12`, `g12`, ...).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub residuals: BTreeMap<String, f64>,
    /// Named subsets of the labels.
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub groups: BTreeMap<String, Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda_tilde: Option<f64>,
}

impl ResidualReport {
    pub fn get(&self, label: &str) -> Option<f64> {
        self.residuals.get(label).copied()
    }

    pub fn max_abs(&self) -> f64 {
        self.residuals.values().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn len(&self) -> usize {
        self.residuals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residuals.is_empty()
    }
}

/// Pairs `{i, i+2}` whose wedge equation involves only two masses on an
/// equilateral pentagon.
pub const TWO_MASS_PAIRS: [(usize, usize); 5] = [(1, 3), (2, 4), (3, 5), (1, 4), (2, 5)];
pub const THREE_MASS_PAIRS: [(usize, usize); 5] = [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)];

fn la_label(i: usize, j: usize) -> String {
    format!("L{}{}", i.min(j), i.max(j))
}

/// `L_{i,j} = Σ_{k ≠ i,j} m_k (R_ik − R_jk) Δ_{i,j,k}` with `R = r^{-A}`;
/// symmetric in `i, j`.
pub fn laura_andoyer(
    config: &PlanarConfiguration,
    masses: &MassVector,
    a: Exponent,
) -> Result<ResidualReport> {
    let table = mutual_distances(config)?.table;
    let r = |i: usize, j: usize| table.get(i, j).powf(-a.value);
    let mut report = ResidualReport::default();
    for i in 1..=5 {
        for j in i + 1..=5 {
            let mut sum = 0.0;
            for k in (1..=5).filter(|&k| k != i && k != j) {
                sum += masses.get(k) * (r(i, k) - r(j, k)) * oriented_area(config, i, j, k)?;
            }
            report.residuals.insert(la_label(i, j), sum);
        }
    }
    let group = |pairs: &[(usize, usize)]| pairs.iter().map(|&(i, j)| la_label(i, j)).collect();
    report.groups.insert("two_mass".into(), group(&TWO_MASS_PAIRS));
    report.groups.insert("three_mass".into(), group(&THREE_MASS_PAIRS));
    Ok(report)
}

fn check_table(table: &DistanceTable) -> Result<()> {
    for i in 1..=5 {
        for j in i + 1..=5 {
            let d = table.get(i, j);
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::Collision(i, j));
            }
            if (d - table.get(j, i)).abs() > 1e-12 * d {
                return Err(Error::InvalidArgument(format!("distance table is not symmetric at ({i}, {j})")));
            }
        }
    }
    Ok(())
}

/// `A_{i,j,k} = r_jk² − r_ik² − r_ij²` with `r_ii = 0`.
pub fn distance_triple(table: &DistanceTable, i: usize, j: usize, k: usize) -> f64 {
    let sq = |a: usize, b: usize| if a == b { 0.0 } else { table.get(a, b).powi(2) };
    sq(j, k) - sq(i, k) - sq(i, j)
}

/// `f_{i,j}` split as `a_ij − λ̃ b_ij`.
fn f_parts(table: &DistanceTable, masses: &MassVector, a: Exponent, i: usize, j: usize) -> (f64, f64) {
    let (mut pa, mut pb) = (0.0, 0.0);
    for k in (1..=5).filter(|&k| k != i) {
        let t = masses.get(k) * distance_triple(table, i, j, k);
        pa += t * table.get(i, k).powf(-a.value);
        pb += t;
    }
    (pa, pb)
}

fn resolve_lambda(table: &DistanceTable, masses: &MassVector, a: Exponent, ctx: &EquationContext) -> f64 {
    match ctx.lambda {
        LambdaChoice::Fixed(l) => l,
        LambdaChoice::LeastSquares => {
            let (mut ab, mut bb) = (0.0, 0.0);
            for i in 1..=5 {
                for j in (1..=5).filter(|&j| j != i) {
                    let (pa, pb) = f_parts(table, masses, a, i, j);
                    ab += pa * pb;
                    bb += pb * pb;
                }
            }
            if bb > 0.0 {
                ab / bb
            } else {
                0.0
            }
        }
    }
}

/// The 20 asymmetric distance equations
/// `f_{i,j} = Σ_{k ≠ i} m_k (r_ik^{-A} − λ̃) A_{i,j,k}`.
pub fn albouy_chenciner_f(
    table: &DistanceTable,
    masses: &MassVector,
    a: Exponent,
    ctx: &EquationContext,
) -> Result<ResidualReport> {
    check_table(table)?;
    let lambda = resolve_lambda(table, masses, a, ctx);
    let mut report = ResidualReport {
        lambda_tilde: Some(lambda),
        ..Default::default()
    };
    for i in 1..=5 {
        for j in (1..=5).filter(|&j| j != i) {
            let (pa, pb) = f_parts(table, masses, a, i, j);
            report.residuals.insert(format!("f{i}{j}"), pa - lambda * pb);
        }
    }
    Ok(report)
}

/// The 10 symmetric distance equations, evaluated directly:
/// `g_{i,j} = −2 r_ij² S_ij (m_i + m_j) + Σ_{k ≠ i,j} m_k (S_ik A_{i,j,k} + S_jk A_{j,i,k})`.
pub fn albouy_chenciner_g(
    table: &DistanceTable,
    masses: &MassVector,
    a: Exponent,
    ctx: &EquationContext,
) -> Result<ResidualReport> {
    check_table(table)?;
    let lambda = resolve_lambda(table, masses, a, ctx);
    let s = |i: usize, k: usize| table.get(i, k).powf(-a.value) - lambda;
    let mut report = ResidualReport {
        lambda_tilde: Some(lambda),
        ..Default::default()
    };
    for i in 1..=5 {
        for j in i + 1..=5 {
            let mut g = -2.0 * table.get(i, j).powi(2) * s(i, j) * (masses.get(i) + masses.get(j));
            for k in (1..=5).filter(|&k| k != i && k != j) {
                g += masses.get(k)
                    * (s(i, k) * distance_triple(table, i, j, k) + s(j, k) * distance_triple(table, j, i, k));
            }
            report.residuals.insert(format!("g{i}{j}"), g);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ChainAngles, Closure, cyclic_from_angles, Point2};
    use proptest::prelude::*;

    fn regular() -> PlanarConfiguration {
        cyclic_from_angles(&ChainAngles::new(0.6 * std::f64::consts::PI, 0.6 * std::f64::consts::PI, Closure::Plus)).unwrap()
    }

    fn a(v: f64) -> Exponent {
        Exponent::new(v).unwrap()
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!("5/2".parse::<Exponent>().unwrap().rational, Some((5, 2)));
        assert_eq!("10/4".parse::<Exponent>().unwrap().rational, Some((5, 2)));
        assert_eq!("3".parse::<Exponent>().unwrap().value, 3.0);
        assert!("1.5".parse::<Exponent>().is_err());
        assert!("3/0".parse::<Exponent>().is_err());
        assert_eq!("2.75".parse::<Exponent>().unwrap().rational, None);
    }

    #[test]
    fn regular_pentagon_equal_masses_is_central() {
        for av in [2.0, 3.0] {
            let r = laura_andoyer(&regular(), &MassVector::equal(), a(av)).unwrap();
            assert_eq!(r.len(), 10);
            assert!(r.max_abs() < 1e-12, "A = {av}: {}", r.max_abs());
            assert_eq!(r.groups["two_mass"], ["L13", "L24", "L35", "L14", "L25"]);
        }
    }

    #[test]
    fn regular_pentagon_distance_equations_vanish() {
        let table = mutual_distances(&regular()).unwrap().table;
        let m = MassVector::equal();
        let (pa, pb) = f_parts(&table, &m, a(3.0), 1, 2);
        let ctx = EquationContext {
            lambda: LambdaChoice::Fixed(pa / pb),
        };
        let f = albouy_chenciner_f(&table, &m, a(3.0), &ctx).unwrap();
        assert_eq!(f.len(), 20);
        assert!(f.max_abs() < 1e-12);
        let ls = albouy_chenciner_f(&table, &m, a(3.0), &EquationContext::least_squares()).unwrap();
        assert!((ls.lambda_tilde.unwrap() - pa / pb).abs() < 1e-12);
    }

    #[test]
    fn triple_on_repeated_index() {
        let table = mutual_distances(&regular()).unwrap().table;
        for i in 1..=5 {
            for j in (1..=5).filter(|&j| j != i) {
                let want = -2.0 * table.get(i, j).powi(2);
                assert!((distance_triple(&table, i, j, j) - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn collisions_are_reported() {
        let mut c = regular();
        c.points[3] = c.points[2];
        assert!(matches!(
            laura_andoyer(&c, &MassVector::equal(), a(3.0)),
            Err(Error::Collision(3, 4))
        ));
    }

    fn arb_config() -> impl Strategy<Value = PlanarConfiguration> {
        proptest::array::uniform5((-2.0..2.0f64, -2.0..2.0f64))
            .prop_map(|p| PlanarConfiguration::new(p.map(|(x, y)| Point2::new(x, y))))
            .prop_filter("well separated", |c| {
                mutual_distances(c).map(|m| m.table.min_off_diagonal() > 0.05).unwrap_or(false)
            })
    }

    /// `Σ_k |m_k S_ik A_{i,j,k}|`, the size of the terms summed in `f_{i,j}`.
    fn term_magnitude(t: &DistanceTable, m: &MassVector, av: f64, lambda: f64, i: usize, j: usize) -> f64 {
        (1..=5)
            .filter(|&k| k != i)
            .map(|k| (m.get(k) * (t.get(i, k).powf(-av) - lambda) * distance_triple(t, i, j, k)).abs())
            .sum()
    }

    proptest! {
        #[test]
        fn symmetric_equations_are_sums_of_asymmetric(
            c in arb_config(),
            m in proptest::array::uniform5(0.1..3.0f64),
            av in 2.0..6.0f64,
            lambda in -2.0..2.0f64,
        ) {
            let table = mutual_distances(&c).unwrap().table;
            let ctx = EquationContext { lambda: LambdaChoice::Fixed(lambda) };
            let masses = MassVector(m);
            let f = albouy_chenciner_f(&table, &masses, a(av), &ctx).unwrap();
            let g = albouy_chenciner_g(&table, &masses, a(av), &ctx).unwrap();
            for i in 1..=5 {
                for j in i + 1..=5 {
                    let sum = f.get(&format!("f{i}{j}")).unwrap() + f.get(&format!("f{j}{i}")).unwrap();
                    let direct = g.get(&format!("g{i}{j}")).unwrap();
                    let scale = term_magnitude(&table, &masses, av, lambda, i, j)
                        + term_magnitude(&table, &masses, av, lambda, j, i);
                    prop_assert!((sum - direct).abs() <= 1e-13 * scale, "{} vs {}", sum, direct);
                }
            }
        }

        #[test]
        fn wedge_residuals_scale_with_size(
            c in arb_config(),
            m in proptest::array::uniform5(0.1..3.0f64),
            av in 2.0..6.0f64,
            s in 0.2..5.0f64,
        ) {
            let base = laura_andoyer(&c, &MassVector(m), a(av)).unwrap();
            let scaled = laura_andoyer(&c.scaled(s), &MassVector(m), a(av)).unwrap();
            let factor = s.powf(2.0 - av);
            for (k, v) in &base.residuals {
                let w = scaled.residuals[k];
                prop_assert!((w - factor * v).abs() <= 1e-9 * (w.abs() + (factor * v).abs() + 1e-300).max(1e-12));
            }
        }

        #[test]
        fn wedge_residuals_follow_cyclic_relabeling(
            c in arb_config(),
            m in proptest::array::uniform5(0.1..3.0f64),
            av in 2.0..6.0f64,
        ) {
            // new point i is old point i+1
            let shifted = c.relabeled([2, 3, 4, 5, 1]).unwrap();
            let mm = MassVector([m[1], m[2], m[3], m[4], m[0]]);
            let base = laura_andoyer(&c, &MassVector(m), a(av)).unwrap();
            let moved = laura_andoyer(&shifted, &mm, a(av)).unwrap();
            let next = |i: usize| i % 5 + 1;
            for i in 1..=5 {
                for j in i + 1..=5 {
                    let v = moved.get(&la_label(i, j)).unwrap();
                    let w = base.get(&la_label(next(i), next(j))).unwrap();
                    prop_assert!((v - w).abs() <= 1e-12 * (1.0 + v.abs()));
                }
            }
        }
    }
}
