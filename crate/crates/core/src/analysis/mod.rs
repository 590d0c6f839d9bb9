//! The determinant condition `F(y4, A) = 0` on the symmetric family: its
//! evaluation, root isolation, mass recovery and the dependence on `A`.

mod bifurcation;
mod exclusion;
mod polynomial;
pub(crate) mod roots;

pub use bifurcation::{a4_roots, bifurcation_scan, count_a4_roots, Bifurcation, PENTAGON_EPS};
pub use exclusion::{exclude_sign_types, exclusion_holds_at, Exclusion, EXCLUSION_CLAIMS};
pub use polynomial::{verify_mass_polynomial, MassPolynomial, PolynomialSource};
pub use roots::{
    isolate_roots, scan_window, symmetric_scan, RootIsolation, RootRecord, ScanReport, DEFAULT_TOL,
    WINDOW_INSET,
};

use crate::equations::{mass_coefficient_matrix, Exponent};
use crate::error::Result;
use crate::geometry::{symmetric_quantities, Branch, SymmetricShape};
use crate::interval::Interval;
use crate::scalar::{Dual, Scalar};

/// `y4` of the regular pentagon on branch A (and the regular star on branch B
/// at `sqrt(5 - 2√5) / 2`).
pub fn pentagon_y4() -> f64 {
    0.5 * (5.0 + 2.0 * 5f64.sqrt()).sqrt()
}

pub fn star_y4() -> f64 {
    0.5 * (5.0 - 2.0 * 5f64.sqrt()).sqrt()
}

/// `F = (1−R14)(R35−1)Δ124Δ345 + (1−R13)Δ134((R13−R14)Δ134 + (1−R14)Δ145)`
/// with `R = r^{-A}`, in closed form over any arithmetic.
pub fn f_generic<T: Scalar>(y4: T, a: T::Exponent, branch: Branch) -> T {
    let q = symmetric_quantities(y4, branch);
    let one = T::constant(1.0);
    let half_neg = a * -0.5;
    let r13 = q.r13_sq.powr(half_neg);
    let r14 = q.r14_sq.powr(half_neg);
    let r35 = q.r35_sq.powr(half_neg);
    (one - r14) * (r35 - one) * q.area124 * q.area345
        + (one - r13) * q.area134 * ((r13 - r14) * q.area134 + (one - r14) * q.area145)
}

pub fn f_value(y4: f64, a: f64, branch: Branch) -> Result<f64> {
    SymmetricShape::new(y4, branch)?;
    Exponent::new(a)?;
    Ok(f_generic(y4, a, branch))
}

/// `(F, ∂F/∂y4)` by forward-mode differentiation.
pub fn f_with_derivative(y4: f64, a: f64, branch: Branch) -> Result<(f64, f64)> {
    SymmetricShape::new(y4, branch)?;
    Exponent::new(a)?;
    let d = f_generic(Dual::variable(y4), a, branch);
    Ok((d.v, d.d))
}

/// `F` as the minor of the geometric mass-coefficient matrix.
pub fn f_from_matrix(y4: f64, a: f64, branch: Branch) -> Result<f64> {
    let m = mass_coefficient_matrix(&SymmetricShape::new(y4, branch)?, Exponent::new(a)?)?;
    Ok(m.minor_14_34())
}

/// Interval enclosures of `F` and `∂F/∂y4` over `y4 × a`: the natural
/// extension intersected with the mean-value form about the `y4` midpoint.
pub(crate) fn f_enclosure(y4: Interval, a: Interval, branch: Branch) -> (Interval, Interval) {
    let seed = Dual::new(Dual::variable(y4), Dual::constant(1.0));
    let nat = f_generic(seed, a, branch);
    let (f, df, ddf) = (nat.v.v, nat.v.d, nat.d.d);
    if y4.is_thin() {
        return (f, df);
    }
    let m = Interval::point(y4.mid());
    let at_mid = f_generic(Dual::variable(m), a, branch);
    let offset = y4 - m;
    let tighten = |natural: Interval, mv: Interval| {
        if natural.is_empty() || mv.is_empty() {
            return natural;
        }
        natural.intersect(&mv).unwrap_or(natural)
    };
    (
        tighten(f, at_mid.v + df * offset),
        tighten(df, at_mid.d + ddf * offset),
    )
}

/// Sign of `F` at a point, proven by a thin-interval evaluation; 0 when
/// undecided.
pub fn proven_sign(y4: f64, a: f64, branch: Branch) -> i8 {
    let v = f_generic(Interval::point(y4), Interval::point(a), branch);
    if v.is_empty() {
        0
    } else {
        v.strict_sign()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Y4_MAX;

    #[test]
    fn endpoint_signs_on_branch_a() {
        let square = (2.0 - 3f64.sqrt()) / 2.0;
        for a in [2.0, 3.0, 4.0] {
            assert!(f_value(square, a, Branch::A).unwrap() > 0.0);
            assert!(f_value(star_y4(), a, Branch::A).unwrap() < 0.0);
            assert!(f_value(pentagon_y4(), a, Branch::A).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn closed_form_matches_matrix_minor() {
        for branch in [Branch::A, Branch::B] {
            for i in 1..200 {
                let y = Y4_MAX * i as f64 / 200.0;
                let q = symmetric_quantities(y, branch);
                if q.r35_sq < 1e-6 || q.r13_sq < 1e-6 {
                    continue;
                }
                for a in [2.0, 2.7, 4.0] {
                    let f = f_value(y, a, branch).unwrap();
                    let g = f_from_matrix(y, a, branch).unwrap();
                    let m = crate::equations::mass_coefficient_matrix(&SymmetricShape::new(y, branch).unwrap(), Exponent::new(a).unwrap()).unwrap();
                    // size of the two products in the minor
                    let scale = (m.rows[1][0] * m.rows[3][1]).abs() + (m.rows[1][1] * m.rows[3][0]).abs();
                    assert!((f - g).abs() <= 1e-13 * scale.max(1.0), "{branch} {y} {a}: {f} {g}");
                }
            }
        }
    }

    #[test]
    fn dual_derivative_matches_central_difference() {
        let h = 1e-6;
        for branch in [Branch::A, Branch::B] {
            for i in 1..100 {
                let y = 0.05 + 1.8 * i as f64 / 100.0;
                let q = symmetric_quantities(y, branch);
                if q.r35_sq < 1e-2 || q.r13_sq < 1e-2 {
                    continue;
                }
                let (_, d) = f_with_derivative(y, 3.0, branch).unwrap();
                let fd = (f_value(y + h, 3.0, branch).unwrap() - f_value(y - h, 3.0, branch).unwrap()) / (2.0 * h);
                assert!((d - fd).abs() <= 1e-5 * d.abs().max(1e-3), "{branch} {y}: {d} {fd}");
            }
        }
    }

    #[test]
    fn thin_interval_agrees_with_float() {
        for i in 1..50 {
            let y = 0.2 + i as f64 * 0.03;
            let fi = f_generic(Interval::point(y), Interval::point(3.0), Branch::A);
            let f = f_value(y, 3.0, Branch::A).unwrap();
            assert!(fi.contains(f) || (f - fi.mid()).abs() <= fi.width());
        }
    }

    #[test]
    fn domain_is_checked() {
        assert!(f_value(2.0, 3.0, Branch::A).is_err());
        assert!(f_value(1.0, 1.5, Branch::A).is_err());
    }
}
