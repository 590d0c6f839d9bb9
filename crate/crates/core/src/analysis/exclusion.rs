//! Sign types ruled out because one wedge equation has a strict sign for all
//! positive masses.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::equations::{mass_coefficient_matrix, Exponent, MATRIX_ROWS};
use crate::error::Result;
use crate::geometry::{sign_type_windows, Branch, SignType, SymmetricShape};

/// Entries this small count as zero when checking a sign claim.
pub const COEFF_ZERO: f64 = 1e-12;

/// Excluded types with the equation and the sign it takes (in the sign
/// convention of the mass-coefficient matrix rows).
pub const EXCLUSION_CLAIMS: [(SignType, &str, i8); 7] = [
    (SignType::A1, "L13", -1),
    (SignType::A3, "L13", 1),
    (SignType::A5, "L13", -1),
    (SignType::B1, "L13", 1),
    (SignType::B3, "L13", 1),
    (SignType::B4, "L14", 1),
    (SignType::B5, "L13", -1),
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Exclusion {
    pub sign_type: SignType,
    pub equation: String,
    pub sign: i8,
    pub points_checked: usize,
    /// `y4` values where the claim fails.
    pub counterexamples: Vec<f64>,
}

impl Exclusion {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// True when every coefficient of the row has the given sign or vanishes and
/// at least one is strictly signed, so the row is strictly signed for every
/// positive mass vector.
pub fn exclusion_holds_at(shape: &SymmetricShape, a: Exponent, equation: &str, sign: i8) -> Result<bool> {
    let m = mass_coefficient_matrix(shape, a)?;
    let row = MATRIX_ROWS
        .iter()
        .position(|&l| l == equation)
        .map(|i| m.rows[i])
        .ok_or_else(|| crate::error::Error::InvalidArgument(format!("no matrix row {equation}")))?;
    let s = sign as f64;
    let weak = row.iter().all(|&c| s * c > -COEFF_ZERO);
    let strict = row.iter().any(|&c| s * c > COEFF_ZERO);
    Ok(weak && strict)
}

/// Checks each exclusion claim of the branch on `points` interior grid
/// points of its sign-type window.
pub fn exclude_sign_types(branch: Branch, a: Exponent, points: usize) -> Result<Vec<Exclusion>> {
    let windows = sign_type_windows(branch);
    EXCLUSION_CLAIMS
        .iter()
        .filter(|(t, _, _)| t.branch() == Some(branch))
        .map(|(t, eq, sign)| {
            let w = windows.iter().find(|w| &w.sign_type == t).expect("window per type");
            let ys: Vec<f64> = (0..points)
                .map(|i| w.lo + (w.hi - w.lo) * (i as f64 + 0.5) / points as f64)
                .collect();
            let bad: Result<Vec<Option<f64>>> = ys
                .par_iter()
                .map(|&y| {
                    let ok = exclusion_holds_at(&SymmetricShape { y4: y, branch }, a, eq, *sign)?;
                    Ok((!ok).then_some(y))
                })
                .collect();
            Ok(Exclusion {
                sign_type: t.clone(),
                equation: eq.to_string(),
                sign: *sign,
                points_checked: points,
                counterexamples: bad?.into_iter().flatten().collect(),
            })
        })
        .collect()
}
