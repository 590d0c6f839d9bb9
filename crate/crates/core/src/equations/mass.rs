//! Mass-linear algebra on the symmetric family.

use nalgebra::{Matrix4x3, Vector3};
use serde::{Deserialize, Serialize};

use super::{Exponent, MassVector};
use crate::error::Result;
use crate::geometry::{mutual_distances, oriented_area, symmetric_coords, SymmetricShape};

/// Row labels of [`MassCoefficientMatrix`].
pub const MATRIX_ROWS: [&str; 4] = ["L13", "L14", "L15", "L34"];

/// Each row equals its wedge equation times this sign.
pub const ROW_SIGNS: [f64; 4] = [1.0, -1.0, -1.0, 1.0];

/// Coefficients of `(m1, m3, m4)` in the wedge equations of a symmetric shape,
/// after substituting `m2 = m1`, `m5 = m3`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MassCoefficientMatrix {
    pub rows: [[f64; 3]; 4],
}

impl MassCoefficientMatrix {
    pub fn apply(&self, m1: f64, m3: f64, m4: f64) -> [f64; 4] {
        self.rows.map(|r| r[0] * m1 + r[1] * m3 + r[2] * m4)
    }

    /// Minor of the `L14` and `L34` rows on the `m1`, `m3` columns.
    pub fn minor_14_34(&self) -> f64 {
        let (a, b) = (self.rows[1], self.rows[3]);
        a[0] * b[1] - a[1] * b[0]
    }

    fn to_matrix(self) -> Matrix4x3<f64> {
        Matrix4x3::from_fn(|i, j| self.rows[i][j])
    }
}

/// Builds the matrix from the realized points (distances and oriented areas
/// measured on coordinates), independent of the closed-form areas.
pub fn mass_coefficient_matrix(shape: &SymmetricShape, a: Exponent) -> Result<MassCoefficientMatrix> {
    let c = symmetric_coords(shape)?;
    let t = mutual_distances(&c)?.table;
    let r = |i: usize, j: usize| t.get(i, j).powf(-a.value);
    let d = |i, j, k| oriented_area(&c, i, j, k);
    let (r13, r14, r35) = (r(1, 3), r(1, 4), r(3, 5));
    let (d123, d124, d134) = (d(1, 2, 3)?, d(1, 2, 4)?, d(1, 3, 4)?);
    let (d135, d145, d345) = (d(1, 3, 5)?, d(1, 4, 5)?, d(3, 4, 5)?);
    Ok(MassCoefficientMatrix {
        rows: [
            [0.0, (1.0 - r35) * d135, (r14 - 1.0) * d134],
            [(1.0 - r14) * d124, (r13 - 1.0) * d134, 0.0],
            [(1.0 - r13) * d123, (r13 - r35) * d135, (r14 - 1.0) * d145],
            [(r13 - r14) * d134 + (1.0 - r14) * d145, (r35 - 1.0) * d345, 0.0],
        ],
    })
}

/// Relative singular-value threshold for numerical rank.
pub const RANK_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum MassKernel {
    Kernel {
        /// Scaled to `m1 = 1` when possible.
        masses: MassVector,
        positive: bool,
        rank: usize,
        singular_values: [f64; 3],
    },
    /// Full column rank: no nonzero mass vector solves the equations.
    Infeasible { singular_values: [f64; 3] },
}

impl MassKernel {
    pub fn masses(&self) -> Option<MassVector> {
        match self {
            MassKernel::Kernel { masses, .. } => Some(*masses),
            MassKernel::Infeasible { .. } => None,
        }
    }

    pub fn positive_masses(&self) -> Option<MassVector> {
        match self {
            MassKernel::Kernel {
                masses,
                positive: true,
                ..
            } => Some(*masses),
            _ => None,
        }
    }
}

pub fn mass_kernel(matrix: &MassCoefficientMatrix) -> MassKernel {
    let svd = matrix.to_matrix().svd(false, true);
    let mut order = [0usize, 1, 2];
    let sv = svd.singular_values;
    order.sort_by(|&x, &y| sv[y].total_cmp(&sv[x]));
    let singular_values = order.map(|i| sv[i]);
    let smax = singular_values[0];
    let rank = singular_values.iter().filter(|&&s| s > RANK_TOL * smax).count();
    if rank == 3 {
        return MassKernel::Infeasible { singular_values };
    }
    let v_t = svd.v_t.expect("right singular vectors requested");
    let row = v_t.row(order[2]);
    let mut k = Vector3::new(row[0], row[1], row[2]);
    if k[0].abs() > 1e-300 {
        k /= k[0];
    } else if k.iter().sum::<f64>() < 0.0 {
        k = -k;
    }
    let masses = MassVector::symmetric(k[0], k[1], k[2]);
    MassKernel::Kernel {
        masses,
        positive: masses.is_positive(),
        rank,
        singular_values,
    }
}
