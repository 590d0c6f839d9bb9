//! Published univariate polynomials satisfied by `m4` on the symmetric
//! family, used as independent checks of recovered masses.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolynomialSource {
    /// Vortex case `A = 2`.
    A2Vortex,
    /// `A = 4`.
    A4Case,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MassPolynomial {
    /// Integer coefficients, highest degree first.
    pub coefficients: Vec<i64>,
    pub variable: String,
    pub source: PolynomialSource,
}

impl MassPolynomial {
    pub fn vortex() -> Self {
        MassPolynomial {
            coefficients: vec![64, -752, 2316, -109, -2830, 45, 1362, 215, -149, -17],
            variable: "m4".into(),
            source: PolynomialSource::A2Vortex,
        }
    }

    pub fn a4() -> Self {
        MassPolynomial {
            coefficients: vec![
                12288, -232064, 636883, 5616221, 2342977, -15626678, -6546497, 17143788, -1407668,
                -5326884, 456601, 2374416, -239673, -387130, -33431, 25519, 957,
            ],
            variable: "m4".into(),
            source: PolynomialSource::A4Case,
        }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().fold(0.0, |acc, &c| acc * x + c as f64)
    }
}

/// `|p(m4)| / Σ |c_i| |m4|^i`.
pub fn verify_mass_polynomial(poly: &MassPolynomial, m4: f64) -> f64 {
    let scale = poly
        .coefficients
        .iter()
        .fold(0.0, |acc, &c| acc * m4.abs() + (c as f64).abs());
    poly.eval(m4).abs() / scale
}
