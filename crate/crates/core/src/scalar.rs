//! Arithmetic abstraction shared by plain floats, intervals and forward-mode
//! dual numbers, so the closed-form expressions are written once and then
//! evaluated pointwise, rigorously, or with their first derivative.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::interval::Interval;

pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Type of real exponents in [`Scalar::powr`].
    type Exponent: Copy + Mul<f64, Output = Self::Exponent>;

    fn constant(v: f64) -> Self;

    fn from_exponent(e: Self::Exponent) -> Self;

    fn sqr(self) -> Self {
        self * self
    }

    fn sqrt(self) -> Self;

    /// `self^p` for a strictly positive base.
    fn powr(self, p: Self::Exponent) -> Self;
}

impl Scalar for f64 {
    type Exponent = f64;

    fn constant(v: f64) -> Self {
        v
    }

    fn from_exponent(e: f64) -> Self {
        e
    }

    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }

    fn powr(self, p: f64) -> Self {
        self.powf(p)
    }
}

impl Scalar for Interval {
    type Exponent = Interval;

    fn constant(v: f64) -> Self {
        Interval::point(v)
    }

    fn from_exponent(e: Interval) -> Self {
        e
    }

    fn sqr(self) -> Self {
        Interval::sqr(self)
    }

    fn sqrt(self) -> Self {
        Interval::sqrt(self)
    }

    fn powr(self, p: Interval) -> Self {
        self.pow(p)
    }
}

/// First-order dual number `v + d·ε` with `ε² = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T> {
    pub v: T,
    pub d: T,
}

impl<T: Scalar> Dual<T> {
    pub fn new(v: T, d: T) -> Self {
        Dual { v, d }
    }

    /// The independent variable: derivative seeded with one.
    pub fn variable(v: T) -> Self {
        Dual { v, d: T::constant(1.0) }
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual::new(self.v + rhs.v, self.d + rhs.d)
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual::new(self.v - rhs.v, self.d - rhs.d)
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Dual::new(self.v * rhs.v, self.d * rhs.v + self.v * rhs.d)
    }
}

impl<T: Scalar> Div for Dual<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q = self.v / rhs.v;
        Dual::new(q, (self.d - q * rhs.d) / rhs.v)
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.v, -self.d)
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    type Exponent = T::Exponent;

    fn constant(v: f64) -> Self {
        Dual::new(T::constant(v), T::constant(0.0))
    }

    fn from_exponent(e: T::Exponent) -> Self {
        Dual::new(T::from_exponent(e), T::constant(0.0))
    }

    fn sqr(self) -> Self {
        Dual::new(self.v.sqr(), T::constant(2.0) * self.v * self.d)
    }

    fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        Dual::new(s, self.d / (T::constant(2.0) * s))
    }

    fn powr(self, p: T::Exponent) -> Self {
        let value = self.v.powr(p);
        Dual::new(value, T::from_exponent(p) * value / self.v * self.d)
    }
}
