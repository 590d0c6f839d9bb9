//! Closed intervals of `f64` with outward rounding.
//!
//! Directed rounding is emulated without touching the FPU mode: every basic
//! operation computes the round-to-nearest result together with its exact
//! error term (TwoSum for addition, a fused multiply-add residual for
//! multiplication, division and square root) and steps one ulp outward only
//! when the rounded value lies on the wrong side of the exact one. Near the
//! underflow range, where the residuals stop being exact, the result is
//! widened by one ulp unconditionally.
//!
//! `exp` and `ln` come from the platform libm, which is not correctly
//! rounded; their results are widened by [`LIBM_ULPS`] ulps in each direction.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Outward widening applied to libm transcendental results.
pub const LIBM_ULPS: u32 = 2;

/// Below this magnitude the fused residuals may be inexact.
const TINY: f64 = 1e-290;

#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

fn down_n(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = x.next_down();
    }
    x
}

fn up_n(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = x.next_up();
    }
    x
}

/// Round-to-nearest result `r` of a finite operation with sign of the exact
/// error `err` (exact - r); returns the (down, up) pair.
fn directed(r: f64, err: f64, exact_err: bool) -> (f64, f64) {
    if r.is_infinite() {
        // overflow from finite operands: the exact value is finite
        return if r > 0.0 { (f64::MAX, r) } else { (r, f64::MIN) };
    }
    if !exact_err || r.abs() < TINY {
        return (r.next_down(), r.next_up());
    }
    if err > 0.0 {
        (r, r.next_up())
    } else if err < 0.0 {
        (r.next_down(), r)
    } else {
        (r, r)
    }
}

fn add_dir(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    if a.is_infinite() || b.is_infinite() {
        return (s, s);
    }
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    // TwoSum is exact even for tiny results
    if s.is_infinite() {
        return directed(s, 0.0, false);
    }
    if err > 0.0 {
        (s, s.next_up())
    } else if err < 0.0 {
        (s.next_down(), s)
    } else {
        (s, s)
    }
}

fn mul_dir(a: f64, b: f64) -> (f64, f64) {
    if a == 0.0 || b == 0.0 {
        return (0.0, 0.0);
    }
    let p = a * b;
    if a.is_infinite() || b.is_infinite() {
        return (p, p);
    }
    let err = a.mul_add(b, -p);
    directed(p, err, a.abs() >= TINY && b.abs() >= TINY)
}

fn div_dir(a: f64, b: f64) -> (f64, f64) {
    if a == 0.0 {
        return (0.0, 0.0);
    }
    let q = a / b;
    if a.is_infinite() || b.is_infinite() {
        return (q, q);
    }
    // a - q*b, exact when nothing underflows
    let rem = (-q).mul_add(b, a);
    let err = if b > 0.0 { rem } else { -rem };
    directed(q, err, a.abs() >= TINY && b.abs() >= TINY && q.abs() >= TINY)
}

fn sqrt_dir(a: f64) -> (f64, f64) {
    if a == 0.0 || a.is_infinite() {
        return (a, a);
    }
    let s = a.sqrt();
    let rem = (-s).mul_add(s, a);
    directed(s, rem, a >= TINY)
}

impl Interval {
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub const EMPTY: Interval = Interval {
        lo: f64::NAN,
        hi: f64::NAN,
    };

    /// Builds `[lo, hi]`; fails on reversed or NaN bounds.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::InvalidArgument(format!(
                "interval bounds [{lo}, {hi}]"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(v: f64) -> Self {
        Interval { lo: v, hi: v }
    }

    /// Hull of two (unordered) values.
    pub fn hull_of(a: f64, b: f64) -> Self {
        Interval {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo.is_nan() || self.hi.is_nan()
    }

    pub fn is_entire(&self) -> bool {
        self.lo == f64::NEG_INFINITY && self.hi == f64::INFINITY
    }

    pub fn is_thin(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> f64 {
        let (_, up) = add_dir(self.hi, -self.lo);
        up
    }

    pub fn mid(&self) -> f64 {
        if self.lo.is_infinite() || self.hi.is_infinite() {
            return if self.lo.is_infinite() && self.hi.is_infinite() {
                0.0
            } else if self.lo.is_infinite() {
                f64::MIN
            } else {
                f64::MAX
            };
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn strictly_positive(&self) -> bool {
        self.lo > 0.0
    }

    pub fn strictly_negative(&self) -> bool {
        self.hi < 0.0
    }

    /// `+1` / `-1` when the interval excludes zero, `0` otherwise.
    pub fn strict_sign(&self) -> i8 {
        if self.strictly_positive() {
            1
        } else if self.strictly_negative() {
            -1
        } else {
            0
        }
    }

    pub fn intersect(&self, other: &Interval) -> Result<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if self.is_empty() || other.is_empty() || lo > hi {
            return Err(Error::EmptyInterval);
        }
        Ok(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Splits at the midpoint.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.mid();
        (
            Interval { lo: self.lo, hi: m },
            Interval { lo: m, hi: self.hi },
        )
    }

    pub fn sqr(self) -> Interval {
        if self.is_empty() {
            return Interval::EMPTY;
        }
        let (a, b) = (self.lo.abs(), self.hi.abs());
        let (small, large) = if a < b { (a, b) } else { (b, a) };
        let hi = mul_dir(large, large).1;
        if self.contains_zero() {
            Interval { lo: 0.0, hi }
        } else {
            Interval {
                lo: mul_dir(small, small).0,
                hi,
            }
        }
    }

    /// Square root of the nonnegative part; empty when entirely negative.
    pub fn sqrt(self) -> Interval {
        match self.try_sqrt() {
            Ok(r) => r,
            Err(_) => Interval::EMPTY,
        }
    }

    pub fn try_sqrt(self) -> Result<Interval> {
        let clipped = self.intersect(&Interval {
            lo: 0.0,
            hi: f64::INFINITY,
        })?;
        Ok(Interval {
            lo: sqrt_dir(clipped.lo).0,
            hi: sqrt_dir(clipped.hi).1,
        })
    }

    /// Division that refuses denominators containing zero.
    pub fn try_div(self, rhs: Interval) -> Result<Interval> {
        if self.is_empty() || rhs.is_empty() {
            return Err(Error::EmptyInterval);
        }
        if rhs.contains_zero() {
            return Err(Error::InvalidArgument(format!(
                "division by interval {rhs:?} containing zero"
            )));
        }
        let cands = [
            div_dir(self.lo, rhs.lo),
            div_dir(self.lo, rhs.hi),
            div_dir(self.hi, rhs.lo),
            div_dir(self.hi, rhs.hi),
        ];
        Ok(Interval {
            lo: cands.iter().map(|c| c.0).fold(f64::INFINITY, f64::min),
            hi: cands.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max),
        })
    }

    pub fn exp(self) -> Interval {
        if self.is_empty() {
            return Interval::EMPTY;
        }
        Interval {
            lo: down_n(self.lo.exp(), LIBM_ULPS).max(0.0),
            hi: up_n(self.hi.exp(), LIBM_ULPS),
        }
    }

    /// Natural logarithm of the positive part; empty when `hi <= 0`.
    pub fn ln(self) -> Interval {
        if self.is_empty() || self.hi <= 0.0 {
            return Interval::EMPTY;
        }
        let lo = if self.lo <= 0.0 {
            f64::NEG_INFINITY
        } else {
            down_n(self.lo.ln(), LIBM_ULPS)
        };
        Interval {
            lo,
            hi: up_n(self.hi.ln(), LIBM_ULPS),
        }
    }

    /// Integer power of a nonnegative interval.
    fn powi_nonneg(self, n: u32) -> Interval {
        let mut lo = 1.0;
        let mut hi = 1.0;
        for _ in 0..n {
            lo = mul_dir(lo, self.lo).0;
            hi = mul_dir(hi, self.hi).1;
        }
        Interval { lo, hi }
    }

    /// Integer power.
    pub fn powi(self, n: i32) -> Interval {
        if self.is_empty() {
            return Interval::EMPTY;
        }
        if n == 0 {
            return Interval::point(1.0);
        }
        let k = n.unsigned_abs();
        let pos = if self.lo >= 0.0 {
            self.powi_nonneg(k)
        } else if self.hi <= 0.0 {
            let p = (-self).powi_nonneg(k);
            if k % 2 == 0 {
                p
            } else {
                -p
            }
        } else {
            let m = Interval {
                lo: 0.0,
                hi: self.lo.abs().max(self.hi),
            }
            .powi_nonneg(k);
            if k % 2 == 0 {
                m
            } else {
                Interval {
                    lo: -(Interval {
                        lo: 0.0,
                        hi: -self.lo,
                    })
                    .powi_nonneg(k)
                    .hi,
                    hi: Interval {
                        lo: 0.0,
                        hi: self.hi,
                    }
                    .powi_nonneg(k)
                    .hi,
                }
            }
        };
        if n > 0 {
            pos
        } else {
            Interval::point(1.0) / pos
        }
    }

    /// Real power `self^p` of a positive base. Exponents that are thin
    /// multiples of one half use exact products and square roots; everything
    /// else goes through `exp(p · ln(self))`.
    pub fn pow(self, p: Interval) -> Interval {
        if self.is_empty() || p.is_empty() {
            return Interval::EMPTY;
        }
        if self.lo <= 0.0 {
            return Interval::ENTIRE;
        }
        if p.is_thin() {
            let twice = 2.0 * p.lo;
            if twice.fract() == 0.0 && twice.abs() <= 128.0 {
                let n = twice as i32;
                if n % 2 == 0 {
                    return self.powi(n / 2);
                }
                let root = self.sqrt();
                let k = (n - n.signum()) / 2;
                let whole = self.powi(k.abs());
                return if n > 0 {
                    whole * root
                } else {
                    Interval::point(1.0) / (whole * root)
                };
            }
        }
        (p * self.ln()).exp()
    }
}

impl From<f64> for Interval {
    fn from(v: f64) -> Self {
        Interval::point(v)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::EMPTY;
        }
        Interval {
            lo: add_dir(self.lo, rhs.lo).0,
            hi: add_dir(self.hi, rhs.hi).1,
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        self + (-rhs)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::EMPTY;
        }
        let cands = [
            mul_dir(self.lo, rhs.lo),
            mul_dir(self.lo, rhs.hi),
            mul_dir(self.hi, rhs.lo),
            mul_dir(self.hi, rhs.hi),
        ];
        // 0 * inf: the bound belongs to a real operand times zero
        let fix = |x: f64| if x.is_nan() { 0.0 } else { x };
        Interval {
            lo: cands.iter().map(|c| fix(c.0)).fold(f64::INFINITY, f64::min),
            hi: cands
                .iter()
                .map(|c| fix(c.1))
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

impl Mul<f64> for Interval {
    type Output = Interval;
    fn mul(self, rhs: f64) -> Interval {
        self * Interval::point(rhs)
    }
}

impl Div for Interval {
    type Output = Interval;
    /// Zero-containing denominators give the entire line.
    fn div(self, rhs: Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::EMPTY;
        }
        self.try_div(rhs).unwrap_or(Interval::ENTIRE)
    }
}
