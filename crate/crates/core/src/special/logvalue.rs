//! Complex numbers stored as `(ln|z|, arg z)`.
//!
//! Values such as `Γ(2 + 2j)` or `ε^{2(m+j+1)}` leave the `f64` range long
//! before the products they appear in do, so intermediate results are kept in
//! this form and only converted back to linear complex numbers at the end.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Wraps an angle into `(-π, π]`.
pub fn wrap_phase(theta: f64) -> f64 {
    if !theta.is_finite() {
        return theta;
    }
    let r = theta.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// A complex number `exp(log_mag) · exp(i·phase)`.
///
/// `log_mag = -∞` encodes an exact zero and always carries `phase = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "RawLogComplex", into = "RawLogComplex")]
pub struct LogComplexValue {
    log_mag: f64,
    phase: f64,
}

#[derive(Serialize, Deserialize)]
struct RawLogComplex {
    log_mag: Option<f64>,
    phase: f64,
}

impl From<RawLogComplex> for LogComplexValue {
    fn from(raw: RawLogComplex) -> Self {
        LogComplexValue::new(raw.log_mag.unwrap_or(f64::NEG_INFINITY), raw.phase)
    }
}

impl From<LogComplexValue> for RawLogComplex {
    fn from(v: LogComplexValue) -> Self {
        // JSON has no -inf; zero is written as a null log-magnitude.
        RawLogComplex {
            log_mag: v.log_mag.is_finite().then_some(v.log_mag),
            phase: v.phase,
        }
    }
}

impl LogComplexValue {
    pub fn new(log_mag: f64, phase: f64) -> Self {
        if log_mag == f64::NEG_INFINITY {
            Self::zero()
        } else {
            Self {
                log_mag,
                phase: wrap_phase(phase),
            }
        }
    }

    pub const fn zero() -> Self {
        Self {
            log_mag: f64::NEG_INFINITY,
            phase: 0.0,
        }
    }

    pub const fn one() -> Self {
        Self {
            log_mag: 0.0,
            phase: 0.0,
        }
    }

    /// `exp(w)` for a complex exponent `w`.
    pub fn from_log(w: Complex64) -> Self {
        Self::new(w.re, w.im)
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return Self::zero();
        }
        Self::new(z.norm().ln(), z.arg())
    }

    pub fn from_real(x: f64) -> Self {
        Self::from_complex(Complex64::new(x, 0.0))
    }

    pub fn log_mag(&self) -> f64 {
        self.log_mag
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn is_zero(&self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    pub fn is_finite(&self) -> bool {
        self.is_zero() || (self.log_mag.is_finite() && self.phase.is_finite())
    }

    /// `ln z` on the principal branch; `-∞` for zero.
    pub fn ln(&self) -> Complex64 {
        Complex64::new(self.log_mag, self.phase)
    }

    pub fn abs(&self) -> f64 {
        self.log_mag.exp()
    }

    /// Linear value; overflows to infinity or underflows to zero silently.
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.log_mag.exp(), self.phase)
    }

    /// Linear value, or `None` when the magnitude is not representable.
    pub fn checked_to_complex(&self) -> Option<Complex64> {
        if self.is_zero() {
            return Some(Complex64::new(0.0, 0.0));
        }
        if !self.log_mag.is_finite() || self.log_mag > f64::MAX.ln() {
            return None;
        }
        Some(self.to_complex())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.log_mag, -self.phase)
    }

    pub fn recip(&self) -> Self {
        if self.is_zero() {
            return Self::new(f64::INFINITY, 0.0);
        }
        Self::new(-self.log_mag, -self.phase)
    }

    /// Multiplies by a real scalar.
    pub fn scale(&self, factor: f64) -> Self {
        *self * Self::from_real(factor)
    }
}

impl Default for LogComplexValue {
    fn default() -> Self {
        Self::zero()
    }
}

impl Mul for LogComplexValue {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::new(self.log_mag + rhs.log_mag, self.phase + rhs.phase)
    }
}

impl Div for LogComplexValue {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        Self::new(self.log_mag - rhs.log_mag, self.phase - rhs.phase)
    }
}

impl Neg for LogComplexValue {
    type Output = Self;

    fn neg(self) -> Self {
        if self.is_zero() {
            return self;
        }
        Self::new(self.log_mag, self.phase + PI)
    }
}

impl Add for LogComplexValue {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.log_mag >= rhs.log_mag {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let rel =
            Complex64::from_polar((small.log_mag - big.log_mag).exp(), small.phase - big.phase);
        let sum = Complex64::new(1.0, 0.0) + rel;
        if sum.norm() <= 4.0 * f64::EPSILON {
            // cancellation below rounding level
            return Self::zero();
        }
        big * Self::from_complex(sum)
    }
}

impl std::iter::Sum for LogComplexValue {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl From<Complex64> for LogComplexValue {
    fn from(z: Complex64) -> Self {
        Self::from_complex(z)
    }
}

impl fmt::Display for LogComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({}) * exp(i*{})", self.log_mag, self.phase)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_convention() {
        let z = LogComplexValue::from_complex(Complex64::new(0.0, 0.0));
        assert!(z.is_zero());
        assert_eq!(z.phase(), 0.0);
        assert_eq!(LogComplexValue::new(f64::NEG_INFINITY, 2.0).phase(), 0.0);
        assert!((z * LogComplexValue::from_real(3.0)).is_zero());
    }

    #[test]
    fn phase_is_wrapped() {
        let v = LogComplexValue::new(0.0, 3.0 * PI);
        assert!((v.phase() - PI).abs() < 1e-15);
        let w = LogComplexValue::new(0.0, -PI);
        assert!((w.phase() - PI).abs() < 1e-15);
    }

    #[test]
    fn huge_products_stay_finite() {
        let big = LogComplexValue::new(600.0, 0.5);
        let p = big * big;
        assert!(p.checked_to_complex().is_none());
        let q = p / big / big;
        let c = q.to_complex();
        assert!((c.re - 1.0).abs() < 1e-12 && c.im.abs() < 1e-12);
    }

    #[test]
    fn addition_cancels_to_zero() {
        let a = LogComplexValue::from_real(2.5);
        assert!((a + (-a)).is_zero());
    }

    #[test]
    fn json_zero_round_trip() {
        let s = serde_json::to_string(&LogComplexValue::zero()).unwrap();
        let back: LogComplexValue = serde_json::from_str(&s).unwrap();
        assert!(back.is_zero());
    }

    proptest! {
        #[test]
        fn complex_round_trip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
            prop_assume!(re.abs() + im.abs() > 1e-300);
            let z = Complex64::new(re, im);
            let v = LogComplexValue::from_complex(z);
            let back = LogComplexValue::from_complex(v.to_complex());
            prop_assert!((back.log_mag() - v.log_mag()).abs() <= 1e-12 * v.log_mag().abs().max(1.0));
            prop_assert!(wrap_phase(back.phase() - v.phase()).abs() <= 1e-12);
        }

        #[test]
        fn multiplication_adds_logs(a in -50.0f64..50.0, pa in -10.0f64..10.0,
                                    b in -50.0f64..50.0, pb in -10.0f64..10.0) {
            let p = LogComplexValue::new(a, pa) * LogComplexValue::new(b, pb);
            prop_assert!((p.log_mag() - (a + b)).abs() < 1e-12);
            prop_assert!(p.phase() > -PI && p.phase() <= PI);
            prop_assert!(wrap_phase(p.phase() - (pa + pb)).abs() < 1e-12);
        }

        #[test]
        fn addition_matches_linear(re1 in -1e3f64..1e3, im1 in -1e3f64..1e3,
                                   re2 in -1e3f64..1e3, im2 in -1e3f64..1e3) {
            let z1 = Complex64::new(re1, im1);
            let z2 = Complex64::new(re2, im2);
            let s = (LogComplexValue::from(z1) + LogComplexValue::from(z2)).to_complex();
            prop_assert!((s - (z1 + z2)).norm() <= 1e-12 * (z1.norm() + z2.norm()).max(1e-300));
        }
    }
}
