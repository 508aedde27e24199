use std::f64::consts::PI;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Row-major 2×2 complex matrix.
pub type Matrix2 = [[Complex64; 2]; 2];

/// Tolerance on `det = 1` and unitarity accepted from callers.
const INPUT_TOLERANCE: f64 = 1e-9;

fn mat_mul(x: &Matrix2, y: &Matrix2) -> Matrix2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (k, cell) in row.iter_mut().enumerate() {
            *cell = x[i][0] * y[0][k] + x[i][1] * y[1][k];
        }
    }
    out
}

fn det(m: &Matrix2) -> Complex64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn to_reals(m: &Matrix2) -> [f64; 8] {
    [
        m[0][0].re, m[0][0].im, m[0][1].re, m[0][1].im, m[1][0].re, m[1][0].im, m[1][1].re,
        m[1][1].im,
    ]
}

fn from_reals(r: &[f64; 8]) -> Matrix2 {
    [
        [Complex64::new(r[0], r[1]), Complex64::new(r[2], r[3])],
        [Complex64::new(r[4], r[5]), Complex64::new(r[6], r[7])],
    ]
}

/// An element of SL(2,C).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SL2CElement {
    m: Matrix2,
}

impl SL2CElement {
    /// Accepts `det` within 1e-9 of 1 and rescales by `det^{-1/2}` so the
    /// stored matrix has unit determinant to rounding.
    pub fn new(m: Matrix2) -> Result<Self> {
        if m.iter()
            .flatten()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::domain("matrix has non-finite entries"));
        }
        let d = det(&m);
        if (d - 1.0).norm() > INPUT_TOLERANCE {
            return Err(Error::domain(format!("det = {d} is not 1")));
        }
        let s = d.sqrt().inv();
        Ok(Self {
            m: m.map(|row| row.map(|z| z * s)),
        })
    }

    /// From `[re00, im00, re01, im01, re10, im10, re11, im11]`.
    pub fn from_reals(r: &[f64; 8]) -> Result<Self> {
        Self::new(from_reals(r))
    }

    pub fn identity() -> Self {
        Self {
            m: [[1.0.into(), 0.0.into()], [0.0.into(), 1.0.into()]],
        }
    }

    pub fn diag(a: Complex64) -> Result<Self> {
        if a.norm() == 0.0 {
            return Err(Error::domain("zero diagonal entry"));
        }
        Self::new([[a, 0.0.into()], [0.0.into(), a.inv()]])
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.m
    }

    pub fn to_reals(&self) -> [f64; 8] {
        to_reals(&self.m)
    }

    pub fn det(&self) -> Complex64 {
        det(&self.m)
    }

    pub fn inverse(&self) -> Self {
        let [[a, b], [c, d]] = self.m;
        Self {
            m: [[d, -b], [-c, a]],
        }
    }

    pub fn adjoint(&self) -> Self {
        let [[a, b], [c, d]] = self.m;
        Self {
            m: [[a.conj(), c.conj()], [b.conj(), d.conj()]],
        }
    }

    /// Largest entrywise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

impl Mul for SL2CElement {
    type Output = SL2CElement;

    fn mul(self, rhs: Self) -> Self {
        Self {
            m: mat_mul(&self.m, &rhs.m),
        }
    }
}

impl Serialize for SL2CElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_reals().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SL2CElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = <[f64; 8]>::deserialize(d)?;
        Self::from_reals(&r).map_err(serde::de::Error::custom)
    }
}

/// z-y-z Euler angles with `α ∈ [0, 2π)`, `β ∈ [0, π]`, `γ ∈ [0, 4π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EulerAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// An element of SU(2), stored as the pair `(a, b)` of
/// `[[a, -b̄], [b, ā]]` with `|a|² + |b|² = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SU2Element {
    a: Complex64,
    b: Complex64,
}

impl SU2Element {
    pub fn identity() -> Self {
        Self {
            a: 1.0.into(),
            b: 0.0.into(),
        }
    }

    /// `[[a, -b̄], [b, ā]]`, after normalizing `(a, b)` to unit length.
    pub fn from_parts(a: Complex64, b: Complex64) -> Result<Self> {
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::domain(
                "SU(2) parts must be finite and not both zero",
            ));
        }
        Ok(Self { a: a / n, b: b / n })
    }

    /// Validates unitarity and `det = 1` to 1e-9.
    pub fn from_matrix(m: Matrix2) -> Result<Self> {
        let [[a, c], [b, d]] = m;
        let off = (c + b.conj()).norm() + (d - a.conj()).norm();
        let norm = a.norm_sqr() + b.norm_sqr();
        if off > INPUT_TOLERANCE || (norm - 1.0).abs() > INPUT_TOLERANCE {
            return Err(Error::domain("matrix is not in SU(2)"));
        }
        Self::from_parts(a, b)
    }

    pub fn from_euler(alpha: f64, beta: f64, gamma: f64) -> Self {
        let (s, c) = (beta / 2.0).sin_cos();
        let a = Complex64::from_polar(c, -(alpha + gamma) / 2.0);
        let b = Complex64::from_polar(s, (alpha - gamma) / 2.0);
        Self { a, b }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn matrix(&self) -> Matrix2 {
        [[self.a, -self.b.conj()], [self.b, self.a.conj()]]
    }

    pub fn trace(&self) -> Complex64 {
        Complex64::new(2.0 * self.a.re, 0.0)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            a: self.a.conj(),
            b: -self.b,
        }
    }

    pub fn to_sl2c(&self) -> SL2CElement {
        SL2CElement { m: self.matrix() }
    }

    /// Euler angles in the ranges of [`EulerAngles`].
    pub fn to_euler(&self) -> EulerAngles {
        let beta = 2.0 * self.b.norm().atan2(self.a.norm());
        // a = cos(β/2) e^{-ip}, b = sin(β/2) e^{iq}, p = (α+γ)/2, q = (α-γ)/2
        let p = if self.a.norm() > 0.0 {
            -self.a.arg()
        } else {
            0.0
        };
        let q = if self.b.norm() > 0.0 {
            self.b.arg()
        } else {
            0.0
        };
        let alpha = (p + q).rem_euclid(2.0 * PI);
        let gamma = (2.0 * p - alpha).rem_euclid(4.0 * PI);
        EulerAngles { alpha, beta, gamma }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.a - other.a).norm().max((self.b - other.b).norm())
    }
}

/// Standard z-y-z factorization `R_z(α) R_y(β) R_z(γ)`.
pub fn su2_from_euler(alpha: f64, beta: f64, gamma: f64) -> SU2Element {
    SU2Element::from_euler(alpha, beta, gamma)
}

impl Mul for SU2Element {
    type Output = SU2Element;

    fn mul(self, rhs: Self) -> Self {
        // first column of the product
        Self {
            a: self.a * rhs.a - self.b.conj() * rhs.b,
            b: self.b * rhs.a + self.a.conj() * rhs.b,
        }
    }
}

impl Serialize for SU2Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        to_reals(&self.matrix()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SU2Element {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = <[f64; 8]>::deserialize(d)?;
        Self::from_matrix(from_reals(&r)).map_err(serde::de::Error::custom)
    }
}
