//! Complex log-gamma, Pochhammer symbols and log-factorials.

use num_complex::Complex64;

use super::LogComplexValue;
use crate::error::{Error, Result};

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Stirling is applied once `Re z >= 0` and `|z|` reaches this radius.
const STIRLING_RADIUS: f64 = 12.0;

/// `B_{2k} / (2k (2k-1))` for k = 1..=10.
const STIRLING_COEFFS: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for &c in STIRLING_COEFFS.iter() {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + series
}

/// Principal branch of `ln Γ(z)`.
///
/// The branch is the one continuous on `C \ (-∞, 0]` and equal to the real
/// log-gamma on the positive axis: the shift `ln Γ(z) = ln Γ(z+n) - Σ ln(z+k)`
/// accumulates principal logarithms, which is exactly that branch.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(format!(
            "log_gamma of non-finite argument {z}"
        )));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(z));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < 0.0 || w.norm() < STIRLING_RADIUS {
        shift += w.ln();
        w += 1.0;
    }
    Ok(stirling(w) - shift)
}

/// Real `ln Γ(x)` for `x > 0`.
pub fn ln_gamma_real(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    log_gamma(Complex64::new(x, 0.0))
        .map(|v| v.re)
        .unwrap_or(f64::INFINITY)
}

/// `ln n!` for non-negative `n`; exact table below 171, log-gamma above.
pub fn ln_factorial(n: u64) -> f64 {
    static TABLE: std::sync::OnceLock<Vec<f64>> = std::sync::OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(171);
        let mut acc = 0.0f64;
        t.push(0.0);
        for k in 1..171u64 {
            acc += (k as f64).ln();
            t.push(acc);
        }
        t
    });
    match table.get(n as usize) {
        Some(v) => *v,
        None => ln_gamma_real(n as f64 + 1.0),
    }
}

/// Rising factorial `(q)_n = q (q+1) ... (q+n-1)` as a log-space product.
pub fn pochhammer(q: Complex64, n: u64) -> LogComplexValue {
    let mut log = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let f = q + k as f64;
        if f.re == 0.0 && f.im == 0.0 {
            return LogComplexValue::zero();
        }
        log += f.ln();
    }
    LogComplexValue::from_log(log)
}

/// `1/Γ(z)` in log space; exact zero at the poles.
pub(crate) fn log_recip_gamma(z: Complex64) -> Result<LogComplexValue> {
    match log_gamma(z) {
        Ok(v) => Ok(LogComplexValue::from_log(-v)),
        Err(Error::Pole(_)) => Ok(LogComplexValue::zero()),
        Err(e) => Err(e),
    }
}

/// `ln Γ(z)` as a log-space value of `Γ(z)`.
pub(crate) fn gamma_log_value(z: Complex64) -> Result<LogComplexValue> {
    log_gamma(z).map(LogComplexValue::from_log)
}
