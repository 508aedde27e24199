use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_group::SU2Element;
use crate::special::ln_factorial;

/// Spin `twice_j / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpinLabel {
    pub twice_j: u32,
}

impl SpinLabel {
    pub fn new(twice_j: u32) -> Self {
        Self { twice_j }
    }

    /// `|twice_m| ≤ twice_j` with matching parity.
    pub fn admits(&self, twice_m: i32) -> bool {
        twice_m.unsigned_abs() <= self.twice_j && (self.twice_j as i32 - twice_m) % 2 == 0
    }

    fn check(&self, twice_m: i32) -> Result<()> {
        if self.admits(twice_m) {
            Ok(())
        } else {
            Err(Error::index(format!(
                "twice_m = {twice_m} is not a projection of spin {}/2",
                self.twice_j
            )))
        }
    }

    /// All admissible `twice_m`, ascending.
    pub fn projections(&self) -> impl Iterator<Item = i32> {
        let tj = self.twice_j as i32;
        (0..=tj).map(move |k| -tj + 2 * k)
    }
}

/// `(j + twice_m/2)` as an integer count.
fn shift(twice_j: u32, twice_m: i32) -> u64 {
    ((twice_j as i32 + twice_m) / 2) as u64
}

/// Jacobi polynomial `P_n^{(a,b)}(x)` by the three-term recurrence.
fn jacobi(n: u64, a: f64, b: f64, x: f64) -> f64 {
    let mut p0 = 1.0;
    if n == 0 {
        return p0;
    }
    let mut p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + a + b;
        let c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let p2 = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    p1
}

fn powi_u(x: f64, n: u64) -> f64 {
    if n == 0 {
        1.0
    } else {
        x.powi(n as i32)
    }
}

/// Wigner small-d `d^{j}_{m n}(β)` with `j = twice_j/2`, `m = twice_m/2`,
/// `n = twice_n/2`, evaluated through Jacobi polynomials.
pub fn wigner_small_d(spin: SpinLabel, twice_m: i32, twice_n: i32, beta: f64) -> Result<f64> {
    spin.check(twice_m)?;
    spin.check(twice_n)?;
    let tj = spin.twice_j;
    let (jpm, jmm) = (shift(tj, twice_m), shift(tj, -twice_m));
    let (jpn, jmn) = (shift(tj, twice_n), shift(tj, -twice_n));
    let two_j = tj as u64;
    let diff = (twice_m - twice_n) / 2;
    // k = min(j+n, j-n, j+m, j-m), with the matching (a, λ)
    let k = jpn.min(jmn).min(jpm).min(jmm);
    let (a, lambda) = if k == jpn {
        (diff as u64, diff)
    } else if k == jmn || k == jpm {
        ((-diff) as u64, 0)
    } else {
        (diff as u64, diff)
    };
    let b = two_j - 2 * k - a;
    let ln_binom = |n: u64, r: u64| ln_factorial(n) - ln_factorial(r) - ln_factorial(n - r);
    let norm = (0.5 * (ln_binom(two_j - k, k + a) - ln_binom(k + b, b))).exp();
    let sign = if lambda.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let (s, c) = (beta / 2.0).sin_cos();
    Ok(sign * norm * powi_u(s, a) * powi_u(c, b) * jacobi(k, a as f64, b as f64, beta.cos()))
}

/// The explicit factorial sum for `d^{j}_{m n}(β)`; log-space terms above
/// `twice_j = 60`. Suffers cancellation for large spins, kept as a reference.
pub fn wigner_small_d_factorial_sum(
    spin: SpinLabel,
    twice_m: i32,
    twice_n: i32,
    beta: f64,
) -> Result<f64> {
    spin.check(twice_m)?;
    spin.check(twice_n)?;
    let tj = spin.twice_j;
    let (jpm, jmm) = (shift(tj, twice_m) as i64, shift(tj, -twice_m) as i64);
    let (jpn, jmn) = (shift(tj, twice_n) as i64, shift(tj, -twice_n) as i64);
    let mn = (twice_m - twice_n) as i64 / 2;
    let (sh, ch) = (beta / 2.0).sin_cos();
    let half_log_norm = 0.5
        * (ln_factorial(jpm as u64)
            + ln_factorial(jmm as u64)
            + ln_factorial(jpn as u64)
            + ln_factorial(jmn as u64));
    let s_min = 0.max(-mn);
    let s_max = jpn.min(jmm);
    let log_space = tj > 60;
    let mut sum = 0.0;
    for s in s_min..=s_max {
        // exponents of cos(β/2) and sin(β/2)
        let e_cos = (tj as i64 - mn - 2 * s) as u64;
        let e_sin = (mn + 2 * s) as u64;
        let sign = if (mn + s).rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        };
        let den = [jpn - s, s, mn + s, jmm - s];
        if log_space {
            if (e_cos > 0 && ch == 0.0) || (e_sin > 0 && sh == 0.0) {
                continue;
            }
            let mut l = half_log_norm - den.iter().map(|&x| ln_factorial(x as u64)).sum::<f64>();
            if e_cos > 0 {
                l += e_cos as f64 * ch.abs().ln();
            }
            if e_sin > 0 {
                l += e_sin as f64 * sh.abs().ln();
            }
            let sgn =
                sign * if ch < 0.0 && e_cos % 2 == 1 {
                    -1.0
                } else {
                    1.0
                } * if sh < 0.0 && e_sin % 2 == 1 {
                    -1.0
                } else {
                    1.0
                };
            sum += sgn * l.exp();
        } else {
            let f = |n: i64| ln_factorial(n as u64).exp();
            let num = (f(jpm) * f(jmm) * f(jpn) * f(jmn)).sqrt();
            let d: f64 = den.iter().map(|&x| f(x)).product();
            sum += sign * num / d * powi_u(ch, e_cos) * powi_u(sh, e_sin);
        }
    }
    Ok(sum)
}

/// `D^{j}_{m n}(u) = e^{-i m α} d^{j}_{m n}(β) e^{-i n γ}`.
pub fn wigner_d(spin: SpinLabel, twice_m: i32, twice_n: i32, u: &SU2Element) -> Result<Complex64> {
    let e = u.to_euler();
    let d = wigner_small_d(spin, twice_m, twice_n, e.beta)?;
    let phase = -(twice_m as f64 * e.alpha + twice_n as f64 * e.gamma) / 2.0;
    Ok(Complex64::from_polar(d, phase))
}
