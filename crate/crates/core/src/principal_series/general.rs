use num_complex::Complex64;

use super::{CoefficientIndex, PrincipalSeriesLabel};
use crate::error::{Error, Result};
use crate::special::{hyp2f1, ln_factorial, Hyp2F1Params, LogComplexValue};

/// Pairs `(d, d′)` for which every factorial argument of the general
/// formula is non-negative.
pub fn admissible_pairs(k: i32, idx: &CoefficientIndex) -> Vec<(i64, i64)> {
    let (j, jp) = (idx.j as i64, idx.j_prime as i64);
    let (m, k) = (idx.m as i64, k as i64);
    let mut out = Vec::new();
    for d in 0..=j.max(jp) + 1 {
        for dp in 0..=j.max(jp) + 1 {
            let args = [
                d + dp + m + k,
                j + jp - d - dp - m - k,
                j - m - d,
                jp - m - dp,
                k + m + d,
                k + m + dp,
                j - k - d,
                jp - k - dp,
            ];
            if args.iter().all(|&a| a >= 0) {
                out.push((d, dp));
            }
        }
    }
    out
}

fn lf(n: i64) -> f64 {
    ln_factorial(n as u64)
}

/// General matrix coefficient `D^{(k,ρ)}_{jm, j′n}` at boost parameter `ε`,
/// as a double sum of hypergeometric functions. Meant for small `j, j′`.
pub fn general_coefficient(
    label: PrincipalSeriesLabel,
    idx: CoefficientIndex,
    epsilon: f64,
) -> Result<LogComplexValue> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::domain(format!(
            "epsilon = {epsilon} must be positive"
        )));
    }
    if !(label.rho.re.is_finite() && label.rho.im.is_finite()) {
        return Err(Error::domain("rho is not finite"));
    }
    let jmin = idx.j.min(idx.j_prime);
    if label.k.unsigned_abs() > jmin {
        return Err(Error::index(format!(
            "|k| = {} exceeds min(j, j') = {jmin}",
            label.k.abs()
        )));
    }
    if idx.m.unsigned_abs() > jmin || idx.n.unsigned_abs() > jmin {
        return Err(Error::index(format!(
            "|m| = {}, |n| = {} must not exceed min(j, j') = {jmin}",
            idx.m.abs(),
            idx.n.abs()
        )));
    }
    if idx.m != idx.n {
        return Ok(LogComplexValue::zero());
    }

    let (j, jp) = (idx.j as i64, idx.j_prime as i64);
    let (m, k) = (idx.m as i64, label.k as i64);
    let half_i_rho = Complex64::i() * label.rho / 2.0;
    let ln_eps = epsilon.ln();
    let z = 1.0 - epsilon.powi(4);

    let ln_prefactor = 0.5
        * (((2 * j + 1) as f64).ln()
            + ((2 * jp + 1) as f64).ln()
            + lf(j + m)
            + lf(jp + m)
            + lf(j - m)
            + lf(jp - m)
            + lf(j + k)
            + lf(jp + k)
            + lf(j - k)
            + lf(jp - k))
        - lf(j + jp + 1);

    let mut total = LogComplexValue::zero();
    for (d, dp) in admissible_pairs(label.k, &idx) {
        let ln_ratio = lf(d + dp + m + k) + lf(j + jp - d - dp - m - k)
            - lf(d)
            - lf(dp)
            - lf(j - m - d)
            - lf(jp - m - dp)
            - lf(k + m + d)
            - lf(k + m + dp)
            - lf(j - k - d)
            - lf(jp - k - dp);
        let sign = if (d + dp) % 2 == 0 {
            0.0
        } else {
            std::f64::consts::PI
        };
        let power = 2.0 * (Complex64::new((2 * dp + m + k + 1) as f64, 0.0) + half_i_rho) * ln_eps;
        let f = hyp2f1(&Hyp2F1Params::new(
            Complex64::new((jp + 1) as f64, 0.0) + half_i_rho,
            Complex64::new((d + dp + m + k + 1) as f64, 0.0),
            Complex64::new((j + jp + 2) as f64, 0.0),
            z,
        ))?;
        let term = LogComplexValue::new(ln_ratio, sign) * LogComplexValue::from_log(power) * f;
        total = total + term;
    }
    Ok(total * LogComplexValue::new(ln_prefactor, 0.0))
}
