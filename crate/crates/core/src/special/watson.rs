//! Leading term of Watson's large-parameter asymptotic for
//! `₂F₁(j+1+iτj/2, m+j+1; 2j+2; 1-ε⁴)`.
//!
//! The asymptotic assumes the three parameters grow like `λ = j` with all
//! other offsets fixed. With `iτj/2` growing as well, the leading term is only
//! reliable for `τ = 0` and `|m| ≪ j`; callers should compare against the
//! exact value where it is affordable.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gamma::log_gamma;
use super::LogComplexValue;
use crate::error::{Error, Result};

/// Phase attached to the negative reals `ε⁴ - 1` and `ε² - 1` when `ε < 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `(1 - ε⁴) e^{-iπ}`
    #[default]
    MinusIPi,
    /// `(1 - ε⁴) e^{+iπ}`
    PlusIPi,
}

impl Branch {
    fn phase(self) -> f64 {
        match self {
            Branch::MinusIPi => -PI,
            Branch::PlusIPi => PI,
        }
    }
}

/// `ln(x)` for real `x ≠ 0`, negative values taking the branch phase.
fn branch_ln(x: f64, branch: Branch) -> Complex64 {
    if x > 0.0 {
        Complex64::new(x.ln(), 0.0)
    } else {
        Complex64::new((-x).ln(), branch.phase())
    }
}

/// Watson asymptotic with the default `e^{-iπ}` branch.
pub fn watson_asymptotic_2f1(
    j: u32,
    m: i32,
    tau: Complex64,
    epsilon: f64,
) -> Result<LogComplexValue> {
    watson_asymptotic_2f1_with_branch(j, m, tau, epsilon, Branch::default())
}

pub fn watson_asymptotic_2f1_with_branch(
    j: u32,
    m: i32,
    tau: Complex64,
    epsilon: f64,
    branch: Branch,
) -> Result<LogComplexValue> {
    if j == 0 {
        return Err(Error::domain("Watson asymptotic needs j >= 1"));
    }
    if m.unsigned_abs() > j {
        return Err(Error::index(format!("|m| = {} exceeds j = {j}", m.abs())));
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::domain(format!(
            "epsilon = {epsilon} must be positive"
        )));
    }
    if epsilon == 1.0 {
        return Err(Error::domain(
            "Watson asymptotic is degenerate at epsilon = 1 (z = 0)",
        ));
    }
    let jf = j as f64;
    let mf = m as f64;
    let i = Complex64::i();
    let half_itj = i * tau * jf / 2.0;

    let e2 = epsilon * epsilon;
    let l4 = branch_ln(e2 * e2 - 1.0, branch);
    let l2 = branch_ln(e2 - 1.0, branch);
    let lp = (e2 + 1.0).ln();
    let ln_eps = epsilon.ln();

    let gammas = log_gamma(Complex64::new(2.0 + 2.0 * jf, 0.0))?
        - log_gamma(Complex64::new(mf + 1.0 + jf, 0.0))?
        - log_gamma(Complex64::new(1.0 - mf + jf, 0.0))?
        + 0.5 * PI.ln()
        - 0.5 * jf.ln();

    let log = -(1.0 + jf + half_itj) * l4
        + (1.0 + 2.0 * half_itj) * LN_2
        + gammas
        + (1.0 + half_itj + jf) * (l2 - lp)
        + (-0.5 - half_itj + mf) * (LN_2 - lp)
        + (-mf - half_itj - 0.5) * (LN_2 + 2.0 * ln_eps - lp);
    let v = LogComplexValue::from_log(log);
    if !v.is_finite() {
        return Err(Error::NonConvergence {
            terms: 0,
            context: format!("Watson asymptotic overflowed at j = {j}, m = {m}"),
        });
    }
    Ok(v)
}
