use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::EvaluationPath;
use crate::special::{
    hyp2f1_with, watson_asymptotic_2f1_with_branch, Branch, Hyp2F1Params, Hyp2F1Route,
    LogComplexValue, SeriesControl,
};

/// Largest `j` evaluated through the exact `₂F₁` by default.
pub const DEFAULT_EXACT_MAX_J: u32 = 512;

/// How diagonal coefficients are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalPolicy {
    /// Above this `j` the Watson asymptotic replaces the exact `₂F₁`.
    pub exact_max_j: u32,
    pub branch: Branch,
    pub series: SeriesControl,
}

impl Default for EvalPolicy {
    fn default() -> Self {
        Self {
            exact_max_j: DEFAULT_EXACT_MAX_J,
            branch: Branch::default(),
            series: SeriesControl::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientValue {
    pub value: LogComplexValue,
    pub path: EvaluationPath,
    /// Relative error estimate; `None` on the asymptotic path.
    pub error_estimate: Option<f64>,
    pub route: Option<Hyp2F1Route>,
}

/// `D^{(j,τj)}_{jm,jm}(ε) = ε^{2(m+j+1+iτj/2)} ₂F₁(j+1+iτj/2, m+j+1; 2j+2; 1−ε⁴)`
/// with the default policy.
pub fn diagonal_coefficient(
    j: u32,
    m: i32,
    tau: Complex64,
    epsilon: f64,
) -> Result<LogComplexValue> {
    diagonal_coefficient_with(j, m, tau, epsilon, &EvalPolicy::default()).map(|c| c.value)
}

pub fn diagonal_coefficient_with(
    j: u32,
    m: i32,
    tau: Complex64,
    epsilon: f64,
    policy: &EvalPolicy,
) -> Result<CoefficientValue> {
    if m.unsigned_abs() > j {
        return Err(Error::index(format!("|m| = {} exceeds j = {j}", m.abs())));
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::domain(format!(
            "epsilon = {epsilon} must be positive"
        )));
    }
    if !(tau.re.is_finite() && tau.im.is_finite()) {
        return Err(Error::domain("tau is not finite"));
    }
    let jf = j as f64;
    let half_itj = Complex64::i() * tau * jf / 2.0;
    let exponent = 2.0 * (Complex64::new(m as f64 + jf + 1.0, 0.0) + half_itj);
    let power = LogComplexValue::from_log(exponent * epsilon.ln());
    // rounding of the exponent times ln ε
    let power_error = 4.0 * f64::EPSILON * (exponent * epsilon.ln()).norm();

    if epsilon == 1.0 {
        return Ok(CoefficientValue {
            value: LogComplexValue::one(),
            path: EvaluationPath::Exact,
            error_estimate: Some(0.0),
            route: None,
        });
    }

    if j > policy.exact_max_j && j > 0 {
        let f = watson_asymptotic_2f1_with_branch(j, m, tau, epsilon, policy.branch)?;
        return Ok(CoefficientValue {
            value: power * f,
            path: EvaluationPath::Asymptotic,
            error_estimate: None,
            route: None,
        });
    }

    let params = Hyp2F1Params::new(
        Complex64::new(jf + 1.0, 0.0) + half_itj,
        Complex64::new(m as f64 + jf + 1.0, 0.0),
        Complex64::new(2.0 * jf + 2.0, 0.0),
        1.0 - epsilon.powi(4),
    );
    let f = hyp2f1_with(&params, &policy.series)?;
    Ok(CoefficientValue {
        value: power * f.value,
        path: EvaluationPath::Exact,
        error_estimate: Some(f.estimated_relative_error() + power_error),
        route: Some(f.route),
    })
}

/// `(j, D_{j,m_j})` for each requested pair, evaluated in parallel and
/// returned in input order.
pub fn diagonal_coefficients(
    indices: &[(u32, i32)],
    tau: Complex64,
    epsilon: f64,
    policy: &EvalPolicy,
) -> Result<Vec<CoefficientValue>> {
    indices
        .par_iter()
        .map(|&(j, m)| diagonal_coefficient_with(j, m, tau, epsilon, policy))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_epsilon_gives_one() {
        for &(j, m) in &[(0, 0), (3, -2), (40, 40)] {
            let v = diagonal_coefficient(j, m, Complex64::new(0.4, 0.3), 1.0).unwrap();
            assert_eq!(v, LogComplexValue::one());
        }
    }

    #[test]
    fn path_switch() {
        let policy = EvalPolicy {
            exact_max_j: 64,
            ..Default::default()
        };
        let t = Complex64::new(0.0, 0.0);
        let a = diagonal_coefficient_with(64, 0, t, 2.0, &policy).unwrap();
        let b = diagonal_coefficient_with(65, 0, t, 2.0, &policy).unwrap();
        assert_eq!(a.path, EvaluationPath::Exact);
        assert_eq!(b.path, EvaluationPath::Asymptotic);
        assert!(b.error_estimate.is_none());
    }

    #[test]
    fn errors() {
        let t = Complex64::new(0.0, 0.0);
        assert!(matches!(
            diagonal_coefficient(1, 5, t, 2.0),
            Err(Error::Index(_))
        ));
        assert!(matches!(
            diagonal_coefficient(1, 0, t, 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn real_tau_inversion_is_conjugation() {
        let t = Complex64::new(0.5, 0.0);
        for &(j, m) in &[(4, 1), (30, -7)] {
            let a = diagonal_coefficient(j, m, t, 2.0).unwrap();
            let b = diagonal_coefficient(j, m, t, 0.5).unwrap();
            assert!(((a / b.conj()).to_complex() - 1.0).norm() < 1e-11);
        }
    }
}
