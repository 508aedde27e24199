use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::diagonal::{diagonal_coefficients, EvalPolicy};
use crate::error::{Error, Result};
use crate::report::{LimitCheck, ReportParams, SeriesKind, SeriesReport, TermInput, Track};
use crate::special::LogComplexValue;

/// Evaluation and verdict settings shared by the ratio scans.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioConfig {
    pub policy: EvalPolicy,
    pub cauchy_tolerance: f64,
    pub cauchy_window: u32,
}

impl Default for RatioConfig {
    fn default() -> Self {
        Self {
            policy: EvalPolicy::default(),
            cauchy_tolerance: 1e-6,
            cauchy_window: 10,
        }
    }
}

/// `4ε²/(ε²+1)²`
pub fn diagonal_predicted_limit(epsilon: f64) -> f64 {
    // evaluated at max(ε, 1/ε) so that ε and 1/ε give bit-identical values
    let e = if epsilon < 1.0 {
        1.0 / epsilon
    } else {
        epsilon
    };
    let e2 = e * e;
    4.0 * e2 / ((e2 + 1.0) * (e2 + 1.0))
}

/// `ε²/(ε²+1)²` on the `m = j` track, `4ε²/(ε²+1)²` on the `m = 0` track.
pub fn boundary_predicted_limit(track: Track, epsilon: f64) -> f64 {
    match track {
        Track::MEqualsJ => diagonal_predicted_limit(epsilon) / 4.0,
        Track::MEquals0 => diagonal_predicted_limit(epsilon),
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::domain(format!(
            "epsilon = {epsilon} must be positive"
        )));
    }
    if epsilon == 1.0 {
        return Err(Error::domain("ratio diagnostics need epsilon != 1"));
    }
    Ok(())
}

fn limit_check(tau: Complex64) -> LimitCheck {
    if tau.im == 0.0 {
        LimitCheck::Asserted
    } else {
        LimitCheck::Informational
    }
}

/// `|D_{j+1}/D_j|` along fixed `m` for `j = max(|m|, 1) ..= j_max`.
pub fn ratio_test(m: i32, tau: Complex64, epsilon: f64, j_max: u32) -> Result<SeriesReport> {
    ratio_test_with(m, tau, epsilon, j_max, &RatioConfig::default())
}

pub fn ratio_test_with(
    m: i32,
    tau: Complex64,
    epsilon: f64,
    j_max: u32,
    cfg: &RatioConfig,
) -> Result<SeriesReport> {
    check_epsilon(epsilon)?;
    if j_max < m.unsigned_abs() + 8 {
        return Err(Error::domain(format!(
            "j_max = {j_max} must be at least |m| + 8"
        )));
    }
    let j_min = m.unsigned_abs().max(1);
    let indices: Vec<(u32, i32)> = (j_min..=j_max).map(|j| (j, m)).collect();
    let values = diagonal_coefficients(&indices, tau, epsilon, &cfg.policy)?;
    let inputs: Vec<TermInput> = indices
        .iter()
        .zip(&values)
        .map(|(&(j, _), c)| TermInput {
            j,
            value: c.value,
            path: c.path,
            error_estimate: c.error_estimate,
        })
        .collect();
    let params = ReportParams {
        tau: Some(tau),
        epsilon: Some(epsilon),
        m: Some(m),
        j_min,
        j_max,
        cauchy_tolerance: cfg.cauchy_tolerance,
        cauchy_window: cfg.cauchy_window,
        ..Default::default()
    };
    Ok(
        SeriesReport::assemble(SeriesKind::RatioTest, params, &inputs)
            .with_prediction(diagonal_predicted_limit(epsilon), limit_check(tau)),
    )
}

/// Term ratios of the two bounding sums:
/// `(j+1)·|D_{j,j}|` on the `m = j` track and `j·|D_{j,0}|` on the `m = 0`
/// track, for `j = 1 ..= j_max`.
pub fn boundary_ratio_test(
    track: Track,
    tau: Complex64,
    epsilon: f64,
    j_max: u32,
) -> Result<SeriesReport> {
    boundary_ratio_test_with(track, tau, epsilon, j_max, &RatioConfig::default())
}

pub fn boundary_ratio_test_with(
    track: Track,
    tau: Complex64,
    epsilon: f64,
    j_max: u32,
    cfg: &RatioConfig,
) -> Result<SeriesReport> {
    check_epsilon(epsilon)?;
    if j_max < 2 {
        return Err(Error::domain("j_max must be at least 2"));
    }
    let indices: Vec<(u32, i32)> = (1..=j_max)
        .map(|j| match track {
            Track::MEqualsJ => (j, j as i32),
            Track::MEquals0 => (j, 0),
        })
        .collect();
    let values = diagonal_coefficients(&indices, tau, epsilon, &cfg.policy)?;
    let inputs: Vec<TermInput> = indices
        .iter()
        .zip(&values)
        .map(|(&(j, _), c)| {
            let weight = match track {
                Track::MEqualsJ => j as f64 + 1.0,
                Track::MEquals0 => j as f64,
            };
            TermInput {
                j,
                value: LogComplexValue::new(weight.ln() + c.value.log_mag(), 0.0),
                path: c.path,
                error_estimate: c.error_estimate,
            }
        })
        .collect();
    let params = ReportParams {
        tau: Some(tau),
        epsilon: Some(epsilon),
        track: Some(track),
        j_min: 1,
        j_max,
        cauchy_tolerance: cfg.cauchy_tolerance,
        cauchy_window: cfg.cauchy_window,
        ..Default::default()
    };
    Ok(
        SeriesReport::assemble(SeriesKind::BoundaryRatio, params, &inputs)
            .with_prediction(boundary_predicted_limit(track, epsilon), limit_check(tau)),
    )
}
