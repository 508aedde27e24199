//! Partial sums of the diagonal and triple series, the norm identity, the
//! divergent norm series and synthesis from coefficient tables.

mod norm;
mod table;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::principal_series::{
    diagonal_coefficient_with, diagonal_coefficients, diagonal_predicted_limit, EvalPolicy,
};
use crate::report::{LimitCheck, ReportParams, SeriesKind, SeriesReport, TermInput};
use crate::special::LogComplexValue;

pub use norm::{
    divergence_probe, divergence_probe_with, norm_identity, DivergenceCheckpoint,
    DivergenceIncrement, DivergenceReport, NormIdentity, LOG_MODEL_TOLERANCE,
};
pub use table::{synthesize, synthesize_with, CoefficientTable, DecayCheck, TableEntry};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionConfig {
    pub tau: Complex64,
    pub m: i32,
    pub epsilon: f64,
    pub j_max: u32,
    pub cauchy_tolerance: f64,
    pub cauchy_window: u32,
    #[serde(default)]
    pub policy: EvalPolicy,
}

impl ExpansionConfig {
    pub fn new(tau: Complex64, m: i32, epsilon: f64, j_max: u32) -> Self {
        Self {
            tau,
            m,
            epsilon,
            j_max,
            cauchy_tolerance: 1e-6,
            cauchy_window: 10,
            policy: EvalPolicy::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::domain(format!(
                "epsilon = {} must be positive",
                self.epsilon
            )));
        }
        if self.cauchy_tolerance.is_nan() || self.cauchy_tolerance <= 0.0 {
            return Err(Error::domain("cauchy_tolerance must be positive"));
        }
        if self.cauchy_window == 0 {
            return Err(Error::domain("cauchy_window must be positive"));
        }
        if self.j_max == 0 {
            return Err(Error::domain("j_max must be at least 1"));
        }
        Ok(())
    }

    fn params(&self, m: Option<i32>, j_min: u32) -> ReportParams {
        ReportParams {
            tau: Some(self.tau),
            epsilon: Some(self.epsilon),
            m,
            j_min,
            j_max: self.j_max,
            cauchy_tolerance: self.cauchy_tolerance,
            cauchy_window: self.cauchy_window,
            ..Default::default()
        }
    }
}

fn require_boost(epsilon: f64) -> Result<()> {
    if epsilon == 1.0 {
        return Err(Error::domain("series diagnostics need epsilon != 1"));
    }
    Ok(())
}

pub(crate) fn require_regular_tau(tau: Complex64) -> Result<Complex64> {
    let q = Complex64::new(1.0, 0.0) + tau * tau;
    if q.norm() < 1e-12 {
        return Err(Error::SingularTau(tau));
    }
    Ok(q)
}

fn zeroth_level_note(cfg: &ExpansionConfig) -> Option<String> {
    diagonal_coefficient_with(0, 0, cfg.tau, cfg.epsilon, &cfg.policy)
        .ok()
        .map(|d| format!("j = 0 term excluded from the sum; its value is {}", d.value))
}

/// `Σ_j D^{(j,τj)}_{jm,jm}(ε)` for `j = max(|m|, 1) ..= j_max`.
pub fn partial_sum_diagonal(cfg: &ExpansionConfig) -> Result<SeriesReport> {
    cfg.validate()?;
    require_boost(cfg.epsilon)?;
    let j_min = cfg.m.unsigned_abs().max(1);
    let indices: Vec<(u32, i32)> = (j_min..=cfg.j_max.max(j_min)).map(|j| (j, cfg.m)).collect();
    let values = diagonal_coefficients(&indices, cfg.tau, cfg.epsilon, &cfg.policy)?;
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
    let check = if cfg.tau.im == 0.0 {
        LimitCheck::Asserted
    } else {
        LimitCheck::Informational
    };
    let mut report = SeriesReport::assemble(
        SeriesKind::DiagonalSum,
        cfg.params(Some(cfg.m), j_min),
        &inputs,
    )
    .with_prediction(diagonal_predicted_limit(cfg.epsilon), check);
    if cfg.m == 0 {
        report.warnings.extend(zeroth_level_note(cfg));
    }
    Ok(report)
}

/// Block sums `Σ_{|m|≤j} D^{(j,τj)}_{jm,jm}(ε)` for `j = 1 ..= j_max`,
/// accumulated over `j`.
pub fn partial_sum_triple(tau: Complex64, epsilon: f64, j_max: u32) -> Result<SeriesReport> {
    partial_sum_triple_with(&ExpansionConfig::new(tau, 0, epsilon, j_max))
}

/// As [`partial_sum_triple`]; `cfg.m` is ignored.
pub fn partial_sum_triple_with(cfg: &ExpansionConfig) -> Result<SeriesReport> {
    cfg.validate()?;
    require_boost(cfg.epsilon)?;
    let inputs = triple_blocks(cfg)?;
    let mut report = SeriesReport::assemble(SeriesKind::TripleSum, cfg.params(None, 1), &inputs);
    report.warnings.extend(zeroth_level_note(cfg));
    Ok(report)
}

/// One term per `j`: the sum over `|m| ≤ j`, evaluated in log space.
pub(crate) fn triple_blocks(cfg: &ExpansionConfig) -> Result<Vec<TermInput>> {
    (1..=cfg.j_max)
        .into_par_iter()
        .map(|j| triple_block(j, cfg.tau, cfg.epsilon, &cfg.policy))
        .collect()
}

fn triple_block(j: u32, tau: Complex64, epsilon: f64, policy: &EvalPolicy) -> Result<TermInput> {
    let mut total = LogComplexValue::zero();
    let mut worst: Option<f64> = Some(0.0);
    let mut path = Default::default();
    let mut max_mag = f64::NEG_INFINITY;
    for m in -(j as i32)..=j as i32 {
        let c = diagonal_coefficient_with(j, m, tau, epsilon, policy)?;
        total = total + c.value;
        max_mag = max_mag.max(c.value.log_mag());
        worst = match (worst, c.error_estimate) {
            (Some(w), Some(e)) => Some(w.max(e)),
            _ => None,
        };
        path = c.path;
    }
    // cancellation inside the block amplifies the member errors
    let amplification = if total.is_zero() {
        f64::INFINITY
    } else {
        (max_mag - total.log_mag()).exp().max(1.0) * (2 * j + 1) as f64
    };
    Ok(TermInput {
        j,
        value: total,
        path,
        error_estimate: worst.map(|w| w * amplification),
    })
}
