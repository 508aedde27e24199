use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::require_regular_tau;
use crate::error::{Error, Result};
use crate::report::Verdict;

/// Relative agreement with `2 ln(J₂/J₁)/(1+τ²)` required for a divergence
/// verdict.
pub const LOG_MODEL_TOLERANCE: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormIdentity {
    pub tau: Complex64,
    pub j_max: u32,
    /// `Σ_{j=1}^{j_max} 1/(j²(1+τ²))`
    pub computed: Complex64,
    /// `π²/(6(1+τ²))`
    pub target: Complex64,
    /// `|computed − target|`
    pub deviation: f64,
    /// `1/(j_max |1+τ²|)`, an upper bound of the omitted tail.
    pub tail_bound: f64,
    pub within_tail_bound: bool,
}

/// Truncated `Σ_{j≥1} 1/(j² + τ²j²)` against its closed form.
pub fn norm_identity(tau: Complex64, j_max: u32) -> Result<NormIdentity> {
    let q = require_regular_tau(tau)?;
    if j_max == 0 {
        return Err(Error::domain("j_max must be at least 1"));
    }
    // smallest terms first
    let zeta: f64 = (1..=j_max).rev().map(|j| 1.0 / (j as f64 * j as f64)).sum();
    let computed = zeta / q;
    let target = PI * PI / 6.0 / q;
    let deviation = (computed - target).norm();
    let tail_bound = 1.0 / (j_max as f64 * q.norm());
    Ok(NormIdentity {
        tau,
        j_max,
        computed,
        target,
        deviation,
        tail_bound,
        within_tail_bound: deviation <= tail_bound + 1e-12,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivergenceCheckpoint {
    pub j: u64,
    pub partial_sum: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivergenceIncrement {
    pub from: u64,
    pub to: u64,
    pub increment: Complex64,
    /// `2 ln(to/from)/(1+τ²)`
    pub model: Complex64,
    pub relative_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivergenceReport {
    pub tau: Complex64,
    pub checkpoints: Vec<DivergenceCheckpoint>,
    pub increments: Vec<DivergenceIncrement>,
    /// Real parts strictly increasing across checkpoints (real `τ` only).
    pub increasing: Option<bool>,
    pub cauchy_tolerance: f64,
    pub verdict: Verdict,
}

/// Partial sums of `Σ_{j≥1} (2j+1)/(j²(1+τ²))` at the checkpoints, compared
/// with logarithmic growth.
pub fn divergence_probe(tau: Complex64, checkpoints: &[u64]) -> Result<DivergenceReport> {
    divergence_probe_with(tau, checkpoints, 1e-6)
}

pub fn divergence_probe_with(
    tau: Complex64,
    checkpoints: &[u64],
    cauchy_tolerance: f64,
) -> Result<DivergenceReport> {
    let q = require_regular_tau(tau)?;
    if checkpoints.is_empty() || checkpoints[0] == 0 {
        return Err(Error::domain("checkpoints must be positive"));
    }
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("checkpoints must be strictly increasing"));
    }
    if cauchy_tolerance.is_nan() || cauchy_tolerance <= 0.0 {
        return Err(Error::domain("cauchy_tolerance must be positive"));
    }

    let mut sums = Vec::with_capacity(checkpoints.len());
    let mut acc = 0.0f64;
    let mut comp = 0.0f64;
    let mut j = 0u64;
    for &cp in checkpoints {
        while j < cp {
            j += 1;
            let jf = j as f64;
            // Kahan summation
            let y = (2.0 * jf + 1.0) / (jf * jf) - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        sums.push(DivergenceCheckpoint {
            j: cp,
            partial_sum: acc / q,
        });
    }

    let increments: Vec<DivergenceIncrement> = sums
        .windows(2)
        .map(|w| {
            let increment = w[1].partial_sum - w[0].partial_sum;
            let model = 2.0 * (w[1].j as f64 / w[0].j as f64).ln() / q;
            DivergenceIncrement {
                from: w[0].j,
                to: w[1].j,
                increment,
                model,
                relative_deviation: (increment - model).norm() / model.norm(),
            }
        })
        .collect();

    let increasing = (tau.im == 0.0).then(|| {
        sums.windows(2)
            .all(|w| w[1].partial_sum.re > w[0].partial_sum.re)
    });
    let verdict = match increments.last() {
        Some(inc)
            if inc.increment.norm() > 10.0 * cauchy_tolerance
                && inc.relative_deviation <= LOG_MODEL_TOLERANCE =>
        {
            Verdict::Diverged
        }
        _ => Verdict::Inconclusive,
    };
    Ok(DivergenceReport {
        tau,
        checkpoints: sums,
        increments,
        increasing,
        cauchy_tolerance,
        verdict,
    })
}
