//! Matrix coefficients of the SL(2,C) principal series on the diagonal
//! `k = j`, `ρ = τj`, and the ratio diagnostics built on them.

mod diagonal;
mod general;
mod ratio;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use diagonal::{
    diagonal_coefficient, diagonal_coefficient_with, diagonal_coefficients, CoefficientValue,
    EvalPolicy, DEFAULT_EXACT_MAX_J,
};
pub use general::{admissible_pairs, general_coefficient};
pub use ratio::{
    boundary_predicted_limit, boundary_ratio_test, boundary_ratio_test_with,
    diagonal_predicted_limit, ratio_test, ratio_test_with, RatioConfig,
};

/// Representation label `(k, ρ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrincipalSeriesLabel {
    pub k: i32,
    pub rho: Complex64,
}

impl PrincipalSeriesLabel {
    pub fn new(k: i32, rho: Complex64) -> Self {
        Self { k, rho }
    }

    /// `k = j`, `ρ = τ·j`.
    pub fn simple(j: u32, tau: Complex64) -> Self {
        Self {
            k: j as i32,
            rho: tau * j as f64,
        }
    }
}

/// Row `(j, m)` and column `(j′, n)` of a coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientIndex {
    pub j: u32,
    pub j_prime: u32,
    pub m: i32,
    pub n: i32,
}

impl CoefficientIndex {
    pub fn new(j: u32, j_prime: u32, m: i32, n: i32) -> Self {
        Self { j, j_prime, m, n }
    }

    pub fn diagonal(j: u32, m: i32) -> Self {
        Self::new(j, j, m, m)
    }
}
