//! The Y-map: an SU(2) Fourier row `d^{j/2}_{|p|/2, m/2}` combined with the
//! diagonal SL(2,C) coefficients into partial sums of the image function.
//!
//! Index convention: the SL(2,C) label `j` is the SU(2) `twice_j`, and the
//! SL(2,C) projection `m` is the SU(2) `twice_m`. Projections of the wrong
//! parity read as zero.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_group::{cartan_decompose, SL2CElement};
use crate::principal_series::{diagonal_coefficient_with, EvalPolicy};
use crate::report::{EvaluationPath, ReportParams, SeriesKind, SeriesReport, TermInput, Verdict};
use crate::special::LogComplexValue;
use crate::wigner::FourierTableSU2;

/// Where the image is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum YMapTarget {
    Epsilon(f64),
    Element(SL2CElement),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct YMapRequest {
    pub table: FourierTableSU2,
    pub tau: Complex64,
    pub target: YMapTarget,
    pub j_max: u32,
    #[serde(default = "default_tolerance")]
    pub cauchy_tolerance: f64,
    #[serde(default = "default_window")]
    pub cauchy_window: u32,
    #[serde(default)]
    pub policy: EvalPolicy,
}

fn default_tolerance() -> f64 {
    1e-6
}

fn default_window() -> u32 {
    10
}

impl YMapRequest {
    pub fn new(table: FourierTableSU2, tau: Complex64, target: YMapTarget, j_max: u32) -> Self {
        Self {
            table,
            tau,
            target,
            j_max,
            cauchy_tolerance: default_tolerance(),
            cauchy_window: default_window(),
            policy: EvalPolicy::default(),
        }
    }

    /// Boost parameter of the target, through the Cartan decomposition for
    /// group elements.
    pub fn epsilon(&self) -> Result<f64> {
        let eps = match &self.target {
            YMapTarget::Epsilon(e) => *e,
            YMapTarget::Element(g) => cartan_decompose(g)?.epsilon,
        };
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::domain(format!("epsilon = {eps} must be positive")));
        }
        Ok(eps)
    }

    fn j_min(&self) -> u32 {
        self.table.p.unsigned_abs()
    }

    fn validate(&self) -> Result<f64> {
        if self.j_max < self.j_min() {
            return Err(Error::domain(format!(
                "j_max = {} is below |p| = {}",
                self.j_max,
                self.j_min()
            )));
        }
        if self.cauchy_tolerance.is_nan() || self.cauchy_tolerance <= 0.0 || self.cauchy_window == 0
        {
            return Err(Error::domain("Cauchy settings must be positive"));
        }
        self.epsilon()
    }

    fn params(&self, epsilon: f64) -> ReportParams {
        ReportParams {
            tau: Some(self.tau),
            epsilon: Some(epsilon),
            p: Some(self.table.p),
            j_min: self.j_min(),
            j_max: self.j_max,
            cauchy_tolerance: self.cauchy_tolerance,
            cauchy_window: self.cauchy_window,
            ..Default::default()
        }
    }

    fn common_warnings(&self, epsilon: f64) -> Vec<String> {
        let mut w = Vec::new();
        if self.table.band_limit < self.j_max {
            w.push(format!(
                "table band {} is below j_max = {}; higher terms use the zero-extended table",
                self.table.band_limit, self.j_max
            ));
        }
        if epsilon == 1.0 {
            w.push("epsilon = 1: the verdict carries no information".to_string());
        }
        w
    }
}

fn ymap_term(req: &YMapRequest, j: u32, epsilon: f64) -> Result<TermInput> {
    let mut total = LogComplexValue::zero();
    let mut err = Some(0.0f64);
    let mut path = EvaluationPath::Exact;
    for m in -(j as i32)..=j as i32 {
        let d = req.table.get(j, m);
        if d == Complex64::new(0.0, 0.0) {
            continue;
        }
        let c = diagonal_coefficient_with(j, m, req.tau, epsilon, &req.policy)?;
        total = total + LogComplexValue::from_complex(d) * c.value;
        err = match (err, c.error_estimate) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        path = c.path;
    }
    Ok(TermInput {
        j,
        value: total,
        path,
        error_estimate: err,
    })
}

/// Partial sums over `j = |p| ..= j_max` of `Σ_m d^{j/2}_{|p|/2,m/2} D^{(j,τj)}_{jm,jm}(ε)`.
pub fn ymap_apply(req: &YMapRequest) -> Result<SeriesReport> {
    let epsilon = req.validate()?;
    let inputs: Vec<TermInput> = (req.j_min()..=req.j_max)
        .into_par_iter()
        .map(|j| ymap_term(req, j, epsilon))
        .collect::<Result<_>>()?;
    let mut report = SeriesReport::assemble(SeriesKind::YMap, req.params(epsilon), &inputs);
    report.warnings.extend(req.common_warnings(epsilon));
    if epsilon == 1.0 {
        report.verdict = Verdict::Inconclusive;
    }
    Ok(report)
}

/// `|S_J|` against the product of the two factor bounds at one `J`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MajorizationCheck {
    pub j: u32,
    pub partial_sum_abs: f64,
    pub fourier_sum: f64,
    pub coefficient_sum: f64,
    pub product: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct YMapConvergence {
    pub epsilon: f64,
    /// `Σ_j Σ_m |d^{j/2}_{|p|/2,m/2}|` up to `j_max`.
    pub fourier_sum_bound: f64,
    /// `Σ_j |Σ_{|m|≤j} D^{(j,τj)}_{jm,jm}(ε)|` up to `j_max`.
    pub coefficient_sum_bound: f64,
    pub product_bound: f64,
    pub fourier_report: SeriesReport,
    pub coefficient_report: SeriesReport,
    pub checks: Vec<MajorizationCheck>,
    pub majorization_holds: bool,
    pub verdict: Verdict,
}

/// Both factors of the majorization of the Y-map series and the termwise
/// check `|S_J| ≤ (Σ|d|)(Σ|ΣD|)` at every `J`.
pub fn ymap_convergence_report(req: &YMapRequest) -> Result<YMapConvergence> {
    let epsilon = req.validate()?;
    let js: Vec<u32> = (req.j_min()..=req.j_max).collect();

    let fourier_inputs: Vec<TermInput> = js
        .iter()
        .map(|&j| {
            let s: f64 = (-(j as i32)..=j as i32)
                .map(|m| req.table.get(j, m).norm())
                .sum();
            TermInput {
                j,
                value: LogComplexValue::from_real(s),
                path: EvaluationPath::Exact,
                error_estimate: Some(0.0),
            }
        })
        .collect();

    let coefficient_inputs: Vec<TermInput> = js
        .par_iter()
        .map(|&j| {
            let mut total = LogComplexValue::zero();
            let mut path = EvaluationPath::Exact;
            for m in -(j as i32)..=j as i32 {
                let c = diagonal_coefficient_with(j, m, req.tau, epsilon, &req.policy)?;
                total = total + c.value;
                path = c.path;
            }
            Ok(TermInput {
                j,
                value: LogComplexValue::new(total.log_mag(), 0.0),
                path,
                error_estimate: None,
            })
        })
        .collect::<Result<_>>()?;

    let mut params = req.params(epsilon);
    let mut fourier_report =
        SeriesReport::assemble(SeriesKind::FourierBound, params.clone(), &fourier_inputs);
    params.p = None;
    let mut coefficient_report =
        SeriesReport::assemble(SeriesKind::CoefficientBound, params, &coefficient_inputs);
    let image = ymap_apply(req)?;
    if epsilon == 1.0 {
        fourier_report.verdict = Verdict::Inconclusive;
        coefficient_report.verdict = Verdict::Inconclusive;
    }

    let checks: Vec<MajorizationCheck> = image
        .terms
        .iter()
        .zip(&fourier_report.terms)
        .zip(&coefficient_report.terms)
        .map(|((s, f), c)| {
            let partial_sum_abs = s.partial_sum.norm();
            let fourier_sum = f.partial_sum.re;
            let coefficient_sum = c.partial_sum.re;
            let product = fourier_sum * coefficient_sum;
            MajorizationCheck {
                j: s.j,
                partial_sum_abs,
                fourier_sum,
                coefficient_sum,
                product,
                holds: partial_sum_abs <= product * (1.0 + 1e-12),
            }
        })
        .collect();

    let fourier_sum_bound = fourier_report.final_sum().map_or(0.0, |s| s.re);
    let coefficient_sum_bound = coefficient_report.final_sum().map_or(0.0, |s| s.re);
    let verdict = match (fourier_report.verdict, coefficient_report.verdict) {
        (Verdict::Converged, Verdict::Converged) => Verdict::Converged,
        (Verdict::Diverged, _) | (_, Verdict::Diverged) => Verdict::Diverged,
        _ => Verdict::Inconclusive,
    };
    Ok(YMapConvergence {
        epsilon,
        fourier_sum_bound,
        coefficient_sum_bound,
        product_bound: fourier_sum_bound * coefficient_sum_bound,
        majorization_holds: checks.iter().all(|c| c.holds),
        fourier_report,
        coefficient_report,
        checks,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_table() -> FourierTableSU2 {
        let mut t = FourierTableSU2::new(0, 0);
        t.insert(0, 0, Complex64::new(1.0, 0.0));
        t
    }

    #[test]
    fn rejects_short_range() {
        let mut t = FourierTableSU2::new(4, 8);
        t.insert(4, 0, Complex64::new(1.0, 0.0));
        let req = YMapRequest::new(t, Complex64::new(0.0, 0.0), YMapTarget::Epsilon(2.0), 3);
        assert!(ymap_apply(&req).unwrap_err().is_domain());
    }

    #[test]
    fn element_target_uses_boost() {
        let g = SL2CElement::diag(Complex64::new(0.5, 0.0)).unwrap();
        let a = YMapRequest::new(
            unit_table(),
            Complex64::new(0.3, 0.0),
            YMapTarget::Element(g),
            4,
        );
        let b = YMapRequest::new(
            unit_table(),
            Complex64::new(0.3, 0.0),
            YMapTarget::Epsilon(2.0),
            4,
        );
        assert!((a.epsilon().unwrap() - 2.0).abs() < 1e-14);
        let (sa, sb) = (ymap_apply(&a).unwrap(), ymap_apply(&b).unwrap());
        assert!((sa.final_sum().unwrap() - sb.final_sum().unwrap()).norm() < 1e-13);
    }

    #[test]
    fn request_json_round_trip() {
        let req = YMapRequest::new(
            unit_table(),
            Complex64::new(0.3, -0.1),
            YMapTarget::Epsilon(2.0),
            12,
        );
        let s = serde_json::to_string(&req).unwrap();
        let back: YMapRequest = serde_json::from_str(&s).unwrap();
        assert_eq!(back, req);
    }
}
