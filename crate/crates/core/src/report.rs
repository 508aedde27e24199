//! Series reports shared by the ratio diagnostics, the expansions and the
//! Y-map: per-term values, partial sums, tail ratio and a Cauchy verdict.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::special::LogComplexValue;

/// Number of trailing ratios entering the empirical limit.
pub const TAIL_RATIOS: usize = 10;

/// Tail ratio above which non-decaying terms count as divergence.
const STALLED_RATIO: f64 = 0.999;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    RatioTest,
    BoundaryRatio,
    DiagonalSum,
    TripleSum,
    Synthesis,
    #[serde(rename = "ymap")]
    YMap,
    FourierBound,
    CoefficientBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Converged,
    Diverged,
    Inconclusive,
}

/// How a coefficient was obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvaluationPath {
    #[default]
    Exact,
    Asymptotic,
}

/// Which bounding sum a boundary ratio test follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Track {
    MEqualsJ,
    MEquals0,
}

/// Whether the comparison against a closed-form limit is a claim or a note.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitCheck {
    Asserted,
    Informational,
}

/// Inputs echoed into a report.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub track: Option<Track>,
    pub j_min: u32,
    pub j_max: u32,
    pub cauchy_tolerance: f64,
    pub cauchy_window: u32,
}

/// One summand. `log_mag` is `None` for an exact zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub j: u32,
    pub log_mag: Option<f64>,
    pub phase: f64,
    /// `|a_j / a_{j-1}|`; absent for the first term or after a zero.
    pub ratio: Option<f64>,
    pub partial_sum: Complex64,
    pub path: EvaluationPath,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error_estimate: Option<f64>,
}

impl SeriesTerm {
    pub fn value(&self) -> LogComplexValue {
        LogComplexValue::new(self.log_mag.unwrap_or(f64::NEG_INFINITY), self.phase)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub params: ReportParams,
    pub terms: Vec<SeriesTerm>,
    pub predicted_limit: Option<f64>,
    pub empirical_limit: Option<f64>,
    pub relative_deviation: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit_check: Option<LimitCheck>,
    pub cauchy_delta: Option<f64>,
    pub verdict: Verdict,
    #[serde(default)]
    pub warnings: Vec<String>,
}

/// A computed summand before accumulation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TermInput {
    pub j: u32,
    pub value: LogComplexValue,
    pub path: EvaluationPath,
    pub error_estimate: Option<f64>,
}

impl SeriesReport {
    /// Accumulates `inputs` in the given order and fills in ratios, the tail
    /// median and the Cauchy verdict. The limit fields stay empty.
    pub fn assemble(kind: SeriesKind, params: ReportParams, inputs: &[TermInput]) -> Self {
        let mut terms = Vec::with_capacity(inputs.len());
        let mut sum = Complex64::new(0.0, 0.0);
        let mut prev: Option<LogComplexValue> = None;
        let mut warnings = Vec::new();
        for t in inputs {
            sum += t.value.to_complex();
            let ratio = match prev {
                Some(p) if !p.is_zero() && !t.value.is_zero() => {
                    Some((t.value.log_mag() - p.log_mag()).exp())
                }
                _ => None,
            };
            terms.push(SeriesTerm {
                j: t.j,
                log_mag: (!t.value.is_zero()).then_some(t.value.log_mag()),
                phase: t.value.phase(),
                ratio,
                partial_sum: sum,
                path: t.path,
                error_estimate: t.error_estimate,
            });
            prev = Some(t.value);
        }
        if terms.iter().any(|t| !t.partial_sum.is_finite()) {
            warnings.push("partial sums left the f64 range".to_string());
        }
        if let Some(t) = terms.iter().find(|t| t.path == EvaluationPath::Asymptotic) {
            warnings.push(format!(
                "terms from j = {} on use the asymptotic approximation",
                t.j
            ));
        }
        let window = params.cauchy_window as usize;
        let tolerance = params.cauchy_tolerance;
        let mut report = SeriesReport {
            kind,
            params,
            terms,
            predicted_limit: None,
            empirical_limit: None,
            relative_deviation: None,
            limit_check: None,
            cauchy_delta: None,
            verdict: Verdict::Inconclusive,
            warnings,
        };
        report.empirical_limit = tail_median(&report.term_ratios(), TAIL_RATIOS);
        report.cauchy_delta = cauchy_delta(&report.partial_sums(), window);
        report.verdict = cauchy_verdict(
            report.cauchy_delta,
            report.empirical_limit,
            report.terms.last().map(|t| t.value().abs()),
            tolerance,
        );
        report
    }

    /// Records a closed-form limit and the deviation of the empirical one.
    pub fn with_prediction(mut self, predicted: f64, check: LimitCheck) -> Self {
        self.predicted_limit = Some(predicted);
        self.relative_deviation = self
            .empirical_limit
            .map(|e| ((e - predicted) / predicted).abs());
        self.limit_check = Some(check);
        self
    }

    pub fn partial_sums(&self) -> Vec<Complex64> {
        self.terms.iter().map(|t| t.partial_sum).collect()
    }

    /// All available ratios in j-order.
    pub fn term_ratios(&self) -> Vec<f64> {
        self.terms.iter().filter_map(|t| t.ratio).collect()
    }

    pub fn final_sum(&self) -> Option<Complex64> {
        self.terms.last().map(|t| t.partial_sum)
    }

    pub fn term(&self, j: u32) -> Option<&SeriesTerm> {
        self.terms.iter().find(|t| t.j == j)
    }

    /// Ratio `|a_j / a_{j-1}|` recorded at `j`.
    pub fn ratio_at(&self, j: u32) -> Option<f64> {
        self.term(j).and_then(|t| t.ratio)
    }

    pub fn partial_sum_at(&self, j: u32) -> Option<Complex64> {
        self.term(j).map(|t| t.partial_sum)
    }
}

/// Median of the last `n` finite entries.
pub fn tail_median(values: &[f64], n: usize) -> Option<f64> {
    let mut tail: Vec<f64> = values
        .iter()
        .rev()
        .filter(|v| v.is_finite())
        .take(n)
        .copied()
        .collect();
    if tail.is_empty() {
        return None;
    }
    tail.sort_by(f64::total_cmp);
    let k = tail.len();
    Some(if k % 2 == 1 {
        tail[k / 2]
    } else {
        0.5 * (tail[k / 2 - 1] + tail[k / 2])
    })
}

/// `|S_J − S_{J−window}|` at the last index, if the series is long enough.
pub fn cauchy_delta(partial_sums: &[Complex64], window: usize) -> Option<f64> {
    let n = partial_sums.len();
    if window == 0 || n <= window {
        return None;
    }
    Some((partial_sums[n - 1] - partial_sums[n - 1 - window]).norm())
}

fn cauchy_verdict(
    delta: Option<f64>,
    tail_ratio: Option<f64>,
    last_term: Option<f64>,
    tolerance: f64,
) -> Verdict {
    let Some(delta) = delta else {
        return Verdict::Inconclusive;
    };
    if delta < tolerance {
        return Verdict::Converged;
    }
    let stalled = tail_ratio.is_some_and(|r| r >= STALLED_RATIO);
    let large = last_term.is_none_or(|t| t.is_nan() || t >= 10.0 * tolerance);
    if !delta.is_finite() || (stalled && large && delta >= 10.0 * tolerance) {
        Verdict::Diverged
    } else {
        Verdict::Inconclusive
    }
}
