//! JSON and CSV rendering of command results.

use anyhow::Result;
use lh_core::expansion::{DivergenceReport, NormIdentity};
use lh_core::report::{EvaluationPath, SeriesReport};
use lh_core::special::{Branch, Hyp2F1Route};
use lh_core::ymap::YMapConvergence;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientRecord {
    pub j: u32,
    pub m: i32,
    pub tau: Complex64,
    pub epsilon: f64,
    pub log_mag: Option<f64>,
    pub phase: f64,
    /// Linear value, absent when it over- or underflows.
    pub value: Option<Complex64>,
    pub path: EvaluationPath,
    pub error_estimate: Option<f64>,
    pub route: Option<Hyp2F1Route>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticRow {
    pub j: u32,
    pub exact_log_mag: Option<f64>,
    pub exact_phase: f64,
    pub asymptotic_log_mag: Option<f64>,
    pub asymptotic_phase: f64,
    pub relative_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticCheck {
    pub m: i32,
    pub tau: Complex64,
    pub epsilon: f64,
    pub branch: Branch,
    pub rows: Vec<AsymptoticRow>,
}

pub enum Output {
    Series(SeriesReport),
    Coefficient(CoefficientRecord),
    Norm(NormIdentity),
    Divergence(DivergenceReport),
    Asymptotic(AsymptoticCheck),
    YMapBounds(Box<YMapConvergence>),
}

fn tagged<T: Serialize>(kind: &str, v: &T) -> Result<Value> {
    let mut value = serde_json::to_value(v)?;
    if let Value::Object(map) = &mut value {
        map.insert("kind".into(), Value::String(kind.into()));
    }
    Ok(value)
}

impl Output {
    pub fn to_json(&self) -> Result<String> {
        let value = match self {
            Output::Series(r) => serde_json::to_value(r)?,
            Output::Coefficient(r) => tagged("coefficient", r)?,
            Output::Norm(r) => tagged("norm_identity", r)?,
            Output::Divergence(r) => tagged("divergence", r)?,
            Output::Asymptotic(r) => tagged("asymptotic_check", r)?,
            Output::YMapBounds(r) => tagged("ymap_convergence", r)?,
        };
        let mut s = serde_json::to_string_pretty(&value)?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        match self {
            Output::Series(r) => {
                w.write_record([
                    "j",
                    "log_mag",
                    "phase",
                    "ratio",
                    "partial_sum_re",
                    "partial_sum_im",
                    "path",
                    "error_estimate",
                ])?;
                for t in &r.terms {
                    w.write_record([
                        t.j.to_string(),
                        opt(t.log_mag),
                        t.phase.to_string(),
                        opt(t.ratio),
                        t.partial_sum.re.to_string(),
                        t.partial_sum.im.to_string(),
                        path_name(t.path).to_string(),
                        opt(t.error_estimate),
                    ])?;
                }
            }
            Output::Coefficient(r) => {
                w.write_record([
                    "j",
                    "m",
                    "tau_re",
                    "tau_im",
                    "epsilon",
                    "log_mag",
                    "phase",
                    "re",
                    "im",
                    "path",
                    "error_estimate",
                ])?;
                w.write_record([
                    r.j.to_string(),
                    r.m.to_string(),
                    r.tau.re.to_string(),
                    r.tau.im.to_string(),
                    r.epsilon.to_string(),
                    opt(r.log_mag),
                    r.phase.to_string(),
                    opt(r.value.map(|v| v.re)),
                    opt(r.value.map(|v| v.im)),
                    path_name(r.path).to_string(),
                    opt(r.error_estimate),
                ])?;
            }
            Output::Norm(r) => {
                w.write_record([
                    "tau_re",
                    "tau_im",
                    "j_max",
                    "computed_re",
                    "computed_im",
                    "target_re",
                    "target_im",
                    "deviation",
                    "tail_bound",
                ])?;
                w.write_record([
                    r.tau.re.to_string(),
                    r.tau.im.to_string(),
                    r.j_max.to_string(),
                    r.computed.re.to_string(),
                    r.computed.im.to_string(),
                    r.target.re.to_string(),
                    r.target.im.to_string(),
                    r.deviation.to_string(),
                    r.tail_bound.to_string(),
                ])?;
            }
            Output::Divergence(r) => {
                w.write_record([
                    "from",
                    "to",
                    "increment_re",
                    "increment_im",
                    "model_re",
                    "model_im",
                    "relative_deviation",
                ])?;
                for i in &r.increments {
                    w.write_record([
                        i.from.to_string(),
                        i.to.to_string(),
                        i.increment.re.to_string(),
                        i.increment.im.to_string(),
                        i.model.re.to_string(),
                        i.model.im.to_string(),
                        i.relative_deviation.to_string(),
                    ])?;
                }
            }
            Output::Asymptotic(r) => {
                w.write_record([
                    "j",
                    "exact_log_mag",
                    "exact_phase",
                    "asymptotic_log_mag",
                    "asymptotic_phase",
                    "relative_error",
                ])?;
                for row in &r.rows {
                    w.write_record([
                        row.j.to_string(),
                        opt(row.exact_log_mag),
                        row.exact_phase.to_string(),
                        opt(row.asymptotic_log_mag),
                        row.asymptotic_phase.to_string(),
                        row.relative_error.to_string(),
                    ])?;
                }
            }
            Output::YMapBounds(r) => {
                w.write_record([
                    "j",
                    "partial_sum_abs",
                    "fourier_sum",
                    "coefficient_sum",
                    "product",
                    "holds",
                ])?;
                for c in &r.checks {
                    w.write_record([
                        c.j.to_string(),
                        c.partial_sum_abs.to_string(),
                        c.fourier_sum.to_string(),
                        c.coefficient_sum.to_string(),
                        c.product.to_string(),
                        c.holds.to_string(),
                    ])?;
                }
            }
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn path_name(p: EvaluationPath) -> &'static str {
    match p {
        EvaluationPath::Exact => "exact",
        EvaluationPath::Asymptotic => "asymptotic",
    }
}
