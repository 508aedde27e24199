use std::path::Path;

use anyhow::{Context, Result};
use lh_core::expansion::{
    divergence_probe_with, norm_identity, partial_sum_diagonal, partial_sum_triple_with,
    synthesize_with, CoefficientTable, ExpansionConfig,
};
use lh_core::lie_group::{epsilon_of, SL2CElement};
use lh_core::principal_series::{
    boundary_ratio_test_with, diagonal_coefficient_with, ratio_test_with, EvalPolicy, RatioConfig,
};
use lh_core::report::Track;
use lh_core::special::{Branch, LogComplexValue};
use lh_core::wigner::FourierTableSU2;
use lh_core::ymap::{ymap_apply, ymap_convergence_report, YMapRequest, YMapTarget};
use num_complex::Complex64;

use crate::config::{RunConfig, UsageError};
use crate::output::{AsymptoticCheck, AsymptoticRow, CoefficientRecord, Output};
use crate::{Command, SumMode, TargetArgs, TrackArg};

pub fn parse_complex(s: &str) -> Result<Complex64, UsageError> {
    let bad = || {
        UsageError(format!(
            "invalid complex number {s:?}; expected re or re,im"
        ))
    };
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().ok().filter(|x| x.is_finite());
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re).ok_or_else(bad)?, 0.0)),
        [re, im] => Ok(Complex64::new(
            num(re).ok_or_else(bad)?,
            num(im).ok_or_else(bad)?,
        )),
        _ => Err(bad()),
    }
}

pub fn parse_matrix(s: &str) -> Result<SL2CElement> {
    let values = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| UsageError(format!("invalid matrix {s:?}")))?;
    let reals: [f64; 8] = values
        .try_into()
        .map_err(|_| UsageError("--g needs exactly 8 comma-separated numbers".into()))?;
    Ok(SL2CElement::from_reals(&reals)?)
}

enum Target {
    Epsilon(f64),
    Element(SL2CElement),
}

impl Target {
    fn from_args(t: &TargetArgs) -> Result<Self> {
        match (&t.eps, &t.g) {
            (Some(e), _) => Ok(Target::Epsilon(*e)),
            (None, Some(g)) => Ok(Target::Element(parse_matrix(g)?)),
            (None, None) => Err(UsageError("one of --eps or --g is required".into()).into()),
        }
    }

    fn epsilon(&self) -> Result<f64> {
        match self {
            Target::Epsilon(e) => Ok(*e),
            Target::Element(g) => Ok(epsilon_of(g)?),
        }
    }
}

fn policy(cfg: &RunConfig) -> EvalPolicy {
    EvalPolicy {
        exact_max_j: cfg.exact_max_j,
        branch: cfg.branch.into(),
        ..Default::default()
    }
}

fn expansion_config(cfg: &RunConfig, tau: Complex64, m: i32, eps: f64) -> ExpansionConfig {
    ExpansionConfig {
        cauchy_tolerance: cfg.cauchy_tolerance,
        cauchy_window: cfg.cauchy_window,
        policy: policy(cfg),
        ..ExpansionConfig::new(tau, m, eps, cfg.j_max)
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| UsageError(format!("invalid table {}: {e}", path.display())).into())
}

pub fn dispatch(cmd: Command, cfg: &RunConfig) -> Result<Output> {
    match cmd {
        Command::Coeff { j, m, tau, target } => {
            let tau = parse_complex(&tau)?;
            let eps = Target::from_args(&target)?.epsilon()?;
            let c = diagonal_coefficient_with(j, m, tau, eps, &policy(cfg))?;
            Ok(Output::Coefficient(CoefficientRecord {
                j,
                m,
                tau,
                epsilon: eps,
                log_mag: finite(c.value.log_mag()),
                phase: c.value.phase(),
                value: c.value.checked_to_complex(),
                path: c.path,
                error_estimate: c.error_estimate,
                route: c.route,
            }))
        }
        Command::Ratio {
            m,
            tau,
            target,
            track,
        } => {
            let tau = parse_complex(&tau)?;
            let eps = Target::from_args(&target)?.epsilon()?;
            let rc = RatioConfig {
                policy: policy(cfg),
                cauchy_tolerance: cfg.cauchy_tolerance,
                cauchy_window: cfg.cauchy_window,
            };
            let report = match track {
                None => ratio_test_with(m, tau, eps, cfg.j_max, &rc)?,
                Some(t) => {
                    let t = match t {
                        TrackArg::MEqualsJ => Track::MEqualsJ,
                        TrackArg::MEquals0 => Track::MEquals0,
                    };
                    boundary_ratio_test_with(t, tau, eps, cfg.j_max, &rc)?
                }
            };
            Ok(Output::Series(report))
        }
        Command::Sum {
            mode,
            m,
            tau,
            target,
            table,
        } => {
            let tau = parse_complex(&tau)?;
            let eps = Target::from_args(&target)?.epsilon()?;
            let report = match mode {
                SumMode::Diagonal => partial_sum_diagonal(&expansion_config(cfg, tau, m, eps))?,
                SumMode::Triple => partial_sum_triple_with(&expansion_config(cfg, tau, 0, eps))?,
                SumMode::Synthesis => {
                    let path =
                        table.ok_or_else(|| UsageError("--mode synthesis needs --table".into()))?;
                    let table: CoefficientTable = read_json(&path)?;
                    let ec = expansion_config(cfg, tau, table.m, eps);
                    synthesize_with(&table, tau, eps, cfg.j_max, &ec)?
                }
            };
            Ok(Output::Series(report))
        }
        Command::Norm { tau } => {
            let tau = parse_complex(&tau)?;
            Ok(Output::Norm(norm_identity(tau, cfg.j_max)?))
        }
        Command::Diverge { tau, checkpoints } => {
            let tau = parse_complex(&tau)?;
            Ok(Output::Divergence(divergence_probe_with(
                tau,
                &checkpoints,
                cfg.cauchy_tolerance,
            )?))
        }
        Command::Ymap {
            table,
            tau,
            target,
            bounds,
        } => {
            let tau = parse_complex(&tau)?;
            let table: FourierTableSU2 = read_json(&table)?;
            let target = match Target::from_args(&target)? {
                Target::Epsilon(e) => YMapTarget::Epsilon(e),
                Target::Element(g) => YMapTarget::Element(g),
            };
            let req = YMapRequest {
                cauchy_tolerance: cfg.cauchy_tolerance,
                cauchy_window: cfg.cauchy_window,
                policy: policy(cfg),
                ..YMapRequest::new(table, tau, target, cfg.j_max)
            };
            if bounds {
                Ok(Output::YMapBounds(Box::new(ymap_convergence_report(&req)?)))
            } else {
                Ok(Output::Series(ymap_apply(&req)?))
            }
        }
        Command::Asymcheck { m, tau, eps, js } => {
            let tau = parse_complex(&tau)?;
            asymcheck(cfg, m, tau, eps, &js).map(Output::Asymptotic)
        }
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn asymcheck(
    cfg: &RunConfig,
    m: i32,
    tau: Complex64,
    eps: f64,
    js: &[u32],
) -> Result<AsymptoticCheck> {
    let branch: Branch = cfg.branch.into();
    let exact = EvalPolicy {
        exact_max_j: u32::MAX,
        branch,
        ..Default::default()
    };
    let asym = EvalPolicy {
        exact_max_j: 0,
        ..exact
    };
    let mut rows = Vec::with_capacity(js.len());
    for &j in js {
        let e = diagonal_coefficient_with(j, m, tau, eps, &exact)
            .with_context(|| format!("exact coefficient at j = {j}"))?
            .value;
        let a = diagonal_coefficient_with(j, m, tau, eps, &asym)
            .with_context(|| format!("asymptotic coefficient at j = {j}"))?
            .value;
        rows.push(AsymptoticRow {
            j,
            exact_log_mag: finite(e.log_mag()),
            exact_phase: e.phase(),
            asymptotic_log_mag: finite(a.log_mag()),
            asymptotic_phase: a.phase(),
            relative_error: relative_error(&e, &a),
        });
    }
    Ok(AsymptoticCheck {
        m,
        tau,
        epsilon: eps,
        branch,
        rows,
    })
}

/// `|a/e − 1|`, formed in log space.
fn relative_error(e: &LogComplexValue, a: &LogComplexValue) -> f64 {
    if e.is_zero() {
        return if a.is_zero() { 0.0 } else { f64::INFINITY };
    }
    ((a.ln() - e.ln()).exp() - 1.0).norm()
}
