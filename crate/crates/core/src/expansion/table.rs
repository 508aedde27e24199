use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::require_regular_tau;
use crate::error::{Error, Result};
use crate::principal_series::{diagonal_coefficients, EvalPolicy};
use crate::report::{tail_median, ReportParams, SeriesKind, SeriesReport, TermInput, TAIL_RATIOS};
use crate::special::LogComplexValue;

/// Synthetic coefficients `c_{jmm}` for one fixed `m`. Missing entries read
/// as zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CoefficientTable {
    pub m: i32,
    entries: BTreeMap<u32, Complex64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub j: u32,
    pub re: f64,
    pub im: f64,
}

/// Tail behaviour of `|c_{j+1}/c_j|` over consecutive stored entries.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayCheck {
    pub tail_ratio: Option<f64>,
    /// Tail ratio at most one, or too few entries to tell.
    pub satisfied: bool,
}

impl CoefficientTable {
    pub fn new(m: i32) -> Self {
        Self {
            m,
            entries: BTreeMap::new(),
        }
    }

    /// `c_j = r^j` for `j = max(|m|, 1) ..= j_max`.
    pub fn geometric(m: i32, r: f64, j_max: u32) -> Self {
        let mut t = Self::new(m);
        for j in m.unsigned_abs().max(1)..=j_max {
            t.entries.insert(j, Complex64::new(r.powi(j as i32), 0.0));
        }
        t
    }

    pub fn insert(&mut self, j: u32, value: Complex64) -> Result<()> {
        if self.m.unsigned_abs() > j {
            return Err(Error::index(format!(
                "c_jmm needs |m| <= j, got m = {}, j = {j}",
                self.m
            )));
        }
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::domain(format!(
                "coefficient at j = {j} is not finite"
            )));
        }
        self.entries.insert(j, value);
        Ok(())
    }

    pub fn get(&self, j: u32) -> Complex64 {
        self.entries.get(&j).copied().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = TableEntry> + '_ {
        self.entries.iter().map(|(&j, v)| TableEntry {
            j,
            re: v.re,
            im: v.im,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_j(&self) -> Option<u32> {
        self.entries.keys().next_back().copied()
    }

    /// `self + k · other`; both must share `m`.
    pub fn add_scaled(&self, other: &Self, k: Complex64) -> Self {
        assert_eq!(self.m, other.m, "tables for different m");
        let mut out = self.clone();
        for (j, v) in &other.entries {
            *out.entries.entry(*j).or_default() += v * k;
        }
        out
    }

    pub fn decay_check(&self) -> DecayCheck {
        let ratios: Vec<f64> = self
            .entries
            .iter()
            .zip(self.entries.iter().skip(1))
            .filter(|((j0, a), (j1, _))| **j1 == **j0 + 1 && a.norm() > 0.0)
            .map(|((_, a), (_, b))| b.norm() / a.norm())
            .collect();
        let tail_ratio = tail_median(&ratios, TAIL_RATIOS);
        DecayCheck {
            tail_ratio,
            satisfied: tail_ratio.is_none_or(|r| r <= 1.0),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    m: i32,
    entries: Vec<TableEntry>,
}

impl Serialize for CoefficientTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawTable {
            m: self.m,
            entries: self.entries().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoefficientTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawTable::deserialize(d)?;
        let mut t = CoefficientTable::new(raw.m);
        for e in raw.entries {
            t.insert(e.j, Complex64::new(e.re, e.im))
                .map_err(serde::de::Error::custom)?;
        }
        Ok(t)
    }
}

/// `Σ_j j²(1+τ²) c_{jmm} D^{(j,τj)}_{jm,jm}(ε)` for `j = max(|m|, 1) ..= j_max`.
pub fn synthesize(
    table: &CoefficientTable,
    tau: Complex64,
    epsilon: f64,
    j_max: u32,
) -> Result<SeriesReport> {
    synthesize_with(
        table,
        tau,
        epsilon,
        j_max,
        &super::ExpansionConfig::new(tau, table.m, epsilon, j_max),
    )
}

/// As [`synthesize`], taking tolerances and policy from `cfg`.
pub fn synthesize_with(
    table: &CoefficientTable,
    tau: Complex64,
    epsilon: f64,
    j_max: u32,
    cfg: &super::ExpansionConfig,
) -> Result<SeriesReport> {
    let q = require_regular_tau(tau)?;
    if !(epsilon.is_finite() && epsilon > 0.0) || epsilon == 1.0 {
        return Err(Error::domain(format!(
            "synthesis needs a positive epsilon != 1, got {epsilon}"
        )));
    }
    let m = table.m;
    let j_min = m.unsigned_abs().max(1);
    let js: Vec<u32> = (j_min..=j_max.max(j_min)).collect();
    let needed: Vec<(u32, i32)> = js
        .iter()
        .filter(|&&j| table.get(j) != Complex64::new(0.0, 0.0))
        .map(|&j| (j, m))
        .collect();
    let policy: EvalPolicy = cfg.policy;
    let values = diagonal_coefficients(&needed, tau, epsilon, &policy)?;
    let mut by_j = needed.iter().map(|p| p.0).zip(values);
    let mut next = by_j.next();
    let inputs: Vec<TermInput> = js
        .iter()
        .map(|&j| match next {
            Some((k, c)) if k == j => {
                next = by_j.next();
                let weight =
                    LogComplexValue::from_complex(q * (j as f64 * j as f64) * table.get(j));
                TermInput {
                    j,
                    value: weight * c.value,
                    path: c.path,
                    error_estimate: c.error_estimate,
                }
            }
            _ => TermInput {
                j,
                value: LogComplexValue::zero(),
                path: Default::default(),
                error_estimate: Some(0.0),
            },
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
    let mut report = SeriesReport::assemble(SeriesKind::Synthesis, params, &inputs);
    let decay = table.decay_check();
    if !decay.satisfied {
        report.warnings.push(format!(
            "coefficient tail ratio {:.4} exceeds 1",
            decay.tail_ratio.unwrap_or(f64::NAN)
        ));
    }
    if table.max_j().is_some_and(|j| j > j_max) {
        report
            .warnings
            .push(format!("table entries beyond j_max = {j_max} are ignored"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_j() {
        let mut t = CoefficientTable::new(3);
        assert!(t.insert(2, Complex64::new(1.0, 0.0)).is_err());
        assert!(t.insert(3, Complex64::new(1.0, 0.0)).is_ok());
    }

    #[test]
    fn decay() {
        assert!(
            CoefficientTable::geometric(0, 0.5, 40)
                .decay_check()
                .satisfied
        );
        assert!(
            !CoefficientTable::geometric(0, 1.1, 40)
                .decay_check()
                .satisfied
        );
        assert!(CoefficientTable::new(0).decay_check().satisfied);
    }

    #[test]
    fn json_shape() {
        let mut t = CoefficientTable::new(-1);
        t.insert(4, Complex64::new(0.25, -1.0)).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"m":-1,"entries":[{"j":4,"re":0.25,"im":-1.0}]}"#);
        let back: CoefficientTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<CoefficientTable>(
            r#"{"m":5,"entries":[{"j":4,"re":1,"im":0}]}"#
        )
        .is_err());
    }
}
