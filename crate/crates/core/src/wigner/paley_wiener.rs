use serde::{Deserialize, Serialize};

use super::fourier::FourierTableSU2;
use super::small_d::SpinLabel;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaleyWienerRow {
    pub twice_j: u32,
    /// Spin `k = twice_j / 2`.
    pub k: f64,
    /// `sup_m |d^{k}_{|p|/2, m}|`.
    pub sup_abs: f64,
    /// `sup_abs · kⁿ` for each requested power.
    pub weighted: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaleyWienerReport {
    pub p: i32,
    pub band_limit: u32,
    pub powers: Vec<u32>,
    /// Rows above the rounding floor, ascending in `twice_j`.
    pub rows: Vec<PaleyWienerRow>,
    /// Per power: `sup · kⁿ` is non-increasing over rows with
    /// `twice_j ≥ band_limit / 2`.
    pub non_increasing: Vec<bool>,
    /// Rows dropped as rounding noise.
    pub dropped: Vec<u32>,
}

/// Decay of `sup_m |d|·kⁿ` along the spin.
pub fn paley_wiener_report(table: &FourierTableSU2, powers: &[u32]) -> PaleyWienerReport {
    let row = table.p.abs();
    let mut rows = Vec::new();
    let mut dropped = Vec::new();
    for tj in 0..=table.band_limit {
        let s = SpinLabel::new(tj);
        if !s.admits(row) {
            continue;
        }
        let sup = s
            .projections()
            .map(|m| table.get(tj, m).norm())
            .fold(0.0, f64::max);
        if sup <= table.noise_floor * ((tj + 1) as f64).sqrt() {
            dropped.push(tj);
            continue;
        }
        let k = tj as f64 / 2.0;
        rows.push(PaleyWienerRow {
            twice_j: tj,
            k,
            sup_abs: sup,
            weighted: powers.iter().map(|&n| sup * k.powi(n as i32)).collect(),
        });
    }
    let start = table.band_limit / 2;
    let non_increasing = (0..powers.len())
        .map(|i| {
            let tail: Vec<f64> = rows
                .iter()
                .filter(|r| r.twice_j >= start)
                .map(|r| r.weighted[i])
                .collect();
            tail.windows(2).all(|w| w[1] <= w[0])
        })
        .collect();
    PaleyWienerReport {
        p: table.p,
        band_limit: table.band_limit,
        powers: powers.to_vec(),
        rows,
        non_increasing,
        dropped,
    }
}
