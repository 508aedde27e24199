use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::small_d::{wigner_d, wigner_small_d, SpinLabel};
use crate::lie_group::{haar_quadrature_su2, QuadratureGrid, SU2Element};

/// All coefficients `c^{j}_{m n} = (2j+1)^{1/2} ∫ φ conj(D^{j}_{m n}) du`
/// for `2j ≤ twice_band_limit`.
#[derive(Clone, Debug, PartialEq)]
pub struct Su2Spectrum {
    twice_band_limit: u32,
    /// `blocks[twice_j][(twice_m + twice_j)/2][(twice_n + twice_j)/2]`
    blocks: Vec<Vec<Vec<Complex64>>>,
    /// `Σ w |φ|` over the grid, the scale of the quadrature rounding error.
    l1_norm: f64,
    warnings: Vec<String>,
}

fn idx(twice_j: u32, twice_m: i32) -> usize {
    ((twice_m + twice_j as i32) / 2) as usize
}

impl Su2Spectrum {
    pub fn twice_band_limit(&self) -> u32 {
        self.twice_band_limit
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Coefficient `c^{j}_{m n}`; zero outside the admissible range.
    pub fn get(&self, twice_j: u32, twice_m: i32, twice_n: i32) -> Complex64 {
        let s = SpinLabel::new(twice_j);
        if twice_j > self.twice_band_limit || !s.admits(twice_m) || !s.admits(twice_n) {
            return Complex64::new(0.0, 0.0);
        }
        self.blocks[twice_j as usize][idx(twice_j, twice_m)][idx(twice_j, twice_n)]
    }

    /// `Σ_j (2j+1)^{1/2} Σ_{m n} c^{j}_{m n} D^{j}_{m n}(u)`.
    pub fn synthesize(&self, u: &SU2Element) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for tj in 0..=self.twice_band_limit {
            let s = SpinLabel::new(tj);
            let w = ((tj + 1) as f64).sqrt();
            for m in s.projections() {
                for n in s.projections() {
                    let d = wigner_d(s, m, n, u).expect("admissible indices");
                    acc += self.get(tj, m, n) * d * w;
                }
            }
        }
        acc
    }

    /// `Σ |c|²`, equal to `∫ |φ|²` for band-limited `φ`.
    pub fn energy(&self) -> f64 {
        self.blocks
            .iter()
            .flatten()
            .flatten()
            .map(|c| c.norm_sqr())
            .sum()
    }

    /// Absolute rounding floor of the entries at spin `twice_j / 2`.
    pub fn noise_floor(&self, twice_j: u32) -> f64 {
        64.0 * f64::EPSILON * self.l1_norm * ((twice_j + 1) as f64).sqrt()
    }

    /// The row `|p|/2` of every block, as a Fourier table for label `p`.
    pub fn row_table(&self, p: i32) -> FourierTableSU2 {
        let row = p.abs();
        let mut entries = BTreeMap::new();
        for tj in 0..=self.twice_band_limit {
            let s = SpinLabel::new(tj);
            if !s.admits(row) {
                continue;
            }
            for n in s.projections() {
                entries.insert((tj, n), self.get(tj, row, n));
            }
        }
        FourierTableSU2 {
            p,
            band_limit: self.twice_band_limit,
            entries,
            noise_floor: 64.0 * f64::EPSILON * self.l1_norm,
            warnings: self.warnings.clone(),
        }
    }
}

/// Fourier table `d^{j}_{|p|/2, m}` for one row label `p`, with `j` up to
/// `band_limit / 2`. Missing entries read as zero.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierTableSU2 {
    pub p: i32,
    pub band_limit: u32,
    entries: BTreeMap<(u32, i32), Complex64>,
    /// Entries below `noise_floor · (twice_j + 1)^{1/2}` are rounding noise.
    pub noise_floor: f64,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourierEntry {
    pub twice_j: u32,
    pub twice_m: i32,
    pub re: f64,
    pub im: f64,
}

impl FourierTableSU2 {
    pub fn new(p: i32, band_limit: u32) -> Self {
        Self {
            p,
            band_limit,
            entries: BTreeMap::new(),
            noise_floor: 0.0,
            warnings: Vec::new(),
        }
    }

    /// Sets an entry; entries outside the band or the spin's range are ignored
    /// with `false`.
    pub fn insert(&mut self, twice_j: u32, twice_m: i32, value: Complex64) -> bool {
        let s = SpinLabel::new(twice_j);
        if twice_j > self.band_limit || !s.admits(twice_m) || !s.admits(self.p.abs()) {
            return false;
        }
        self.entries.insert((twice_j, twice_m), value);
        true
    }

    /// Zero-extended lookup.
    pub fn get(&self, twice_j: u32, twice_m: i32) -> Complex64 {
        self.entries
            .get(&(twice_j, twice_m))
            .copied()
            .unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = FourierEntry> + '_ {
        self.entries
            .iter()
            .map(|(&(twice_j, twice_m), v)| FourierEntry {
                twice_j,
                twice_m,
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

    /// Entrywise `self + k · other`; both must share `p`.
    pub fn add_scaled(&self, other: &Self, k: Complex64) -> Self {
        assert_eq!(self.p, other.p, "tables for different rows");
        let mut out = self.clone();
        out.band_limit = self.band_limit.max(other.band_limit);
        for (key, v) in &other.entries {
            *out.entries.entry(*key).or_default() += v * k;
        }
        out.noise_floor = self.noise_floor + k.norm() * other.noise_floor;
        out
    }

    /// `Σ |d|` over all stored entries.
    pub fn l1_norm(&self) -> f64 {
        self.entries.values().map(|v| v.norm()).sum()
    }
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    p: i32,
    band_limit: u32,
    entries: Vec<FourierEntry>,
}

impl Serialize for FourierTableSU2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawTable {
            p: self.p,
            band_limit: self.band_limit,
            entries: self.entries().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FourierTableSU2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawTable::deserialize(d)?;
        let mut t = FourierTableSU2::new(raw.p, raw.band_limit);
        for e in raw.entries {
            if !t.insert(e.twice_j, e.twice_m, Complex64::new(e.re, e.im)) {
                return Err(serde::de::Error::custom(format!(
                    "entry (twice_j = {}, twice_m = {}) is outside the table's range",
                    e.twice_j, e.twice_m
                )));
            }
        }
        Ok(t)
    }
}

/// Full spectrum of `φ` up to `twice_band_limit`, computed on `grid`.
///
/// The `α` and `γ` sums are done first for every projection pair, so the cost
/// is dominated by the `φ` evaluations.
pub fn su2_spectrum<F>(grid: &QuadratureGrid, phi: F, twice_band_limit: u32) -> Su2Spectrum
where
    F: Fn(&SU2Element) -> Complex64 + Sync,
{
    let mut warnings = Vec::new();
    if grid.twice_band_limit() < twice_band_limit {
        warnings.push(format!(
            "quadrature band {} is below the transform band {}; coefficients are not exact",
            grid.twice_band_limit(),
            twice_band_limit
        ));
    }
    let b = twice_band_limit as i32;
    let width = (2 * b + 1) as usize;
    let alphas = grid.alphas();
    let gammas = grid.gammas();
    let aw = grid.angle_weight();

    // per β node: F[m][n] = Σ_{α,γ} w φ e^{i m α/2} e^{i n γ/2}, twice units
    let per_beta: Vec<(Vec<Complex64>, f64)> = grid
        .betas()
        .par_iter()
        .map(|&(beta, wb)| {
            let mut l1 = 0.0;
            let mut g = vec![Complex64::new(0.0, 0.0); alphas.len() * width];
            for (ia, &alpha) in alphas.iter().enumerate() {
                for &gamma in gammas {
                    let v = phi(&SU2Element::from_euler(alpha, beta, gamma));
                    l1 += v.norm();
                    let step = Complex64::from_polar(1.0, gamma / 2.0);
                    let mut e = Complex64::from_polar(1.0, -(b as f64) * gamma / 2.0);
                    for cell in &mut g[ia * width..(ia + 1) * width] {
                        *cell += v * e;
                        e *= step;
                    }
                }
            }
            let mut f = vec![Complex64::new(0.0, 0.0); width * width];
            for (ia, &alpha) in alphas.iter().enumerate() {
                let step = Complex64::from_polar(1.0, alpha / 2.0);
                let mut e = Complex64::from_polar(1.0, -(b as f64) * alpha / 2.0);
                for m in 0..width {
                    let row = &mut f[m * width..(m + 1) * width];
                    for (cell, gv) in row.iter_mut().zip(&g[ia * width..(ia + 1) * width]) {
                        *cell += gv * e;
                    }
                    e *= step;
                }
            }
            let scale = wb * aw;
            f.iter_mut().for_each(|x| *x *= scale);
            (f, l1 * scale)
        })
        .collect();
    let l1_norm = per_beta.iter().map(|p| p.1).sum();

    let blocks = (0..=twice_band_limit)
        .into_par_iter()
        .map(|tj| {
            let s = SpinLabel::new(tj);
            let w = ((tj + 1) as f64).sqrt();
            s.projections()
                .map(|m| {
                    s.projections()
                        .map(|n| {
                            let (im, inn) = ((m + b) as usize, (n + b) as usize);
                            let acc: Complex64 = grid
                                .betas()
                                .iter()
                                .zip(&per_beta)
                                .map(|(&(beta, _), (f, _))| {
                                    f[im * width + inn]
                                        * wigner_small_d(s, m, n, beta).expect("admissible")
                                })
                                .sum();
                            acc * w
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Su2Spectrum {
        twice_band_limit,
        blocks,
        l1_norm,
        warnings,
    }
}

/// `d^{j}_{|p|/2, m} = (2j+1)^{1/2} ∫ φ conj(D^{j}_{|p|/2, m}) du` for
/// `2j ≤ band_limit`, on the grid that is exact for `φ` of band `band_limit`.
pub fn su2_fourier<F>(phi: F, p: i32, band_limit: u32) -> FourierTableSU2
where
    F: Fn(&SU2Element) -> Complex64 + Sync,
{
    su2_fourier_on_grid(&haar_quadrature_su2(band_limit), phi, p, band_limit)
}

pub fn su2_fourier_on_grid<F>(
    grid: &QuadratureGrid,
    phi: F,
    p: i32,
    band_limit: u32,
) -> FourierTableSU2
where
    F: Fn(&SU2Element) -> Complex64 + Sync,
{
    su2_spectrum(grid, phi, band_limit).row_table(p)
}
