use std::f64::consts::PI;

use super::elements::SU2Element;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    let nf = n as f64;
    for i in 0..n {
        // Tricomi initial guess, then Newton on P_n
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            // (p0, p1) = (P_{k-1}, P_k), ending at k = n
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out.reverse();
    out
}

/// Tensor-product Haar quadrature on SU(2): trapezoid in `α ∈ [0, 2π)` and
/// `γ ∈ [0, 4π)`, Gauss–Legendre in `cos β`. Total weight 1.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureGrid {
    twice_band_limit: u32,
    alphas: Vec<f64>,
    /// `(β, weight)` with weights summing to 1.
    betas: Vec<(f64, f64)>,
    gammas: Vec<f64>,
}

/// Grid exact for every product `conj(D^{j₁}) D^{j₂}` with `2j₁, 2j₂ ≤
/// twice_band_limit`, i.e. for functions of band `2·twice_band_limit`.
pub fn haar_quadrature_su2(twice_band_limit: u32) -> QuadratureGrid {
    let n_angle = 2 * twice_band_limit as usize + 2;
    let n_beta = twice_band_limit as usize + 1;
    let alphas = (0..n_angle)
        .map(|k| 2.0 * PI * k as f64 / n_angle as f64)
        .collect();
    let gammas = (0..n_angle)
        .map(|k| 4.0 * PI * k as f64 / n_angle as f64)
        .collect();
    let betas = gauss_legendre(n_beta)
        .into_iter()
        .map(|(x, w)| (x.clamp(-1.0, 1.0).acos(), w / 2.0))
        .collect();
    QuadratureGrid {
        twice_band_limit,
        alphas,
        betas,
        gammas,
    }
}

impl QuadratureGrid {
    pub fn twice_band_limit(&self) -> u32 {
        self.twice_band_limit
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn betas(&self) -> &[(f64, f64)] {
        &self.betas
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn len(&self) -> usize {
        self.alphas.len() * self.betas.len() * self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Weight shared by all `(α, γ)` pairs at one `β` node.
    pub fn angle_weight(&self) -> f64 {
        1.0 / (self.alphas.len() * self.gammas.len()) as f64
    }

    /// All nodes with their weights, ordered by `(β, α, γ)`.
    pub fn nodes(&self) -> impl Iterator<Item = (SU2Element, f64)> + '_ {
        let aw = self.angle_weight();
        self.betas.iter().flat_map(move |&(beta, wb)| {
            self.alphas.iter().flat_map(move |&alpha| {
                self.gammas
                    .iter()
                    .map(move |&gamma| (SU2Element::from_euler(alpha, beta, gamma), wb * aw))
            })
        })
    }

    /// `∫ f du` over SU(2) with normalized Haar measure.
    pub fn integrate<F>(&self, f: F) -> num_complex::Complex64
    where
        F: Fn(&SU2Element) -> num_complex::Complex64,
    {
        self.nodes().map(|(u, w)| f(&u) * w).sum()
    }
}
