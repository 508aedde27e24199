use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::elements::{SL2CElement, SU2Element};
use crate::error::Result;

/// `g = u1 · diag(1/ε, ε) · u2` with `ε ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CartanFactors {
    pub u1: SU2Element,
    pub epsilon: f64,
    pub u2: SU2Element,
}

impl CartanFactors {
    pub fn recompose(&self) -> SL2CElement {
        let b = SL2CElement::diag(Complex64::new(1.0 / self.epsilon, 0.0))
            .expect("epsilon is positive");
        self.u1.to_sl2c() * b * self.u2.to_sl2c()
    }
}

/// Below this, `ε` is treated as exactly 1 and `u2` is the identity.
const UNIT_EPSILON: f64 = 1e-12;

/// Cartan decomposition from the eigen-decomposition of `g g†`.
///
/// The first column of `u1` spans the `1/ε²` eigenspace of `g g†` and is
/// scaled so its first nonzero component is real and positive; the second
/// column is fixed by `det u1 = 1`, and `u2 = diag(ε, 1/ε) u1† g`.
pub fn cartan_decompose(g: &SL2CElement) -> Result<CartanFactors> {
    let [[a, b], [c, d]] = *g.matrix();
    let p = a.norm_sqr() + b.norm_sqr();
    let r = c.norm_sqr() + d.norm_sqr();
    let w = a * c.conj() + b * d.conj();
    let half_gap = (((p - r) / 2.0).powi(2) + w.norm_sqr()).sqrt();
    let lambda_max = (p + r) / 2.0 + half_gap;
    let epsilon = lambda_max.sqrt().max(1.0);

    if epsilon - 1.0 <= UNIT_EPSILON {
        let u1 = SU2Element::from_parts(a, c)?;
        return Ok(CartanFactors {
            u1,
            epsilon: 1.0,
            u2: SU2Element::identity(),
        });
    }

    // eigenvector of λ_max from whichever row of (H - λ_max) is better scaled
    let v1 = (w, Complex64::new(lambda_max - p, 0.0));
    let v2 = (Complex64::new(lambda_max - r, 0.0), w.conj());
    let n1 = v1.0.norm_sqr() + v1.1.norm_sqr();
    let n2 = v2.0.norm_sqr() + v2.1.norm_sqr();
    let vmax = if n1 >= n2 { v1 } else { v2 };
    // orthogonal complement is the λ_min eigenvector
    let (mut x, mut y) = (-vmax.1.conj(), vmax.0.conj());
    let phase = if x.norm() > 1e-300 { x } else { y };
    let rot = phase.conj() / phase.norm();
    x *= rot;
    y *= rot;
    let u1 = SU2Element::from_parts(x, y)?;

    // u2 = diag(ε, 1/ε) u1† g; its first column determines it
    let u1h = u1.adjoint().matrix();
    let col_a = (u1h[0][0] * a + u1h[0][1] * c) * epsilon;
    let col_b = (u1h[1][0] * a + u1h[1][1] * c) / epsilon;
    let u2 = SU2Element::from_parts(col_a, col_b)?;
    Ok(CartanFactors { u1, epsilon, u2 })
}

/// The boost parameter `ε ≥ 1` (larger singular value) of `g`.
pub fn epsilon_of(g: &SL2CElement) -> Result<f64> {
    cartan_decompose(g).map(|f| f.epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_group::su2_from_euler;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn random_su2(rng: &mut StdRng) -> SU2Element {
        su2_from_euler(
            rng.gen_range(0.0..2.0 * PI),
            rng.gen_range(-1.0f64..1.0).acos(),
            rng.gen_range(0.0..4.0 * PI),
        )
    }

    fn compose(u1: SU2Element, eps: f64, u2: SU2Element) -> SL2CElement {
        CartanFactors {
            u1,
            epsilon: eps,
            u2,
        }
        .recompose()
    }

    #[test]
    fn identity_has_unit_epsilon() {
        let f = cartan_decompose(&SL2CElement::identity()).unwrap();
        assert_eq!(f.epsilon, 1.0);
        assert_eq!(f.u2, SU2Element::identity());
    }

    #[test]
    fn torus_element() {
        let g = SL2CElement::diag(Complex64::new(0.5, 0.0)).unwrap();
        let f = cartan_decompose(&g).unwrap();
        assert!((f.epsilon - 2.0).abs() < 1e-14);
        assert!(f.recompose().max_abs_diff(&g) < 1e-14);
        // already diag(1/ε, ε), so both unitaries are the identity
        assert!(f.u1.max_abs_diff(&SU2Element::identity()) < 1e-14);
    }

    #[test]
    fn random_round_trips() {
        let mut rng = StdRng::seed_from_u64(3);
        let g = compose(random_su2(&mut rng), 3.7, random_su2(&mut rng));
        let f = cartan_decompose(&g).unwrap();
        assert!((f.epsilon - 3.7).abs() < 1e-10);
        assert!(f.recompose().max_abs_diff(&g) < 1e-10);
        for _ in 0..1000 {
            let eps = rng.gen_range(1.0..10.0);
            let g = compose(random_su2(&mut rng), eps, random_su2(&mut rng));
            let f = cartan_decompose(&g).unwrap();
            assert!(f.epsilon >= 1.0);
            assert!(
                (f.epsilon - eps).abs() < 1e-10 * eps,
                "{eps} vs {}",
                f.epsilon
            );
            assert!(f.recompose().max_abs_diff(&g) < 1e-10);
            let refit = cartan_decompose(&f.recompose()).unwrap();
            assert!((refit.epsilon - f.epsilon).abs() < 1e-10);
        }
    }

    #[test]
    fn epsilon_invariances() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..100 {
            let g = compose(
                random_su2(&mut rng),
                rng.gen_range(1.0..6.0),
                random_su2(&mut rng),
            );
            let e = epsilon_of(&g).unwrap();
            assert!((epsilon_of(&g.inverse()).unwrap() - e).abs() < 1e-10);
            let u = random_su2(&mut rng).to_sl2c();
            assert!((epsilon_of(&(u * g)).unwrap() - e).abs() < 1e-10);
            assert!((epsilon_of(&(g * u)).unwrap() - e).abs() < 1e-10);
        }
    }

    #[test]
    fn phase_convention() {
        let mut rng = StdRng::seed_from_u64(9);
        let g = compose(random_su2(&mut rng), 2.5, random_su2(&mut rng));
        let f = cartan_decompose(&g).unwrap();
        assert!(f.u1.a().im.abs() < 1e-15 && f.u1.a().re > 0.0);
    }

    #[test]
    fn unitary_input() {
        let u = su2_from_euler(1.0, 2.0, 3.0);
        let f = cartan_decompose(&u.to_sl2c()).unwrap();
        assert_eq!(f.epsilon, 1.0);
        assert!(f.u1.max_abs_diff(&u) < 1e-15);
    }
}
