use std::f64::consts::PI;

use lh_core::lie_group::{haar_quadrature_su2, su2_from_euler, SU2Element};
use lh_core::wigner::*;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_su2(rng: &mut StdRng) -> SU2Element {
    su2_from_euler(
        rng.gen_range(0.0..2.0 * PI),
        rng.gen_range(-1.0f64..1.0).acos(),
        rng.gen_range(0.0..4.0 * PI),
    )
}

fn d(tj: u32, m: i32, n: i32, u: &SU2Element) -> Complex64 {
    wigner_d(SpinLabel::new(tj), m, n, u).unwrap()
}

/// A band-limited test function: a fixed combination of D entries with
/// 2j ≤ 8.
fn band_limited(u: &SU2Element) -> Complex64 {
    d(0, 0, 0, u) * 0.3
        + d(1, 1, -1, u) * Complex64::new(0.5, -0.2)
        + d(4, 2, 0, u) * Complex64::new(-1.1, 0.0)
        + d(7, -3, 5, u) * Complex64::new(0.0, 0.8)
        + d(8, 8, -6, u) * 0.25
}

#[test]
fn orthogonality_within_band() {
    let grid = haar_quadrature_su2(4);
    let labels: Vec<(u32, i32, i32)> = (0..=4u32)
        .flat_map(|tj| {
            let s = SpinLabel::new(tj);
            s.projections()
                .flat_map(move |m| s.projections().map(move |n| (tj, m, n)))
                .collect::<Vec<_>>()
        })
        .collect();
    let nodes: Vec<(SU2Element, f64)> = grid.nodes().collect();
    for &(j1, m1, n1) in &labels {
        for &(j2, m2, n2) in &labels {
            let v: Complex64 = nodes
                .iter()
                .map(|(u, w)| d(j1, m1, n1, u).conj() * d(j2, m2, n2, u) * w)
                .sum();
            let expected = if (j1, m1, n1) == (j2, m2, n2) {
                1.0 / (j1 + 1) as f64
            } else {
                0.0
            };
            assert!(
                (v - expected).norm() < 1e-12,
                "({j1},{m1},{n1}) x ({j2},{m2},{n2}): {v}"
            );
        }
    }
}

#[test]
fn trivial_representation_integrals() {
    let grid = haar_quadrature_su2(4);
    let v = grid.integrate(|u| d(2, 2, 0, u));
    assert!(v.norm() < 1e-15);
}

#[test]
fn constant_function_table() {
    let t = su2_fourier(|_| Complex64::new(1.0, 0.0), 0, 6);
    assert!((t.get(0, 0) - 1.0).norm() < 1e-14);
    for e in t.entries().filter(|e| e.twice_j > 0) {
        assert!(Complex64::new(e.re, e.im).norm() < 1e-14);
    }
    let report = paley_wiener_report(&t, &[0, 1, 2]);
    assert_eq!(report.rows.len(), 1);
    assert_eq!(report.rows[0].twice_j, 0);
}

#[test]
fn single_entry_transform() {
    // φ = D^{1/2}_{1/2, -1/2}: only (twice_j = 1, twice_m = -1), value √2 / 2
    let t = su2_fourier(|u| d(1, 1, -1, u), 1, 4);
    for e in t.entries() {
        let v = Complex64::new(e.re, e.im);
        if (e.twice_j, e.twice_m) == (1, -1) {
            assert!((v - 2f64.sqrt() / 2.0).norm() < 1e-14);
        } else {
            assert!(v.norm() < 1e-14, "{e:?}");
        }
    }
}

#[test]
fn transform_is_linear() {
    let f1 = |u: &SU2Element| d(2, 0, 2, u) + d(3, 1, 1, u);
    let f2 = |u: &SU2Element| d(2, 0, -2, u) * Complex64::new(0.0, 1.0);
    let t1 = su2_fourier(f1, 0, 6);
    let t2 = su2_fourier(f2, 0, 6);
    let t12 = su2_fourier(|u| f1(u) + f2(u) * 2.0, 0, 6);
    let combo = t1.add_scaled(&t2, Complex64::new(2.0, 0.0));
    for e in t12.entries() {
        let v = Complex64::new(e.re, e.im);
        assert!((v - combo.get(e.twice_j, e.twice_m)).norm() < 1e-13);
    }
}

#[test]
fn peter_weyl_round_trip_and_parseval() {
    let grid = haar_quadrature_su2(8);
    let spectrum = su2_spectrum(&grid, band_limited, 8);
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..50 {
        let u = random_su2(&mut rng);
        let back = spectrum.synthesize(&u);
        assert!((back - band_limited(&u)).norm() < 1e-10);
    }
    let norm2 = grid
        .integrate(|u| Complex64::new(band_limited(u).norm_sqr(), 0.0))
        .re;
    assert!((norm2 - spectrum.energy()).abs() < 1e-10);
}

#[test]
fn band_limited_table_vanishes_beyond_band() {
    let grid = haar_quadrature_su2(16);
    let t = su2_fourier_on_grid(&grid, band_limited, 2, 16);
    for e in t.entries().filter(|e| e.twice_j > 8) {
        assert!(Complex64::new(e.re, e.im).norm() < 1e-13);
    }
    let r = paley_wiener_report(&t, &[0, 1, 2, 3, 4]);
    assert!(r.rows.iter().all(|row| row.twice_j <= 8));
    assert!(r.non_increasing.iter().all(|&f| f));
}

#[test]
fn underresolved_grid_warns() {
    let grid = haar_quadrature_su2(2);
    let t = su2_fourier_on_grid(&grid, band_limited, 0, 8);
    assert!(!t.warnings.is_empty());
}

#[test]
fn exponential_of_trace_decays() {
    let phi = |u: &SU2Element| Complex64::new((2.0 * u.a().re).exp(), 0.0);
    // reference from a finer grid
    let fine = su2_fourier_on_grid(&haar_quadrature_su2(64), phi, 0, 24);
    let coarse = su2_fourier_on_grid(&haar_quadrature_su2(24), phi, 0, 24);
    for e in fine.entries() {
        let diff = Complex64::new(e.re, e.im) - coarse.get(e.twice_j, e.twice_m);
        assert!(diff.norm() < 1e-12);
    }
    let r = paley_wiener_report(&fine, &[0, 1, 2, 3, 4]);
    assert!(r.non_increasing.iter().all(|&f| f), "{r:?}");
    assert!(r.rows.len() >= 6);
}

#[test]
fn table_json_round_trip() {
    let t = su2_fourier(band_limited, 2, 8);
    let s = serde_json::to_string(&t).unwrap();
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert!(v["entries"][0]["twice_j"].is_u64());
    let back: FourierTableSU2 = serde_json::from_str(&s).unwrap();
    for e in t.entries() {
        assert_eq!(back.get(e.twice_j, e.twice_m), Complex64::new(e.re, e.im));
    }
    let bad =
        r#"{"p": 0, "band_limit": 4, "entries": [{"twice_j": 3, "twice_m": 1, "re": 1, "im": 0}]}"#;
    assert!(serde_json::from_str::<FourierTableSU2>(bad).is_err());
}
