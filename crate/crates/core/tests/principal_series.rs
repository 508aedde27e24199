use approx::{assert_abs_diff_eq, assert_relative_eq};
use lh_core::principal_series::*;
use lh_core::report::{EvaluationPath, LimitCheck, Track};
use lh_core::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn ln_fact(n: u32) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// `ε^{2(m+j+1+iτj/2)} · Γ(c)/(Γ(b)Γ(c−b)) ∫₀¹ t^{b−1}(1−t)^{c−b−1}(1−zt)^{−a} dt`
/// by composite Simpson.
fn euler_integral_coefficient(j: u32, m: i32, tau: Complex64, eps: f64) -> Complex64 {
    let jf = j as f64;
    let a = c(jf + 1.0, 0.0) + Complex64::i() * tau * jf / 2.0;
    let b = (j as i32 + m + 1) as u32;
    let cb = (j as i32 - m + 1) as u32;
    let z = 1.0 - eps.powi(4);
    let f = |t: f64| -> Complex64 {
        let base = 1.0 - z * t;
        t.powi(b as i32 - 1) * (1.0 - t).powi(cb as i32 - 1) * (-a * base.ln()).exp()
    };
    let n = 20_000;
    let h = 1.0 / n as f64;
    let mut s = f(0.0) + f(1.0);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(i as f64 * h);
    }
    let integral = s * h / 3.0;
    let norm = (ln_fact(2 * j + 1) - ln_fact(b - 1) - ln_fact(cb - 1)).exp();
    let power =
        (2.0 * (c(m as f64 + jf + 1.0, 0.0) + Complex64::i() * tau * jf / 2.0) * eps.ln()).exp();
    power * norm * integral
}

#[test]
fn first_level_closed_form() {
    // ε⁴ ₂F₁(2,2;4;−15) = 16·6∫₀¹ t(1−t)(1+15t)⁻² dt
    let expected = 32.0 * (17.0 * 16f64.ln() - 30.0) / 1125.0;
    let d = diagonal_coefficient(1, 0, c(0.0, 0.0), 2.0)
        .unwrap()
        .to_complex();
    assert_relative_eq!(d.re, expected, max_relative = 1e-14);
    assert!(d.im.abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn matches_euler_integral(
        j in 1u32..=6,
        mfrac in 0.0f64..1.0,
        tre in -1.0f64..1.0,
        tim in -0.3f64..0.3,
        eps in 0.6f64..1.6,
    ) {
        let m = ((2 * j + 1) as f64 * mfrac).floor() as i32 - j as i32;
        let tau = c(tre, tim);
        let expected = euler_integral_coefficient(j, m, tau, eps);
        let got = diagonal_coefficient(j, m, tau, eps).unwrap().to_complex();
        prop_assert!(rel(got, expected) < 1e-9, "j={} m={} got={} expected={}", j, m, got, expected);
    }
}

#[test]
fn general_formula_collapses_on_simple_labels() {
    for &tau in &[c(0.0, 0.0), c(0.3, 0.0), c(1.0, 0.2)] {
        for &eps in &[0.5, 2.0] {
            for j in 0..=6u32 {
                for m in -(j as i32)..=j as i32 {
                    let general = general_coefficient(
                        PrincipalSeriesLabel::simple(j, tau),
                        CoefficientIndex::diagonal(j, m),
                        eps,
                    )
                    .unwrap()
                    .to_complex();
                    let diag = diagonal_coefficient(j, m, tau, eps).unwrap().to_complex();
                    assert!(rel(general, diag) < 1e-9, "j={j} m={m} tau={tau} eps={eps}");
                }
            }
        }
    }
}

#[test]
fn general_formula_vanishes_off_diagonal() {
    for j in 0..=4u32 {
        for jp in 0..=4u32 {
            let lim = j.min(jp) as i32;
            for k in -lim..=lim {
                for m in -lim..=lim {
                    for n in -lim..=lim {
                        if m == n {
                            continue;
                        }
                        let v = general_coefficient(
                            PrincipalSeriesLabel::new(k, c(0.4, -0.1)),
                            CoefficientIndex::new(j, jp, m, n),
                            1.7,
                        )
                        .unwrap();
                        assert!(v.is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn zeroth_level_is_not_zero() {
    // ε²·₂F₁(1,1;2;1−ε⁴) = ε² ln(ε⁴)/(ε⁴−1)
    let eps: f64 = 2.0;
    let expected = eps * eps * eps.powi(4).ln() / (eps.powi(4) - 1.0);
    let d = diagonal_coefficient(0, 0, c(0.7, 0.0), eps)
        .unwrap()
        .to_complex();
    assert_abs_diff_eq!(d.re, expected, epsilon = 1e-14);
}

#[test]
fn index_errors() {
    assert!(matches!(
        diagonal_coefficient(1, 5, c(0.0, 0.0), 2.0),
        Err(Error::Index(_))
    ));
    assert!(matches!(
        diagonal_coefficient(3, 0, c(0.0, 0.0), -1.0),
        Err(Error::Domain(_))
    ));
}

#[test]
fn ratio_tail_at_real_tau_zero() {
    for &eps in &[0.5, 2.0] {
        for &m in &[0, 1, 3] {
            let r = ratio_test(m, c(0.0, 0.0), eps, 201).unwrap();
            let pred = r.predicted_limit.unwrap();
            assert_abs_diff_eq!(pred, 0.64, epsilon = 1e-15);
            assert_eq!(r.limit_check, Some(LimitCheck::Asserted));
            let dev = |j: u32| (r.ratio_at(j).unwrap() - pred).abs() / pred;
            assert!(dev(201) < 0.02, "eps={eps} m={m}: {}", dev(201));
            assert!(dev(201) < dev(51));
        }
    }
}

#[test]
fn predicted_limits_invert() {
    for &eps in &[0.3, 0.5, 2.0, 4.0, 0.7] {
        let a = ratio_test(0, c(0.0, 0.0), eps, 20).unwrap().predicted_limit;
        let b = ratio_test(0, c(0.0, 0.0), 1.0 / eps, 20)
            .unwrap()
            .predicted_limit;
        assert_eq!(a, b);
    }
}

#[test]
fn boundary_track_at_zero_m() {
    let r = boundary_ratio_test(Track::MEquals0, c(0.0, 0.0), 2.0, 201).unwrap();
    assert_abs_diff_eq!(r.predicted_limit.unwrap(), 0.64, epsilon = 1e-15);
    let ratio = r.ratio_at(201).unwrap();
    assert_relative_eq!(ratio, 0.64, max_relative = 0.03);
    let r = boundary_ratio_test(Track::MEqualsJ, c(0.0, 0.0), 2.0, 30).unwrap();
    assert_abs_diff_eq!(r.predicted_limit.unwrap(), 0.16, epsilon = 1e-15);
}

#[test]
fn complex_tau_comparison_is_informational() {
    let r = ratio_test(0, c(0.5, 0.2), 2.0, 40).unwrap();
    assert_eq!(r.limit_check, Some(LimitCheck::Informational));
}

#[test]
fn asymptotic_terms_are_flagged() {
    let cfg = RatioConfig {
        policy: EvalPolicy {
            exact_max_j: 64,
            ..Default::default()
        },
        ..Default::default()
    };
    let r = ratio_test_with(0, c(0.0, 0.0), 2.0, 80, &cfg).unwrap();
    assert_eq!(r.term(64).unwrap().path, EvaluationPath::Exact);
    assert_eq!(r.term(65).unwrap().path, EvaluationPath::Asymptotic);
    assert!(r.warnings.iter().any(|w| w.contains("j = 65")));
}

#[test]
fn report_is_independent_of_thread_count() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| ratio_test(1, c(0.5, 0.1), 0.5, 60).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn report_json_shape() {
    let r = ratio_test(0, c(0.0, 0.0), 2.0, 30).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    for key in [
        "params",
        "terms",
        "predicted_limit",
        "empirical_limit",
        "relative_deviation",
        "verdict",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let t = &v["terms"][1];
    for key in ["j", "log_mag", "phase", "ratio"] {
        assert!(t.get(key).is_some(), "missing terms.{key}");
    }
    assert!(v["verdict"].is_string());
}
