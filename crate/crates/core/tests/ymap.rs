use lh_core::lie_group::SL2CElement;
use lh_core::principal_series::{general_coefficient, CoefficientIndex, PrincipalSeriesLabel};
use lh_core::report::Verdict;
use lh_core::wigner::{su2_fourier, FourierTableSU2};
use lh_core::ymap::*;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn synthetic_table(p: i32, band: u32, seed: f64) -> FourierTableSU2 {
    let mut t = FourierTableSU2::new(p, band);
    for tj in p.unsigned_abs()..=band {
        for tm in (-(tj as i32)..=tj as i32).step_by(2) {
            let x = seed + tj as f64 * 0.37 + tm as f64 * 0.11;
            t.insert(tj, tm, c(x.sin(), (1.3 * x).cos()) / (1.0 + tj as f64));
        }
    }
    t
}

#[test]
fn collapse_matches_full_double_sum() {
    let tau = c(0.3, 0.1);
    for &eps in &[0.5, 2.0] {
        for &p in &[0, 1, 2] {
            let table = synthetic_table(p, 6, 0.4);
            let req = YMapRequest::new(table.clone(), tau, YMapTarget::Epsilon(eps), 6);
            let report = ymap_apply(&req).unwrap();
            let mut sum = c(0.0, 0.0);
            for j in p.unsigned_abs()..=6 {
                let label = PrincipalSeriesLabel::simple(j, tau);
                let ji = j as i32;
                for m in -ji..=ji {
                    for n in -ji..=ji {
                        let d = table.get(j, m);
                        let coeff =
                            general_coefficient(label, CoefficientIndex::new(j, j, m, n), eps)
                                .unwrap()
                                .to_complex();
                        sum += d * coeff;
                    }
                }
                let got = report.partial_sum_at(j).unwrap();
                assert!(
                    (got - sum).norm() <= 1e-9 * sum.norm().max(1e-300),
                    "j={j}: {got} vs {sum}"
                );
            }
        }
    }
}

#[test]
fn unit_table_gives_zeroth_coefficient() {
    // ε²·₂F₁(1,1;2;1−ε⁴) = ε² ln(ε⁴)/(ε⁴−1)
    let eps: f64 = 2.0;
    let mut t = FourierTableSU2::new(0, 0);
    t.insert(0, 0, c(1.0, 0.0));
    let req = YMapRequest::new(t, c(0.3, 0.0), YMapTarget::Epsilon(eps), 0);
    let r = ymap_apply(&req).unwrap();
    assert_eq!(r.terms.len(), 1);
    let expected = eps * eps * eps.powi(4).ln() / (eps.powi(4) - 1.0);
    assert!((r.final_sum().unwrap() - c(expected, 0.0)).norm() < 1e-14);
}

#[test]
fn band_limited_table_converges() {
    let table = su2_fourier(|u| c((u.trace().re).exp(), 0.0), 0, 8);
    for &eps in &[0.5, 2.0] {
        let req = YMapRequest::new(table.clone(), c(0.3, 0.0), YMapTarget::Epsilon(eps), 200);
        let r = ymap_apply(&req).unwrap();
        assert_eq!(r.verdict, Verdict::Converged);
        assert!(r.cauchy_delta.unwrap() < 1e-6);
        assert!(r.warnings.iter().any(|w| w.contains("band")));
    }
}

#[test]
fn linear_in_the_table() {
    let a = synthetic_table(1, 7, 0.1);
    let b = synthetic_table(1, 5, 2.3);
    let k = c(-0.4, 1.2);
    let combo = a.add_scaled(&b, k);
    let run = |t: &FourierTableSU2| {
        ymap_apply(&YMapRequest::new(
            t.clone(),
            c(0.5, 0.0),
            YMapTarget::Epsilon(0.5),
            20,
        ))
        .unwrap()
        .partial_sums()
    };
    let (sa, sb, sc) = (run(&a), run(&b), run(&combo));
    for i in 0..sc.len() {
        let lin = sa[i] + k * sb[i];
        assert!((sc[i] - lin).norm() < 1e-12 * (1.0 + lin.norm()));
    }
}

#[test]
fn majorization_and_fourier_bound() {
    let table = synthetic_table(0, 8, 1.0);
    let req = YMapRequest::new(table.clone(), c(0.0, 0.0), YMapTarget::Epsilon(2.0), 40);
    let conv = ymap_convergence_report(&req).unwrap();
    assert!(conv.majorization_holds);
    assert_eq!(conv.checks.len(), 41);
    // the Fourier factor is a finite sum over the table
    assert!((conv.fourier_sum_bound - table.l1_norm()).abs() < 1e-12 * table.l1_norm());
    assert_eq!(conv.fourier_report.verdict, Verdict::Converged);
    assert!(
        (conv.product_bound - conv.fourier_sum_bound * conv.coefficient_sum_bound).abs() < 1e-9
    );
}

#[test]
fn group_element_target() {
    // [[2, 1+i], [0, 1/2]]
    let g = SL2CElement::from_reals(&[2.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.5, 0.0]).unwrap();
    let eps = lh_core::lie_group::epsilon_of(&g).unwrap();
    let table = synthetic_table(0, 4, 0.0);
    let a = ymap_apply(&YMapRequest::new(
        table.clone(),
        c(0.3, 0.0),
        YMapTarget::Element(g),
        12,
    ))
    .unwrap();
    let b = ymap_apply(&YMapRequest::new(
        table,
        c(0.3, 0.0),
        YMapTarget::Epsilon(eps),
        12,
    ))
    .unwrap();
    assert_eq!(a.final_sum(), b.final_sum());
}
