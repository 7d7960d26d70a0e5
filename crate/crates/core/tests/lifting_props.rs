use std::f64::consts::{PI, TAU};

use geocalc::lifting::{hankel, lift_hankel, lift_samples, ComplexSamples1D, HankelKind};
use geocalc::{Complex64, Error};
use proptest::prelude::*;

fn nodes(x0: f64, dx: f64, n: usize) -> Vec<f64> {
    (0..n).map(|j| x0 + j as f64 * dx).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lifting_projects_back_onto_the_samples(
        a in -2.0..2.0f64, b in -20.0..20.0f64, q in -3.0..3.0f64, x0 in -5.0..5.0f64,
    ) {
        // log z = a sin x + i(b x + q x²), sampled finely enough that
        // neighbouring phases differ by less than π.
        let dx = 0.5 / (b.abs() + 2.0 * q.abs() * 25.0 + 1.0);
        let log_z = move |x: f64| Complex64::new(a * x.sin(), b * x + q * x * x);
        let s = ComplexSamples1D::from_fn(nodes(x0, dx, 400), |x| log_z(x).exp()).unwrap();
        let lifted = lift_samples(&s, Some(log_z(x0).im)).unwrap();
        for ((x, w), z) in lifted.xs.iter().zip(&lifted.ws).zip(s.zs()) {
            prop_assert!((w.project() - z).norm() <= 1e-12 * z.norm());
            prop_assert!((w.argument() - log_z(*x).im).abs() <= 1e-9 * (1.0 + log_z(*x).im.abs()));
        }
    }

    #[test]
    fn sheet_shift_covariance(
        b in -10.0..10.0f64, theta0 in -10.0..10.0f64, k in -5i64..5,
    ) {
        let s = ComplexSamples1D::from_fn(nodes(0.0, 0.05, 100), |x| {
            Complex64::from_polar(1.0 + 0.5 * x.cos(), b * x)
        })
        .unwrap();
        let base = lift_samples(&s, Some(theta0)).unwrap();
        let shifted = lift_samples(&s, Some(theta0 + TAU * k as f64)).unwrap();
        for (u, v) in base.ws.iter().zip(&shifted.ws) {
            prop_assert_eq!(u.modulus(), v.modulus());
            prop_assert!((v.argument() - u.argument() - TAU * k as f64).abs() <= 1e-11);
        }
    }

    #[test]
    fn hankel_kinds_are_conjugate(n in 0u32..=1, x in 0.01..60.0f64) {
        let h1 = lift_hankel(HankelKind::First, n, x).unwrap();
        let h2 = lift_hankel(HankelKind::Second, n, x).unwrap();
        prop_assert_eq!(h1.modulus(), h2.modulus());
        prop_assert_eq!(h1.argument(), -h2.argument());
        let p = hankel(HankelKind::Second, n, x).unwrap();
        prop_assert!((h2.project() - p).norm() <= 1e-12 * p.norm());
    }
}

#[test]
fn hankel_lift_matches_dense_unwrapping() {
    for n in 0..=1 {
        let xs = nodes(0.05, 0.005, 12_000);
        let s = ComplexSamples1D::from_fn(xs.clone(), |x| hankel(HankelKind::First, n, x).unwrap())
            .unwrap();
        let dense = lift_samples(&s, None).unwrap();
        let pointwise: Vec<f64> = xs
            .iter()
            .map(|&x| lift_hankel(HankelKind::First, n, x).unwrap().argument())
            .collect();
        let offset = pointwise[0] - dense.ws[0].argument();
        let k = (offset / TAU).round();
        assert!((offset - TAU * k).abs() < 1e-9, "n = {n}: offset {offset}");
        for (p, d) in pointwise.iter().zip(dense.arguments()) {
            assert!((p - d - offset).abs() < 1e-8, "n = {n}");
        }
    }
}

#[test]
fn hankel_argument_is_continuous_and_increasing() {
    for n in 0..=1 {
        let mut last = lift_hankel(HankelKind::First, n, 0.1).unwrap().argument();
        for j in 1..20_000 {
            let x = 0.1 + j as f64 * 0.01;
            let a = lift_hankel(HankelKind::First, n, x).unwrap().argument();
            assert!(a > last && a - last < PI / 4.0, "n = {n}, x = {x}");
            last = a;
        }
        // H^{(1)} ~ e^{i(x − nπ/2 − π/4)} for large x
        let x = 200.0;
        let a = lift_hankel(HankelKind::First, n, x).unwrap().argument();
        let phase = x - n as f64 * PI / 2.0 - PI / 4.0;
        assert!((a - phase).abs() < 0.01, "n = {n}: {a} vs {phase}");
    }
}

#[test]
fn ambiguous_samples_are_rejected() {
    let s = ComplexSamples1D::new(
        vec![0.0, 1.0, 2.0],
        vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(1.0, 0.0),
        ],
    )
    .unwrap();
    assert!(matches!(
        lift_samples(&s, None),
        Err(Error::Lifting { index: 1, .. })
    ));
    assert!(ComplexSamples1D::new(vec![0.0, 0.0], vec![Complex64::new(1.0, 0.0); 2]).is_err());
    assert!(ComplexSamples1D::new(vec![0.0, 1.0], vec![Complex64::new(0.0, 0.0); 2]).is_err());
    assert!(lift_hankel(HankelKind::First, 0, 0.0).is_err());
    assert!(HankelKind::try_from(3).is_err());
}
