use std::f64::consts::PI;

use casimir_core::polylog::{eval_polylog, inverse_polylog4, polylog, PolylogOrder, UnitDiscArgument};
use casimir_core::CasimirError;
use num_complex::Complex64;
use proptest::prelude::*;

fn series(m: u32, z: Complex64, terms: usize) -> Complex64 {
    let mut power = z;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..=terms {
        sum += power / (n as f64).powi(m as i32);
        power *= z;
    }
    sum
}

fn disc_point() -> impl Strategy<Value = Complex64> {
    (0.0..=1.0f64, -PI..PI).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

#[test]
fn li4_at_one() {
    let v = polylog(4, Complex64::new(1.0, 0.0)).unwrap();
    assert!((v.re / (PI.powi(4) / 90.0) - 1.0).abs() < 1e-12);
    assert_eq!(v.im, 0.0);
}

#[test]
fn li4_quarter_against_series() {
    // Terms beyond n = 60 are below 0.25^61.
    let expected = series(4, Complex64::new(0.25, 0.0), 60).re;
    let v = polylog(4, Complex64::new(0.25, 0.0)).unwrap().re;
    assert!((v - expected).abs() < 1e-12 * expected, "{v:e} vs {expected:e}");
    assert!((v - 0.2541162).abs() < 1e-7);
}

#[test]
fn li1_is_minus_log() {
    let v = polylog(1, Complex64::new(0.5, 0.0)).unwrap();
    assert!((v.re - 2f64.ln()).abs() < 1e-15);
    let z = Complex64::new(0.3, -0.4);
    assert!((polylog(1, z).unwrap() - series(1, z, 200)).norm() < 1e-14);
}

#[test]
fn errors() {
    assert!(matches!(
        polylog(1, Complex64::new(1.0, 0.0)),
        Err(CasimirError::Divergence(_))
    ));
    assert!(matches!(
        polylog(2, Complex64::new(1.01, 0.0)),
        Err(CasimirError::Domain(_))
    ));
    assert!(PolylogOrder::new(5).is_err());
    assert!(UnitDiscArgument::new(Complex64::new(0.0, 1.1)).is_err());
    assert!(inverse_polylog4(-1e-3).is_err());
    assert!(inverse_polylog4(1.1).is_err());
}

#[test]
fn explicit_tolerance() {
    let z = UnitDiscArgument::new(Complex64::new(0.6, 0.2)).unwrap();
    let v = eval_polylog(PolylogOrder::THREE, z, 1e-14).unwrap();
    assert!((v - series(3, z.value(), 400)).norm() < 1e-14);
}

#[test]
fn unit_circle_against_long_sums() {
    const TERMS: usize = 1_000_000;
    for xi in [0.3, 1.0, 2.5, PI, 4.0, 6.0] {
        let mut sums = [Complex64::new(0.0, 0.0); 3];
        for n in 1..=TERMS {
            let nf = n as f64;
            let e = Complex64::from_polar(1.0, nf * xi);
            sums[0] += e / (nf * nf);
            sums[1] += e / (nf * nf * nf);
            sums[2] += e / (nf * nf * nf * nf);
        }
        let z = Complex64::from_polar(1.0, xi);
        for (m, oracle) in [2, 3, 4].into_iter().zip(sums) {
            let v = polylog(m, z).unwrap();
            assert!(
                (v - oracle).norm() < 1e-8,
                "Li{m}(e^(i {xi})) = {v} vs {oracle}"
            );
        }
    }
}

proptest! {
    #[test]
    fn conjugation_symmetry(m in 1u32..=4, z in disc_point()) {
        prop_assume!(m > 1 || (z - 1.0).norm() > 1e-3);
        let a = polylog(m, z.conj()).unwrap();
        let b = polylog(m, z).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-15 * (1.0 + b.norm()));
    }

    #[test]
    fn recursion_against_finite_differences(
        m in 2u32..=4,
        r in 0.01..=0.9f64,
        t in -PI..PI,
    ) {
        let z = Complex64::from_polar(r, t);
        let h = 1e-6;
        let up = polylog(m, z + h).unwrap();
        let down = polylog(m, z - h).unwrap();
        let lhs = z * (up - down) / (2.0 * h);
        let rhs = polylog(m - 1, z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-6 * rhs.norm(), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn matches_series_inside(m in 1u32..=4, r in 0.0..=0.9f64, t in -PI..PI) {
        let z = Complex64::from_polar(r, t);
        let v = polylog(m, z).unwrap();
        let oracle = series(m, z, 400);
        prop_assert!((v - oracle).norm() <= 1e-13 * (1.0 + oracle.norm()));
    }

    #[test]
    fn li4_increasing_and_invertible(x in 0.0..=1.0f64, dx in 1e-6..0.5f64) {
        let li = |x: f64| polylog(4, Complex64::new(x, 0.0)).unwrap().re;
        let y = li(x);
        let back = inverse_polylog4(y).unwrap();
        prop_assert!((back - x).abs() <= 1e-9);
        let x2 = (x + dx).min(1.0);
        if x2 > x {
            prop_assert!(li(x2) > y);
        }
    }
}
