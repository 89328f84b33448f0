use std::f64::consts::PI;

use casimir_core::constants::{HBAR, SPEED_OF_LIGHT};
use casimir_core::reflection::Polarization;
use casimir_core::spectrum::{
    constant_r_free_energy, constant_r_pressure, evanescent_density, ideal_casimir_pressure,
    oscillating_density, propagating_density, regularized_spectrum_pressure, static_propagating_term, total_density,
    ConstantReflection, PhysicalSetup,
};
use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use proptest::prelude::*;

fn setup(a: f64) -> PhysicalSetup {
    PhysicalSetup::new(a).unwrap()
}

fn disc_point() -> impl Strategy<Value = Complex64> {
    (0.0..=1.0f64, -PI..PI).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

/// Composite Gauss-Legendre on `n` equal panels.
fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let rule = GaussLegendre::new(40).unwrap();
    let h = (b - a) / n as f64;
    (0..n)
        .map(|i| rule.integrate(a + i as f64 * h, a + (i + 1) as f64 * h, &f))
        .sum()
}

/// `u / (1 - u)` with `u = r^2 e^{i p xi}` for complex `p`.
fn cavity(r: Complex64, p: Complex64, xi: f64) -> Complex64 {
    let u = r * r * (Complex64::i() * p * xi).exp();
    u / (1.0 - u)
}

#[test]
fn casimir_limit_at_100nm() {
    let s = setup(100e-9);
    let p = constant_r_pressure(&ConstantReflection::real(1.0).unwrap(), &s);
    let direct = -HBAR * SPEED_OF_LIGHT * PI * PI / (240.0 * 1e-28);
    assert!((p / direct - 1.0).abs() < 1e-10);
    assert!((p + 13.00).abs() < 0.01);
    assert_eq!(p, ideal_casimir_pressure(&s));
}

#[test]
fn half_reflectivity_against_series() {
    let li4: f64 = (1..=60).map(|n| 0.25f64.powi(n) / (n as f64).powi(4)).sum();
    let s = setup(100e-9);
    let ratio = constant_r_pressure(&ConstantReflection::real(0.5).unwrap(), &s)
        / ideal_casimir_pressure(&s);
    assert!((ratio - li4 / (PI.powi(4) / 90.0)).abs() < 1e-12);
    assert!((ratio - 0.23479).abs() < 1e-5);
}

#[test]
fn separation_scaling() {
    let r = ConstantReflection::new(Complex64::new(0.6, 0.2), Complex64::new(0.9, -0.1)).unwrap();
    let base = setup(100e-9);
    let (p0, f0) = (constant_r_pressure(&r, &base), constant_r_free_energy(&r, &base));
    for a in [50e-9, 200e-9, 400e-9] {
        let s = setup(a);
        let k = a / 100e-9;
        assert!((constant_r_pressure(&r, &s) * k.powi(4) / p0 - 1.0).abs() < 1e-13);
        assert!((constant_r_free_energy(&r, &s) * k.powi(3) / f0 - 1.0).abs() < 1e-13);
    }
}

#[test]
fn propagating_branch_against_p_integration() {
    // density_pw = (xi^3 / 16 pi^2) Re int_0^1 p^2 u/(1-u) dp
    let cases = [
        Complex64::new(0.9, 0.0),
        Complex64::from_polar(0.8, PI / 6.0),
        Complex64::new(-0.3, 0.7),
    ];
    for r in cases {
        let refl = ConstantReflection::new(r, r).unwrap();
        for xi in [0.5f64, 2.0, 7.0, 13.0, 29.0] {
            let oracle = xi.powi(3) / (16.0 * PI * PI)
                * integrate(|p| p * p * cavity(r, Complex64::new(p, 0.0), xi).re, 0.0, 1.0, 64);
            let v = propagating_density(&refl, xi, Polarization::TE).unwrap();
            assert!(
                (v - oracle).abs() <= 1e-10 * (1.0 + oracle.abs()),
                "r = {r}, xi = {xi}: {v} vs {oracle}"
            );
        }
    }
}

#[test]
fn evanescent_branch_against_q_integration() {
    // density_ew = -(1/16 pi^2) Im int_0^inf s^2 u/(1-u) ds, p = i s / xi
    let r = Complex64::from_polar(0.8, PI / 6.0);
    let refl = ConstantReflection::new(r, r).unwrap();
    let oracle = -1.0 / (16.0 * PI * PI)
        * integrate(|s| s * s * cavity(r, Complex64::new(0.0, s), 1.0).im, 0.0, 60.0, 30);
    let v = evanescent_density(&refl, Polarization::TE).unwrap();
    assert!((v - oracle).abs() < 1e-12, "{v} vs {oracle}");

    let li3: Complex64 = (1..=400)
        .map(|n| Complex64::from_polar(0.64f64.powi(n), n as f64 * PI / 3.0) / (n as f64).powi(3))
        .sum();
    assert!((v + li3.im / (8.0 * PI * PI)).abs() < 1e-15);
}

#[test]
fn real_reflection_has_no_evanescent_part() {
    let r = ConstantReflection::real(0.7).unwrap();
    for s in Polarization::ALL {
        assert_eq!(evanescent_density(&r, s).unwrap(), 0.0);
        assert_eq!(static_propagating_term(&r, s).unwrap(), 0.0);
    }
    assert_eq!(total_density(&ConstantReflection::real(0.0).unwrap(), 3.0).unwrap().total(), 0.0);
    assert_eq!(total_density(&r, 0.0).unwrap().total(), 0.0);
}

#[test]
fn oscillation_envelope_grows_as_xi_squared() {
    let r = ConstantReflection::real(0.9).unwrap();
    let mut logs = Vec::new();
    for n in 2..20 {
        let peak = (0..400)
            .map(|k| {
                let xi = 2.0 * PI * (n as f64 + k as f64 / 400.0);
                total_density(&r, xi).unwrap().total().abs()
            })
            .fold(0.0, f64::max);
        logs.push(((2.0 * PI * (n as f64 + 0.5)).ln(), peak.ln()));
    }
    let m = logs.len() as f64;
    let (sx, sy) = logs.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let slope = logs.iter().map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / logs.iter().map(|(x, _)| (x - mx).powi(2)).sum::<f64>();
    assert!((1.9..=2.1).contains(&slope), "envelope exponent {slope}");
}

#[test]
fn regularized_integral_against_closed_form_per_step() {
    // Term by term, int_0^inf xi^3 e^{-2 n delta xi} e^{i n p xi} d xi = 6 / (n w)^4 with
    // w = 2 delta - i p, and the contour integral of p^2 / w^4 from p = 1 to i inf is
    // elementary, so P(delta) = K(delta) P(0) with
    // K = Re(i [-1/w0 + 2 delta / w0^2 - 4 delta^2 / (3 w0^3)]), w0 = 2 delta - i.
    let s = setup(100e-9);
    for r in [0.5, 0.8] {
        let refl = ConstantReflection::real(r).unwrap();
        for delta in [1e-2, 5e-3] {
            let v = regularized_spectrum_pressure(&refl, &s, delta, 50.0 / delta).unwrap();
            let w0 = Complex64::new(2.0 * delta, -1.0);
            let k = (Complex64::i()
                * (-1.0 / w0 + 2.0 * delta / (w0 * w0) - 4.0 * delta * delta / (3.0 * w0 * w0 * w0)))
                .re;
            let oracle = k * constant_r_pressure(&refl, &s);
            assert!((v / oracle - 1.0).abs() < 1e-6, "r = {r}, delta = {delta}: {v} vs {oracle}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pressure_is_minus_energy_gradient(te in disc_point(), tm in disc_point(), a in 20e-9..2e-6f64) {
        let r = ConstantReflection::new(te, tm).unwrap();
        prop_assume!(constant_r_pressure(&r, &setup(a)).abs() > 0.0);
        let h = 1e-4 * a;
        let fd = -(constant_r_free_energy(&r, &setup(a + h)) - constant_r_free_energy(&r, &setup(a - h)))
            / (2.0 * h);
        let p = constant_r_pressure(&r, &setup(a));
        prop_assert!((fd / p - 1.0).abs() < 1e-6, "{} vs {}", fd, p);
    }

    #[test]
    fn magnitude_increases_with_reflectivity(r1 in 0.0..=1.0f64, r2 in 0.0..=1.0f64) {
        prop_assume!((r1 - r2).abs() > 1e-9);
        let s = setup(100e-9);
        let p = |r: f64| constant_r_pressure(&ConstantReflection::real(r).unwrap(), &s).abs();
        let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
        prop_assert!(p(hi) > p(lo));
    }

    #[test]
    fn evanescent_cancels_static_term(r in disc_point(), xi in 0.0..100.0f64) {
        let refl = ConstantReflection::new(r, r).unwrap();
        let ew = evanescent_density(&refl, Polarization::TM).unwrap();
        let st = static_propagating_term(&refl, Polarization::TM).unwrap();
        prop_assert!((ew + st).abs() <= 1e-12 * (1.0 + ew.abs()));
        // Only the xi-dependent part of the propagating density survives.
        let total = total_density(&refl, xi).unwrap().total();
        let oscillating: f64 = Polarization::ALL
            .iter()
            .map(|&s| oscillating_density(&refl, xi, s).unwrap())
            .sum();
        prop_assert!((total - oscillating).abs() <= 1e-12 * (1.0 + total.abs()));
    }

    #[test]
    fn density_depends_on_xi_only(r in 0.0..0.99f64, omega in 1e13..1e16f64, k in 0.5..4.0f64) {
        let refl = ConstantReflection::real(r).unwrap();
        let (s1, s2) = (setup(100e-9), setup(100e-9 * k));
        let xi1 = s1.xi(omega);
        let xi2 = s2.xi(omega / k);
        prop_assert!((xi1 / xi2 - 1.0).abs() < 1e-14);
        let d1 = total_density(&refl, xi1).unwrap().total();
        let d2 = total_density(&refl, xi2).unwrap().total();
        prop_assert!((d1 - d2).abs() <= 1e-12 * (1.0 + d1.abs()));
    }
}
