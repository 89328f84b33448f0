use std::f64::consts::PI;

use casimir_core::constants::SPEED_OF_LIGHT;
use casimir_core::dielectric::{DielectricModel, DrudeModel, PlasmaModel, WindowSpec};
use casimir_core::lifshitz::{
    effective_reflection, material_spectral_density, pressure_closed_form,
    pressure_imag_frequency, pressure_real_frequency, window_force_comparison,
    window_force_difference, Cavity, Method, Plate, QuadratureSpec, WindowedPlates,
};
use casimir_core::spectrum::{
    constant_r_pressure, constant_r_pressure_polarized, ideal_casimir_pressure, total_density,
    ConstantReflection, PhysicalSetup,
};
use casimir_core::reflection::Polarization;
use casimir_core::CasimirError;
use proptest::prelude::*;

const OMEGA1: f64 = 7.5e14;
const OMEGA2: f64 = 9.4e15;

fn setup() -> PhysicalSetup {
    PhysicalSetup::new(100e-9).unwrap()
}

fn quad() -> QuadratureSpec {
    QuadratureSpec::for_setup(&setup())
}

fn gold() -> DielectricModel {
    DielectricModel::Drude(DrudeModel::gold())
}

/// A coarse real-frequency grid for regression checks that compare two runs.
fn coarse() -> QuadratureSpec {
    let c_over_a = SPEED_OF_LIGHT / 100e-9;
    QuadratureSpec {
        p_nodes: 16,
        omega_panel_width: PI / 16.0 * c_over_a,
        omega_max: 20.0 * c_over_a,
        cutoff_delta: 0.05,
        ..quad()
    }
}

#[test]
fn surrogate_imag_matches_closed_form() {
    let s = setup();
    for r in [0.3, 0.8, 0.99] {
        let refl = ConstantReflection::real(r).unwrap();
        let p = pressure_imag_frequency(&Cavity::surrogate(refl), &s, &quad()).unwrap();
        let exact = constant_r_pressure(&refl, &s);
        assert!((p.value / exact - 1.0).abs() < 1e-6, "r = {r}: {} vs {exact}", p.value);
        assert!((p.value - exact).abs() <= p.error_estimate.max(1e-6 * exact.abs()));
        for sigma in Polarization::ALL {
            let part = constant_r_pressure_polarized(&refl, &s, sigma);
            assert!((p.by_polarization[sigma.index()] / part - 1.0).abs() < 1e-6);
        }
    }
}

#[test]
fn near_perfect_conductor_approaches_casimir() {
    let s = setup();
    let ideal = ideal_casimir_pressure(&s);
    let deficit = |eps: f64| {
        let p = pressure_imag_frequency(&Cavity::symmetric(DielectricModel::constant(eps)), &s, &quad())
            .unwrap();
        1.0 - p.value / ideal
    };
    let gaps: Vec<f64> = [1e4, 1e6, 1e8].into_iter().map(deficit).collect();
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2] && gaps[2] > 0.0, "{gaps:?}");
    assert!(deficit(1e12).abs() < 1e-3);
}

#[test]
fn surrogate_real_frequency_matches_closed_form() {
    // A wider regularization step keeps the frequency range short.
    let s = setup();
    let c_over_a = SPEED_OF_LIGHT / 100e-9;
    let q = QuadratureSpec {
        omega_max: 750.0 * c_over_a,
        cutoff_delta: 0.08,
        ..quad()
    };
    let refl = ConstantReflection::real(0.8).unwrap();
    let cavity = Cavity::surrogate(refl);
    let real = pressure_real_frequency(&cavity, &s, &q).unwrap();
    let imag = pressure_imag_frequency(&cavity, &s, &q).unwrap();
    let exact = constant_r_pressure(&refl, &s);
    assert!((real.value / exact - 1.0).abs() < 0.01, "{} vs {exact}", real.value);
    assert!((real.value - imag.value).abs() <= real.error_estimate + imag.error_estimate);
    let b = real.breakdown.unwrap();
    assert!((b.propagating + b.evanescent - real.value).abs() <= real.error_estimate);
}

#[test]
fn gold_pressure_is_about_six_pascal() {
    let p = pressure_imag_frequency(&Cavity::symmetric(gold()), &setup(), &quad()).unwrap();
    assert!(p.value < 0.0);
    assert!((p.value.abs() / 6.0 - 1.0).abs() < 0.25, "{}", p.value);
}

#[test]
fn imaginary_axis_is_stable_under_refinement() {
    let q = quad();
    let cavity = Cavity::symmetric(gold());
    let p = pressure_imag_frequency(&cavity, &setup(), &q).unwrap();
    let fine = pressure_imag_frequency(&cavity, &setup(), &q.refined()).unwrap();
    assert!((p.value - fine.value).abs() < p.error_estimate);
}

#[test]
fn swapping_plates_is_bit_identical() {
    let cavity = Cavity::new(
        Plate::Material(gold()),
        Plate::Material(DielectricModel::Plasma(PlasmaModel::gold())),
    );
    let swapped = cavity.swapped();
    let s = setup();
    assert_eq!(
        pressure_imag_frequency(&cavity, &s, &quad()).unwrap(),
        pressure_imag_frequency(&swapped, &s, &quad()).unwrap()
    );
    for omega in [3e14, 4e15, 1.2e16, 2.5e16] {
        assert_eq!(
            material_spectral_density(&cavity, &s, omega, &quad()).unwrap(),
            material_spectral_density(&swapped, &s, omega, &quad()).unwrap()
        );
    }
}

#[test]
fn near_perfect_conductor_density_matches_closed_form() {
    let s = setup();
    let cavity = Cavity::symmetric(DielectricModel::constant(1e12));
    let perfect = ConstantReflection::real(1.0).unwrap();
    for xi in [1.0, 3.0, 5.0, 6.0] {
        let sample = material_spectral_density(&cavity, &s, s.omega(xi), &quad()).unwrap();
        let exact = total_density(&perfect, xi).unwrap().total();
        assert!(
            (sample.total() / exact - 1.0).abs() < 1e-3,
            "xi = {xi}: {} vs {exact}",
            sample.total()
        );
    }
}

#[test]
fn vacuum_gap_and_lossless_plates() {
    let s = setup();
    let vacuum = Cavity::symmetric(DielectricModel::vacuum());
    assert_eq!(material_spectral_density(&vacuum, &s, 1e15, &quad()).unwrap().total(), 0.0);
    let plasma = Cavity::symmetric(DielectricModel::Plasma(PlasmaModel::gold()));
    for omega in [1.0e16, 1.5e16, 2.5e16] {
        let sample = material_spectral_density(&plasma, &s, omega, &quad()).unwrap();
        assert!(sample.evanescent().abs() < 1e-12, "{omega:e}: {}", sample.evanescent());
    }
}

#[test]
fn empty_window_changes_nothing() {
    let spec = WindowSpec::sharp(OMEGA1, OMEGA2, 0.0).unwrap();
    let d = window_force_difference(&gold(), &spec, &setup(), Method::ImagFrequency, &quad()).unwrap();
    assert_eq!(d, 0.0);
}

#[test]
fn imaginary_window_shift_is_small() {
    let spec = WindowSpec::sharp(OMEGA1, OMEGA2, 1.0).unwrap();
    let d = window_force_comparison(
        &gold(),
        &spec,
        &setup(),
        Method::ImagFrequency,
        WindowedPlates::Both,
        &quad(),
    )
    .unwrap();
    assert!((d.difference / d.base.value).abs() < 0.1);
}

#[test]
fn one_or_both_windowed_plates_agree_for_sharp_edges() {
    let spec = WindowSpec::sharp(OMEGA1, OMEGA2, 1.0).unwrap();
    let run = |plates| {
        window_force_comparison(&gold(), &spec, &setup(), Method::RealFrequency, plates, &coarse())
            .unwrap()
    };
    let (both, first) = (run(WindowedPlates::Both), run(WindowedPlates::First));
    assert_eq!(both.difference, first.difference);
    assert_eq!(both.windowed, first.windowed);
}

#[test]
fn unsupported_combinations() {
    let s = setup();
    let smooth = WindowSpec::smooth(OMEGA1, OMEGA2, 1.0, 10.0).unwrap();
    assert!(matches!(
        window_force_difference(&gold(), &smooth, &s, Method::ImagFrequency, &quad()),
        Err(CasimirError::Unsupported(_))
    ));
    let windowed = DielectricModel::windowed(gold(), smooth, 100e-9).unwrap();
    assert!(matches!(
        pressure_imag_frequency(&Cavity::symmetric(windowed), &s, &quad()),
        Err(CasimirError::Unsupported(_))
    ));
    let sharp = WindowSpec::sharp(OMEGA1, OMEGA2, 1.0).unwrap();
    assert!(window_force_difference(&gold(), &sharp, &s, Method::ClosedForm, &quad()).is_err());
    let bad = QuadratureSpec {
        omega_panel_width: 1.01 * PI / 8.0 * SPEED_OF_LIGHT / 100e-9,
        ..quad()
    };
    assert!(bad.validate(&s).is_err());
}

#[test]
fn effective_reflection_of_gold_lies_in_unit_interval() {
    for a in [10e-9, 100e-9, 1e-6] {
        let s = PhysicalSetup::new(a).unwrap();
        let q = QuadratureSpec::for_setup(&s);
        let p = pressure_imag_frequency(&Cavity::symmetric(gold()), &s, &q).unwrap();
        let r = effective_reflection(p.by_polarization, &s).unwrap();
        assert!(r.iter().all(|r| *r > 0.0 && *r < 1.0), "a = {a:e}: {r:?}");
    }
    let s = setup();
    let too_strong = 2.0 * ideal_casimir_pressure(&s);
    assert!(matches!(
        effective_reflection([too_strong, too_strong], &s),
        Err(CasimirError::Range(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn effective_reflection_roundtrip(te in 0.0..=1.0f64, tm in 0.0..=1.0f64) {
        let s = setup();
        let refl = ConstantReflection::new(te.into(), tm.into()).unwrap();
        let p = pressure_closed_form(&refl, &s);
        let r = effective_reflection(p.by_polarization, &s).unwrap();
        prop_assert!((r[0] - te).abs() < 1e-8 && (r[1] - tm).abs() < 1e-8, "{:?}", r);
    }
}
