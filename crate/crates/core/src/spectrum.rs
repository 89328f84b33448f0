//! Closed-form results for reflection coefficients that do not depend on
//! frequency or angle.
//!
//! Spectral densities are dimensionless: multiplied by `hbar / a^3` they give
//! the pressure per unit angular frequency, `P_omega`. They depend on `omega`
//! and `a` only through `xi = 2 omega a / c`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::constants::{HBAR, SPEED_OF_LIGHT, ZETA4};
use crate::error::{CasimirError, Result};
use crate::polylog::{polylog, UNIT_DISC_SLACK};
use crate::quadrature::{adaptive_on, panel_edges, Tolerance};
use crate::reflection::Polarization;

/// Complex reflection coefficients, constant in frequency and angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantReflection {
    r_te: Complex64,
    r_tm: Complex64,
}

impl ConstantReflection {
    pub fn new(r_te: Complex64, r_tm: Complex64) -> Result<Self> {
        for (label, r) in [("r_te", r_te), ("r_tm", r_tm)] {
            if !(r.norm() <= 1.0 + UNIT_DISC_SLACK) {
                return Err(CasimirError::Invalid(format!(
                    "|{label}| = {} exceeds 1",
                    r.norm()
                )));
            }
        }
        Ok(Self { r_te, r_tm })
    }

    /// Equal real coefficients for both polarizations.
    pub fn real(r: f64) -> Result<Self> {
        Self::new(Complex64::new(r, 0.0), Complex64::new(r, 0.0))
    }

    pub fn get(&self, sigma: Polarization) -> Complex64 {
        match sigma {
            Polarization::TE => self.r_te,
            Polarization::TM => self.r_tm,
        }
    }

    pub fn te(&self) -> Complex64 {
        self.r_te
    }

    pub fn tm(&self) -> Complex64 {
        self.r_tm
    }

    /// Both coefficients multiplied by `factor` in `[0, 1]`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            r_te: self.r_te * factor,
            r_tm: self.r_tm * factor,
        }
    }
}

/// Plate separation at zero temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalSetup {
    separation: f64,
}

impl PhysicalSetup {
    pub fn new(separation: f64) -> Result<Self> {
        if !(separation > 0.0 && separation.is_finite()) {
            return Err(CasimirError::Invalid(format!(
                "plate separation must be positive, got {separation}"
            )));
        }
        Ok(Self { separation })
    }

    /// Separation in meters.
    pub fn separation(&self) -> f64 {
        self.separation
    }

    pub fn temperature(&self) -> f64 {
        0.0
    }

    /// `xi = 2 omega a / c`
    pub fn xi(&self, omega: f64) -> f64 {
        2.0 * omega * self.separation / SPEED_OF_LIGHT
    }

    pub fn omega(&self, xi: f64) -> f64 {
        xi * SPEED_OF_LIGHT / (2.0 * self.separation)
    }

    /// `hbar / a^3`: converts a dimensionless density to Pa·s/rad.
    pub fn density_unit(&self) -> f64 {
        HBAR / self.separation.powi(3)
    }

    /// `hbar c / a^4` in Pa.
    pub fn pressure_unit(&self) -> f64 {
        HBAR * SPEED_OF_LIGHT / self.separation.powi(4)
    }
}

/// One point of the pressure spectrum, in units of `hbar / a^3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSample {
    pub xi: f64,
    /// Propagating-wave density, indexed by [`Polarization::index`].
    pub density_pw: [f64; 2],
    /// Evanescent-wave density, indexed by [`Polarization::index`].
    pub density_ew: [f64; 2],
}

impl SpectralSample {
    pub fn zero(xi: f64) -> Self {
        Self {
            xi,
            density_pw: [0.0; 2],
            density_ew: [0.0; 2],
        }
    }

    pub fn total(&self) -> f64 {
        self.density_pw[0] + self.density_pw[1] + self.density_ew[0] + self.density_ew[1]
    }

    pub fn propagating(&self) -> f64 {
        self.density_pw[0] + self.density_pw[1]
    }

    pub fn evanescent(&self) -> f64 {
        self.density_ew[0] + self.density_ew[1]
    }
}

const INV_16PI2: f64 = 1.0 / (16.0 * PI * PI);

/// The `xi`-dependent part of the propagating density:
/// `-(1/16 pi^2) [-xi^2 Im Li1(u) - 2 xi Re Li2(u) + 2 Im Li3(u)]`, `u = r^2 e^{i xi}`.
pub fn oscillating_density(r: &ConstantReflection, xi: f64, sigma: Polarization) -> Result<f64> {
    if !(xi >= 0.0) {
        return Err(CasimirError::Domain(format!("xi must be >= 0, got {xi}")));
    }
    let r = r.get(sigma);
    let u = r * r * Complex64::from_polar(1.0, xi);
    if u.norm() == 0.0 {
        return Ok(0.0);
    }
    let li1 = polylog(1, u)?;
    let li2 = polylog(2, u)?;
    let li3 = polylog(3, u)?;
    Ok(-INV_16PI2 * (-xi * xi * li1.im - 2.0 * xi * li2.re + 2.0 * li3.im))
}

/// The `xi`-independent term of the propagating density,
/// `-(1/16 pi^2) (-2 Im Li3(r^2))`.
pub fn static_propagating_term(r: &ConstantReflection, sigma: Polarization) -> Result<f64> {
    let r = r.get(sigma);
    Ok(-INV_16PI2 * (-2.0 * polylog(3, r * r)?.im))
}

/// Propagating-wave spectral density for one polarization.
pub fn propagating_density(r: &ConstantReflection, xi: f64, sigma: Polarization) -> Result<f64> {
    Ok(oscillating_density(r, xi, sigma)? + static_propagating_term(r, sigma)?)
}

/// Evanescent-wave spectral density, `-(1/16 pi^2) 2 Im Li3(r^2)`, independent of `xi`.
pub fn evanescent_density(r: &ConstantReflection, sigma: Polarization) -> Result<f64> {
    let r = r.get(sigma);
    Ok(-INV_16PI2 * 2.0 * polylog(3, r * r)?.im)
}

/// Both densities for both polarizations.
pub fn total_density(r: &ConstantReflection, xi: f64) -> Result<SpectralSample> {
    let mut sample = SpectralSample::zero(xi);
    for sigma in Polarization::ALL {
        let k = sigma.index();
        if k == 1 && r.tm() == r.te() {
            sample.density_pw[1] = sample.density_pw[0];
            sample.density_ew[1] = sample.density_ew[0];
            continue;
        }
        sample.density_pw[k] = propagating_density(r, xi, sigma)?;
        sample.density_ew[k] = evanescent_density(r, sigma)?;
    }
    Ok(sample)
}

fn sum_re_li4(r: &ConstantReflection) -> f64 {
    Polarization::ALL
        .iter()
        .map(|&s| {
            let r = r.get(s);
            polylog(4, r * r).expect("|r| <= 1 by construction").re
        })
        .sum()
}

/// `-(3 hbar c / 16 pi^2 a^4) sum_sigma Re Li4(r_sigma^2)`.
pub fn constant_r_pressure(r: &ConstantReflection, setup: &PhysicalSetup) -> f64 {
    -3.0 * INV_16PI2 * setup.pressure_unit() * sum_re_li4(r)
}

/// Contribution of one polarization to [`constant_r_pressure`].
pub fn constant_r_pressure_polarized(
    r: &ConstantReflection,
    setup: &PhysicalSetup,
    sigma: Polarization,
) -> f64 {
    let r = r.get(sigma);
    -3.0 * INV_16PI2 * setup.pressure_unit() * polylog(4, r * r).expect("|r| <= 1").re
}

/// `-(hbar c / 16 pi^2 a^3) sum_sigma Re Li4(r_sigma^2)`, in J/m².
pub fn constant_r_free_energy(r: &ConstantReflection, setup: &PhysicalSetup) -> f64 {
    -INV_16PI2 * setup.pressure_unit() * setup.separation() * sum_re_li4(r)
}

/// Perfect mirrors: `-hbar c pi^2 / (240 a^4)`.
pub fn ideal_casimir_pressure(setup: &PhysicalSetup) -> f64 {
    // 6 zeta(4) / 16 pi^2 == pi^2 / 240, written through the same constant as
    // `constant_r_pressure` so the two agree exactly at r = 1.
    -6.0 * INV_16PI2 * setup.pressure_unit() * ZETA4
}

/// Pressure with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureEstimate {
    pub value: f64,
    pub error: f64,
}

/// Integrates [`total_density`] with `r -> r e^{-delta xi}` over `[0, xi_max]`
/// and converts to Pa.
pub fn regularized_spectrum_pressure(
    r: &ConstantReflection,
    setup: &PhysicalSetup,
    delta: f64,
    xi_max: f64,
) -> Result<f64> {
    regularized_spectrum_estimate(r, setup, delta, xi_max).map(|e| e.value)
}

/// [`regularized_spectrum_pressure`] with its quadrature error.
pub fn regularized_spectrum_estimate(
    r: &ConstantReflection,
    setup: &PhysicalSetup,
    delta: f64,
    xi_max: f64,
) -> Result<PressureEstimate> {
    if !(delta > 0.0) {
        return Err(CasimirError::Domain(format!("delta must be > 0, got {delta}")));
    }
    if !(xi_max * delta >= 50.0) {
        return Err(CasimirError::Domain(format!(
            "xi_max = {xi_max} leaves a non-negligible tail; need xi_max >= 50/delta"
        )));
    }
    let edges = panel_edges(0.0, xi_max, PI / 4.0, &[]);
    let tol = Tolerance::relative(1e-10)
        .with_abs(1e-10)
        .with_max_intervals(edges.len() + 20_000);
    let mut failure = None;
    let est = adaptive_on(
        |xi: f64| {
            let damped = r.scaled((-delta * xi).exp());
            match total_density(&damped, xi) {
                Ok(s) => s.total(),
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        },
        &edges,
        1,
        tol,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    // P = int P_omega d omega = (hbar/a^3)(c/2a) int density d xi
    let scale = 0.5 * setup.pressure_unit();
    if !est.converged {
        return Err(CasimirError::Accuracy {
            estimate: scale * est.value,
            error: scale * est.error,
        });
    }
    Ok(PressureEstimate {
        value: scale * est.value,
        error: scale * est.error,
    })
}

/// Polynomial (Richardson) extrapolation of `(h_i, v_i)` to `h = 0`.
/// Returns the extrapolated value and the change from the next-lower order.
pub fn richardson(steps: &[f64], values: &[f64]) -> (f64, f64) {
    assert_eq!(steps.len(), values.len());
    assert!(!steps.is_empty());
    // Neville's algorithm evaluated at 0.
    let n = steps.len();
    let mut table: Vec<f64> = values.to_vec();
    let mut previous = table[n - 1];
    for level in 1..n {
        previous = table[n - 1];
        for i in (level..n).rev() {
            let (hi, hj) = (steps[i - level], steps[i]);
            table[i] = (hi * table[i] - hj * table[i - 1]) / (hi - hj);
        }
    }
    let best = table[n - 1];
    (best, (best - previous).abs())
}

/// Default regularization sequence.
pub const DEFAULT_DELTAS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

/// Regularized pressure at each `delta`, extrapolated to `delta -> 0`.
pub fn extrapolated_spectrum_pressure(
    r: &ConstantReflection,
    setup: &PhysicalSetup,
    deltas: &[f64],
) -> Result<PressureEstimate> {
    let mut values = Vec::with_capacity(deltas.len());
    let mut quad_error: f64 = 0.0;
    for &delta in deltas {
        let est = regularized_spectrum_estimate(r, setup, delta, 50.0 / delta)?;
        values.push(est.value);
        quad_error = quad_error.max(est.error);
    }
    let (value, extrapolation_error) = richardson(deltas, &values);
    Ok(PressureEstimate {
        value,
        error: extrapolation_error + quad_error,
    })
}
