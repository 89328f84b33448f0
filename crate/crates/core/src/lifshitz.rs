//! Lifshitz pressure for dispersive plates, on the real and the imaginary
//! frequency axis.
//!
//! On the real axis the pressure spectrum is
//!
//! ```text
//! P_omega = -(hbar omega^3 / 2 pi^2 c^3) Re int_C dp p^2 sum_sigma F_sigma,
//! F = R e^{i p xi} / (1 - R e^{i p xi}),   R = r1 r2,   xi = 2 omega a / c,
//! ```
//!
//! where `C` runs from `p = 1` down to `0` and then up the imaginary axis
//! (`p = i q`). After the Wick rotation `omega = i zeta` the integrand is
//! smooth, positive and exponentially decaying:
//!
//! ```text
//! P = -(hbar / 2 pi^2 c^3) int_0^inf d zeta zeta^3 int_1^inf dp p^2
//!     sum_sigma R e^{-2 p zeta a / c} / (1 - R e^{-2 p zeta a / c}).
//! ```
//!
//! The two plates may differ; only the product `r1 r2` enters, so swapping
//! them leaves every result bit-identical.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::constants::{HBAR, SPEED_OF_LIGHT, ZETA4};
use crate::dielectric::{DielectricModel, WindowMode, WindowSpec};
use crate::error::{CasimirError, Result};
use crate::polylog::inverse_polylog4;
use crate::quadrature::{adaptive_on, fixed_panels_componentwise, panel_edges, Tolerance};
use crate::reflection::{fresnel_imag_axis, fresnel_pair, ContourPoint, Polarization};
use crate::spectrum::{
    constant_r_pressure_polarized, richardson, ConstantReflection, PhysicalSetup, SpectralSample,
};

const INV_16PI2: f64 = 1.0 / (16.0 * PI * PI);

/// `|1 - R e^{...}|` below this is reported as a cavity resonance.
pub const RESONANCE_GUARD: f64 = 1e-12;

/// Upper limit of the decay variable `s = q xi` (and of `2 p zeta a / c`).
const DECAY_LIMIT: f64 = 64.0;

/// Absolute floor for inner integrals, whose natural scale is one.
const INNER_ABS_TOL: f64 = 1e-14;

/// Extra subintervals an inner adaptive integral may create.
const INNER_REFINEMENTS: usize = 4000;

/// Regularization steps used for the `delta -> 0` extrapolation.
const DAMPINGS: usize = 3;

/// Relative error above which a real-frequency result is not accepted.
pub const REAL_FREQUENCY_ACCEPTANCE: f64 = 0.05;

/// Numerical parameters shared by the engines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Minimum number of nodes per contour branch (and per imaginary-axis `p`).
    pub p_nodes: usize,
    /// Width of the fixed real-frequency panels, rad/s.
    pub omega_panel_width: f64,
    /// Upper end of the real-frequency integral, rad/s.
    pub omega_max: f64,
    /// Imaginary-frequency scale `zeta_0`, rad/s.
    pub zeta_scale: f64,
    /// Target relative tolerance of the adaptive integrals.
    pub rel_tol: f64,
    /// Largest regularization step; the sequence is `delta, delta/2, delta/4`.
    pub cutoff_delta: f64,
}

impl QuadratureSpec {
    /// Defaults for a given separation.
    pub fn for_setup(setup: &PhysicalSetup) -> Self {
        let c_over_a = SPEED_OF_LIGHT / setup.separation();
        Self {
            p_nodes: 30,
            // Eight times finer than the widest admissible panel: the Drude
            // spectrum has cavity-mode structure that coarser panels alias.
            omega_panel_width: PI / 64.0 * c_over_a,
            omega_max: 100.0 * c_over_a,
            zeta_scale: 0.5 * c_over_a,
            rel_tol: 1e-6,
            cutoff_delta: 1e-2,
        }
    }

    /// Halved panel width and doubled node count.
    pub fn refined(&self) -> Self {
        Self {
            p_nodes: 2 * self.p_nodes,
            omega_panel_width: 0.5 * self.omega_panel_width,
            ..*self
        }
    }

    pub fn validate(&self, setup: &PhysicalSetup) -> Result<()> {
        if self.p_nodes < 16 {
            return Err(CasimirError::Invalid(format!(
                "p_nodes must be at least 16, got {}",
                self.p_nodes
            )));
        }
        let widest = PI / 8.0 * SPEED_OF_LIGHT / setup.separation();
        if !(self.omega_panel_width > 0.0 && self.omega_panel_width <= widest * (1.0 + 1e-12)) {
            return Err(CasimirError::Invalid(format!(
                "omega_panel_width must lie in (0, {widest:e}] rad/s at this separation, got {:e}",
                self.omega_panel_width
            )));
        }
        for (name, v) in [
            ("omega_max", self.omega_max),
            ("zeta_scale", self.zeta_scale),
            ("rel_tol", self.rel_tol),
            ("cutoff_delta", self.cutoff_delta),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CasimirError::Invalid(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    fn initial_splits(&self) -> usize {
        self.p_nodes.div_ceil(15)
    }

    fn deltas(&self) -> [f64; DAMPINGS] {
        let d = self.cutoff_delta;
        [d, 0.5 * d, 0.25 * d]
    }
}

/// One plate: a dielectric half-space or fixed reflection coefficients.
#[derive(Debug, Clone, PartialEq)]
pub enum Plate {
    Material(DielectricModel),
    /// Reflection coefficients held constant in frequency and angle; Fresnel
    /// formulas are bypassed.
    Surrogate(ConstantReflection),
}

impl Plate {
    fn check_imag_axis(&self) -> Result<()> {
        match self {
            Self::Material(m) if !m.supports_imag_axis() => Err(CasimirError::Unsupported(
                "model has no imaginary-frequency continuation (smooth window or complex constant)"
                    .into(),
            )),
            _ => Ok(()),
        }
    }

    fn features(&self) -> Vec<f64> {
        match self {
            Self::Material(m) => m.features(),
            Self::Surrogate(_) => Vec::new(),
        }
    }
}

/// Two parallel plates facing each other across the gap.
#[derive(Debug, Clone, PartialEq)]
pub struct Cavity {
    plates: [Plate; 2],
}

impl Cavity {
    pub fn new(first: Plate, second: Plate) -> Self {
        Self {
            plates: [first, second],
        }
    }

    /// Both plates made of the same material.
    pub fn symmetric(model: DielectricModel) -> Self {
        Self::new(Plate::Material(model.clone()), Plate::Material(model))
    }

    /// Both plates with the same constant reflection coefficients.
    pub fn surrogate(r: ConstantReflection) -> Self {
        Self::new(Plate::Surrogate(r), Plate::Surrogate(r))
    }

    pub fn first(&self) -> &Plate {
        &self.plates[0]
    }

    pub fn second(&self) -> &Plate {
        &self.plates[1]
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.plates[1].clone(), self.plates[0].clone())
    }

    fn faces(&self, omega: f64) -> Result<[Face; 2]> {
        Ok([Face::at(&self.plates[0], omega)?, Face::at(&self.plates[1], omega)?])
    }

    fn features(&self) -> Vec<f64> {
        let mut f = self.plates[0].features();
        f.extend(self.plates[1].features());
        f
    }
}

/// A plate at one real frequency.
#[derive(PartialEq)]
enum Face {
    Eps(Complex64),
    Fixed([Complex64; 2]),
}

impl Face {
    fn at(plate: &Plate, omega: f64) -> Result<Self> {
        Ok(match plate {
            Plate::Material(m) => Self::Eps(m.permittivity_real_axis(omega)?),
            Plate::Surrogate(r) => Self::Fixed([r.te(), r.tm()]),
        })
    }

    fn reflect(&self, point: ContourPoint) -> Result<[Complex64; 2]> {
        match self {
            Self::Eps(eps) => fresnel_pair(*eps, point),
            Self::Fixed(r) => Ok(*r),
        }
    }

    /// Where `p^2 + eps' - 1` changes sign on `(0, 1)`.
    fn propagating_breaks(&self, out: &mut Vec<f64>) {
        if let Self::Eps(eps) = self {
            if eps.re > 0.0 && eps.re < 1.0 {
                out.push((1.0 - eps.re).sqrt());
            }
        }
    }

    /// Surface-plasmon position and dielectric branch point in `s = q xi`.
    fn evanescent_breaks(&self, xi: f64, out: &mut Vec<f64>) {
        if let Self::Eps(eps) = self {
            if eps.re < -1.0 {
                out.push(xi / (-eps.re - 1.0).sqrt());
            } else if eps.re > 1.0 {
                out.push(xi * (eps.re - 1.0).sqrt());
            }
        }
    }
}

fn round_trip(faces: &[Face; 2], point: ContourPoint) -> Result<[Complex64; 2]> {
    let a = faces[0].reflect(point)?;
    let b = faces[1].reflect(point)?;
    Ok([a[0] * b[0], a[1] * b[1]])
}

/// `u / (1 - u)` with `u = R * phase * damping`.
fn cavity_term(rr: Complex64, phase: Complex64, damping: f64) -> Result<Complex64> {
    let u = rr * phase * damping;
    let den = Complex64::new(1.0, 0.0) - u;
    if den.norm() < RESONANCE_GUARD {
        return Err(CasimirError::Resonance(format!(
            "|1 - r1 r2 e^(i p xi)| = {:e} at a cavity resonance",
            den.norm()
        )));
    }
    Ok(u / den)
}

/// Densities `[pw_te, pw_tm, ew_te, ew_tm]` for each damping factor, with the
/// inner quadrature error in density units.
struct DensityParts {
    parts: [[f64; 4]; DAMPINGS],
    error: f64,
    converged: bool,
}

fn density_parts(
    faces: &[Face; 2],
    xi: f64,
    quad: &QuadratureSpec,
    damping: [f64; DAMPINGS],
) -> Result<DensityParts> {
    let splits = quad.initial_splits();
    let mut failure = None;

    let mut p_breaks = Vec::new();
    for f in faces {
        f.propagating_breaks(&mut p_breaks);
    }
    let width = (1.0 / splits as f64).min(PI / (4.0 * xi));
    let edges = panel_edges(0.0, 1.0, width, &p_breaks);
    let tol = Tolerance::relative(quad.rel_tol)
        .with_abs(INNER_ABS_TOL)
        .with_max_intervals(edges.len() + INNER_REFINEMENTS);
    let pw = adaptive_on(
        |p: f64| match propagating_integrand(faces, xi, p, &damping) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                [0.0; 2 * DAMPINGS]
            }
        },
        &edges,
        1,
        tol,
    );
    if let Some(e) = failure {
        return Err(e);
    }

    let mut s_breaks = vec![0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0];
    for f in faces {
        f.evanescent_breaks(xi, &mut s_breaks);
    }
    let edges = panel_edges(0.0, DECAY_LIMIT, DECAY_LIMIT, &s_breaks);
    let tol = Tolerance::relative(quad.rel_tol)
        .with_abs(INNER_ABS_TOL)
        .with_max_intervals(splits * edges.len() + INNER_REFINEMENTS);
    let ew = adaptive_on(
        |s: f64| match evanescent_integrand(faces, xi, s, &damping) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                [0.0; 2 * DAMPINGS]
            }
        },
        &edges,
        splits,
        tol,
    );
    if let Some(e) = failure {
        return Err(e);
    }

    let pw_scale = xi.powi(3) * INV_16PI2;
    let mut parts = [[0.0; 4]; DAMPINGS];
    for (k, part) in parts.iter_mut().enumerate() {
        for sigma in 0..2 {
            part[sigma] = pw_scale * pw.value[2 * k + sigma];
            part[2 + sigma] = -INV_16PI2 * ew.value[2 * k + sigma];
        }
    }
    Ok(DensityParts {
        parts,
        error: pw_scale * pw.error + INV_16PI2 * ew.error,
        converged: pw.converged && ew.converged,
    })
}

fn propagating_integrand(
    faces: &[Face; 2],
    xi: f64,
    p: f64,
    damping: &[f64; DAMPINGS],
) -> Result<[f64; 2 * DAMPINGS]> {
    let rr = round_trip(faces, ContourPoint::Propagating(p))?;
    let phase = Complex64::from_polar(1.0, p * xi);
    let mut out = [0.0; 2 * DAMPINGS];
    for (k, &d) in damping.iter().enumerate() {
        for sigma in 0..2 {
            out[2 * k + sigma] = p * p * cavity_term(rr[sigma], phase, d)?.re;
        }
    }
    Ok(out)
}

// With p = i q and s = q xi, the evanescent branch contributes
// -(1/16 pi^2) Im int_0^inf s^2 F ds to the density.
fn evanescent_integrand(
    faces: &[Face; 2],
    xi: f64,
    s: f64,
    damping: &[f64; DAMPINGS],
) -> Result<[f64; 2 * DAMPINGS]> {
    let rr = round_trip(faces, ContourPoint::Evanescent(s / xi))?;
    let phase = Complex64::new((-s).exp(), 0.0);
    let mut out = [0.0; 2 * DAMPINGS];
    for (k, &d) in damping.iter().enumerate() {
        for sigma in 0..2 {
            out[2 * k + sigma] = s * s * cavity_term(rr[sigma], phase, d)?.im;
        }
    }
    Ok(out)
}

/// Pressure spectrum of a cavity at one real frequency, in units of
/// `hbar / a^3`, without regularization.
pub fn material_spectral_density(
    cavity: &Cavity,
    setup: &PhysicalSetup,
    omega: f64,
    quad: &QuadratureSpec,
) -> Result<SpectralSample> {
    if !(omega > 0.0) {
        return Err(CasimirError::Domain(format!(
            "real frequency must be positive, got {omega}"
        )));
    }
    let xi = setup.xi(omega);
    let faces = cavity.faces(omega)?;
    let d = density_parts(&faces, xi, quad, [1.0; DAMPINGS])?;
    let part = d.parts[0];
    let sample = SpectralSample {
        xi,
        density_pw: [part[0], part[1]],
        density_ew: [part[2], part[3]],
    };
    if !d.converged {
        return Err(CasimirError::Accuracy {
            estimate: sample.total(),
            error: d.error,
        });
    }
    Ok(sample)
}

/// Which route produced a pressure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    RealFrequency,
    ImagFrequency,
    ClosedForm,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Self::RealFrequency => "real",
            Self::ImagFrequency => "imag",
            Self::ClosedForm => "closed",
        }
    }
}

/// Split of a real-frequency pressure between the two contour branches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breakdown {
    pub propagating: f64,
    pub evanescent: f64,
}

/// A pressure in Pa with the method that produced it and an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureResult {
    pub value: f64,
    pub method: Method,
    /// Propagating/evanescent split; real-frequency results only.
    pub breakdown: Option<Breakdown>,
    /// Contributions of TE and TM, indexed by [`Polarization::index`].
    pub by_polarization: [f64; 2],
    pub error_estimate: f64,
}

/// Closed-form pressure for constant reflection coefficients.
pub fn pressure_closed_form(r: &ConstantReflection, setup: &PhysicalSetup) -> PressureResult {
    let by_polarization = Polarization::ALL.map(|s| constant_r_pressure_polarized(r, setup, s));
    let value = by_polarization[0] + by_polarization[1];
    PressureResult {
        value,
        method: Method::ClosedForm,
        breakdown: None,
        by_polarization,
        error_estimate: 1e-14 * value.abs(),
    }
}

/// Integrated components for one or two cavities on a shared frequency grid.
struct RealFrequencyRun {
    /// `[pw_te, pw_tm, ew_te, ew_tm]` in Pa for each regularization step.
    base: [[f64; 4]; DAMPINGS],
    /// Perturbed minus base, same layout.
    difference: [[f64; 4]; DAMPINGS],
    base_error: [[f64; 4]; DAMPINGS],
    difference_error: [[f64; 4]; DAMPINGS],
    /// Integrated inner (p-integral) errors, Pa.
    base_inner: f64,
    difference_inner: f64,
}

const RUN_WIDTH: usize = 8 * DAMPINGS + 2;

fn real_frequency_run(
    base: &Cavity,
    perturbed: Option<&Cavity>,
    setup: &PhysicalSetup,
    quad: &QuadratureSpec,
) -> Result<RealFrequencyRun> {
    quad.validate(setup)?;
    let mut features = base.features();
    if let Some(p) = perturbed {
        features.extend(p.features());
    }
    let edges = panel_edges(0.0, quad.omega_max, quad.omega_panel_width, &features);
    let deltas = quad.deltas();
    let mut failure = None;
    let evaluate = |omega: f64| -> Result<[f64; RUN_WIDTH]> {
        let xi = setup.xi(omega);
        let damping = deltas.map(|d| (-2.0 * d * xi).exp());
        let base_faces = base.faces(omega)?;
        let b = density_parts(&base_faces, xi, quad, damping)?;
        let mut out = [0.0; RUN_WIDTH];
        for k in 0..DAMPINGS {
            for c in 0..4 {
                out[4 * k + c] = b.parts[k][c];
            }
        }
        out[8 * DAMPINGS] = b.error;
        if let Some(p) = perturbed {
            let faces = p.faces(omega)?;
            // Outside a sharp window both cavities coincide exactly.
            if faces == base_faces {
                return Ok(out);
            }
            let w = density_parts(&faces, xi, quad, damping)?;
            for k in 0..DAMPINGS {
                for c in 0..4 {
                    out[4 * DAMPINGS + 4 * k + c] = w.parts[k][c] - b.parts[k][c];
                }
            }
            out[8 * DAMPINGS + 1] = w.error + b.error;
        }
        Ok(out)
    };
    let (values, errors) = fixed_panels_componentwise(
        |omega: f64| match evaluate(omega) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                [0.0; RUN_WIDTH]
            }
        },
        &edges,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let unit = setup.density_unit();
    let unpack = |src: &[f64; RUN_WIDTH], offset: usize| {
        let mut out = [[0.0; 4]; DAMPINGS];
        for (k, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = unit * src[offset + 4 * k + c];
            }
        }
        out
    };
    Ok(RealFrequencyRun {
        base: unpack(&values, 0),
        difference: unpack(&values, 4 * DAMPINGS),
        base_error: unpack(&errors, 0),
        difference_error: unpack(&errors, 4 * DAMPINGS),
        base_inner: unit * values[8 * DAMPINGS],
        difference_inner: unit * values[8 * DAMPINGS + 1],
    })
}

/// Extrapolates per-step components to zero regularization.
fn extrapolate_components(
    steps: &[f64; DAMPINGS],
    values: &[[f64; 4]; DAMPINGS],
    errors: &[[f64; 4]; DAMPINGS],
    inner: f64,
) -> PressureResult {
    let mut comps = [0.0; 4];
    let mut error = inner;
    for c in 0..4 {
        let column: Vec<f64> = values.iter().map(|row| row[c]).collect();
        let (v, change) = richardson(steps, &column);
        comps[c] = v;
        let panel = errors.iter().map(|row| row[c]).fold(0.0, f64::max);
        error += change + panel;
    }
    PressureResult {
        value: comps.iter().sum(),
        method: Method::RealFrequency,
        breakdown: Some(Breakdown {
            propagating: comps[0] + comps[1],
            evanescent: comps[2] + comps[3],
        }),
        by_polarization: [comps[0] + comps[2], comps[1] + comps[3]],
        error_estimate: error,
    }
}

fn accept_real(result: PressureResult) -> Result<PressureResult> {
    if result.error_estimate > REAL_FREQUENCY_ACCEPTANCE * result.value.abs()
        && result.error_estimate > f64::MIN_POSITIVE
    {
        return Err(CasimirError::Accuracy {
            estimate: result.value,
            error: result.error_estimate,
        });
    }
    Ok(result)
}

/// Pressure from the real-frequency integral, regularized by
/// `r -> r e^{-delta xi}` and extrapolated to `delta -> 0`.
pub fn pressure_real_frequency(
    cavity: &Cavity,
    setup: &PhysicalSetup,
    quad: &QuadratureSpec,
) -> Result<PressureResult> {
    let run = real_frequency_run(cavity, None, setup, quad)?;
    accept_real(extrapolate_components(
        &quad.deltas(),
        &run.base,
        &run.base_error,
        run.base_inner,
    ))
}

/// Pressure from the Wick-rotated integral.
///
/// With `zeta = zeta_0 x v` and `p = 1/v` the integral becomes
/// `-(hbar zeta_0^4 / 2 pi^2 c^3) int_0^1 dv int_0^inf dx x^3 sum_sigma F`
/// with `F = R e^{-k x} / (1 - R e^{-k x})`, `k = 2 zeta_0 a / c`.
pub fn pressure_imag_frequency(
    cavity: &Cavity,
    setup: &PhysicalSetup,
    quad: &QuadratureSpec,
) -> Result<PressureResult> {
    quad.validate(setup)?;
    for plate in &cavity.plates {
        plate.check_imag_axis()?;
    }
    let zeta0 = quad.zeta_scale;
    let k = 2.0 * zeta0 * setup.separation() / SPEED_OF_LIGHT;
    let x_edges: Vec<f64> = [0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, DECAY_LIMIT]
        .iter()
        .map(|s| s / k)
        .collect();
    let inner_tol = Tolerance::relative(0.1 * quad.rel_tol)
        .with_abs(INNER_ABS_TOL)
        .with_max_intervals(x_edges.len() + INNER_REFINEMENTS);
    let mut failure = None;

    let reflect = |plate: &Plate, zeta: f64, p: f64| -> Result<[Complex64; 2]> {
        Ok(match plate {
            Plate::Material(m) => {
                let [te, tm] = fresnel_imag_axis(m.permittivity_imag_axis(zeta)?, p);
                [Complex64::new(te, 0.0), Complex64::new(tm, 0.0)]
            }
            Plate::Surrogate(r) => [r.te(), r.tm()],
        })
    };
    let integrand = |x: f64, v: f64| -> Result<[f64; 2]> {
        let zeta = zeta0 * x * v;
        let p = 1.0 / v;
        let a = reflect(&cavity.plates[0], zeta, p)?;
        let b = reflect(&cavity.plates[1], zeta, p)?;
        let phase = Complex64::new((-k * x).exp(), 0.0);
        let x3 = x * x * x;
        Ok([
            x3 * cavity_term(a[0] * b[0], phase, 1.0)?.re,
            x3 * cavity_term(a[1] * b[1], phase, 1.0)?.re,
        ])
    };
    let outer = adaptive_on(
        |v: f64| {
            let inner = adaptive_on(
                |x: f64| match integrand(x, v) {
                    Ok(val) => val,
                    Err(e) => {
                        failure.get_or_insert(e);
                        [0.0; 2]
                    }
                },
                &x_edges,
                1,
                inner_tol,
            );
            [inner.value[0], inner.value[1], inner.error]
        },
        &[0.0, 1.0],
        quad.initial_splits(),
        Tolerance::relative(quad.rel_tol).with_abs(INNER_ABS_TOL),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let prefactor = -HBAR * zeta0.powi(4) / (2.0 * PI * PI * SPEED_OF_LIGHT.powi(3));
    let by_polarization = [prefactor * outer.value[0], prefactor * outer.value[1]];
    let value = by_polarization[0] + by_polarization[1];
    let error_estimate = prefactor.abs() * (outer.error + outer.value[2]);
    if !outer.converged || error_estimate > 10.0 * quad.rel_tol * value.abs() {
        return Err(CasimirError::Accuracy {
            estimate: value,
            error: error_estimate,
        });
    }
    Ok(PressureResult {
        value,
        method: Method::ImagFrequency,
        breakdown: None,
        by_polarization,
        error_estimate,
    })
}

/// Constant reflection coefficients that reproduce per-polarization
/// pressures through the closed form.
pub fn effective_reflection(p_sigma: [f64; 2], setup: &PhysicalSetup) -> Result<[f64; 2]> {
    let scale = 3.0 * INV_16PI2 * setup.pressure_unit();
    let mut out = [0.0; 2];
    for (r, &p) in out.iter_mut().zip(p_sigma.iter()) {
        let mut y = -p / scale;
        // Absorb rounding at the ends of the admissible range.
        if y < 0.0 && y > -1e-12 * ZETA4 {
            y = 0.0;
        } else if y > ZETA4 && y < ZETA4 * (1.0 + 1e-12) {
            y = ZETA4;
        }
        if !(0.0..=ZETA4).contains(&y) {
            return Err(CasimirError::Range(format!(
                "pressure {p:e} Pa lies outside [perfect-mirror bound {:e}, 0] for one polarization",
                -scale * ZETA4
            )));
        }
        *r = inverse_polylog4(y)?.sqrt();
    }
    Ok(out)
}

/// Which plates carry the transparency window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowedPlates {
    Both,
    First,
}

/// Outcome of a window experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceDifference {
    pub base: PressureResult,
    pub windowed: PressureResult,
    /// `windowed - base`, Pa.
    pub difference: f64,
    pub error: f64,
}

/// `P(windowed) - P(unwindowed)` with the window on both plates.
pub fn window_force_difference(
    model: &DielectricModel,
    spec: &WindowSpec,
    setup: &PhysicalSetup,
    method: Method,
    quad: &QuadratureSpec,
) -> Result<f64> {
    window_force_comparison(model, spec, setup, method, WindowedPlates::Both, quad)
        .map(|d| d.difference)
}

/// Both pressures of a window experiment and their difference.
pub fn window_force_comparison(
    model: &DielectricModel,
    spec: &WindowSpec,
    setup: &PhysicalSetup,
    method: Method,
    plates: WindowedPlates,
    quad: &QuadratureSpec,
) -> Result<ForceDifference> {
    let windowed_model = DielectricModel::windowed(model.clone(), *spec, setup.separation())?;
    let base = Cavity::symmetric(model.clone());
    let windowed = match plates {
        WindowedPlates::Both => Cavity::symmetric(windowed_model),
        WindowedPlates::First => Cavity::new(
            Plate::Material(windowed_model),
            Plate::Material(model.clone()),
        ),
    };
    match method {
        Method::ImagFrequency => {
            if !matches!(model, DielectricModel::Drude(_)) || spec.mode() != WindowMode::Sharp {
                return Err(CasimirError::Unsupported(
                    "the imaginary-frequency window shift needs a sharp window on a Drude model"
                        .into(),
                ));
            }
            let b = pressure_imag_frequency(&base, setup, quad)?;
            let w = pressure_imag_frequency(&windowed, setup, quad)?;
            Ok(ForceDifference {
                base: b,
                windowed: w,
                difference: w.value - b.value,
                error: w.error_estimate + b.error_estimate,
            })
        }
        Method::RealFrequency => {
            let run = real_frequency_run(&base, Some(&windowed), setup, quad)?;
            let deltas = quad.deltas();
            let b = extrapolate_components(&deltas, &run.base, &run.base_error, run.base_inner);
            let d = extrapolate_components(
                &deltas,
                &run.difference,
                &run.difference_error,
                run.difference_inner,
            );
            let mut w = b;
            w.value += d.value;
            w.by_polarization = [
                b.by_polarization[0] + d.by_polarization[0],
                b.by_polarization[1] + d.by_polarization[1],
            ];
            if let (Some(bb), Some(db)) = (b.breakdown, d.breakdown) {
                w.breakdown = Some(Breakdown {
                    propagating: bb.propagating + db.propagating,
                    evanescent: bb.evanescent + db.evanescent,
                });
            }
            w.error_estimate = b.error_estimate + d.error_estimate;
            Ok(ForceDifference {
                base: b,
                windowed: w,
                difference: d.value,
                error: d.error_estimate,
            })
        }
        Method::ClosedForm => Err(CasimirError::Unsupported(
            "window experiments need a numerical method".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{constant_r_pressure, ideal_casimir_pressure};

    fn setup() -> PhysicalSetup {
        PhysicalSetup::new(100e-9).unwrap()
    }

    #[test]
    fn quadrature_validation() {
        let s = setup();
        let q = QuadratureSpec::for_setup(&s);
        assert!(q.validate(&s).is_ok());
        assert!(QuadratureSpec { p_nodes: 8, ..q }.validate(&s).is_err());
        let widest = PI / 8.0 * SPEED_OF_LIGHT / s.separation();
        let at_limit = QuadratureSpec { omega_panel_width: widest, ..q };
        assert!(at_limit.validate(&s).is_ok());
        let wide = QuadratureSpec { omega_panel_width: 1.01 * widest, ..q };
        assert!(wide.validate(&s).is_err());
    }

    #[test]
    fn vacuum_gap_has_no_pressure() {
        let s = setup();
        let q = QuadratureSpec::for_setup(&s);
        let cavity = Cavity::symmetric(DielectricModel::vacuum());
        let d = material_spectral_density(&cavity, &s, 1e15, &q).unwrap();
        assert_eq!(d.total(), 0.0);
        let p = pressure_imag_frequency(&cavity, &s, &q).unwrap();
        assert_eq!(p.value, 0.0);
    }

    #[test]
    fn imaginary_axis_reproduces_closed_form() {
        let s = setup();
        let q = QuadratureSpec::for_setup(&s);
        let r = ConstantReflection::real(0.8).unwrap();
        let p = pressure_imag_frequency(&Cavity::surrogate(r), &s, &q).unwrap();
        let exact = constant_r_pressure(&r, &s);
        assert!((p.value / exact - 1.0).abs() < 1e-6, "{}", p.value / exact - 1.0);
    }

    #[test]
    fn effective_reflection_endpoints() {
        let s = setup();
        let ideal = ideal_casimir_pressure(&s);
        let r = effective_reflection([0.5 * ideal, 0.5 * ideal], &s).unwrap();
        assert!((r[0] - 1.0).abs() < 1e-9 && (r[1] - 1.0).abs() < 1e-9);
        assert_eq!(effective_reflection([0.0, 0.0], &s).unwrap(), [0.0, 0.0]);
        assert!(matches!(
            effective_reflection([ideal, 0.0], &s),
            Err(CasimirError::Range(_))
        ));
    }

    #[test]
    fn resonance_is_reported() {
        let e = cavity_term(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), 1.0);
        assert!(matches!(e, Err(CasimirError::Resonance(_))));
    }
}
