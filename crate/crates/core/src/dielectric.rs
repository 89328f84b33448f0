//! Permittivity models on the real and imaginary frequency axes.
//!
//! All frequencies are angular frequencies in rad/s. On the real axis a model
//! returns the complex `eps(omega) = 1 + chi(omega)`; on the imaginary axis the
//! real `eps(i zeta)` obtained from the Kramers–Kronig relation
//!
//! ```text
//! eps(i zeta) = 1 + (2/pi) int_0^inf omega eps''(omega) / (omega^2 + zeta^2) d omega.
//! ```

use std::f64::consts::{FRAC_2_PI, PI};
use std::io::BufRead;

use num_complex::Complex64;

use crate::constants::{ev_to_rad_per_s, rad_per_s_to_ev, SPEED_OF_LIGHT};
use crate::error::{CasimirError, Result};
use crate::quadrature::{adaptive, gauss_kronrod, Tolerance};

/// Lossy free-electron metal, `eps = 1 - omega_p^2 / (omega^2 + i omega nu)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeModel {
    omega_p: f64,
    nu: f64,
}

impl DrudeModel {
    pub fn new(omega_p: f64, nu: f64) -> Result<Self> {
        if !(omega_p > 0.0 && omega_p.is_finite()) {
            return Err(CasimirError::Invalid(format!(
                "plasma frequency must be positive, got {omega_p}"
            )));
        }
        if !(nu >= 0.0 && nu.is_finite()) {
            return Err(CasimirError::Invalid(format!(
                "relaxation frequency must be non-negative, got {nu}"
            )));
        }
        Ok(Self { omega_p, nu })
    }

    /// Parameters given as photon energies in eV.
    pub fn from_ev(omega_p_ev: f64, nu_ev: f64) -> Result<Self> {
        Self::new(ev_to_rad_per_s(omega_p_ev), ev_to_rad_per_s(nu_ev))
    }

    /// Gold: `omega_p = 9 eV`, `nu = 35 meV`.
    pub fn gold() -> Self {
        Self::from_ev(9.0, 0.035).expect("valid constants")
    }

    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn real_axis(&self, omega: f64) -> Complex64 {
        let wp2 = self.omega_p * self.omega_p;
        Complex64::new(1.0, 0.0) - wp2 / Complex64::new(omega * omega, omega * self.nu)
    }

    pub fn imag_axis(&self, zeta: f64) -> f64 {
        1.0 + self.omega_p * self.omega_p / (zeta * (zeta + self.nu))
    }

    /// `(2/pi) int_{omega1}^{omega2} omega eps''(omega) / (omega^2 + zeta^2)`
    /// in closed form: the imaginary-axis change caused by removing the
    /// absorption inside the band.
    pub fn band_kk_shift(&self, omega1: f64, omega2: f64, zeta: f64) -> f64 {
        if !(omega2 > omega1) || self.nu == 0.0 {
            return 0.0;
        }
        let nu = self.nu;
        let wp2 = self.omega_p * self.omega_p;
        let h = zeta - nu;
        if h.abs() < 0.1 * nu {
            // The partial-fraction form cancels near zeta = nu; integrate
            // F(zeta) = int d omega / ((omega^2 + nu^2)(omega^2 + zeta^2))
            // directly with omega = nu tan(theta).
            let (t1, t2) = ((omega1 / nu).atan(), (omega2 / nu).atan());
            let f = |t: f64| {
                let w = nu * t.tan();
                1.0 / (nu * (w * w + zeta * zeta))
            };
            let est = adaptive(f, t1, t2, Tolerance::relative(1e-14));
            return FRAC_2_PI * wp2 * nu * est.value;
        }
        let a = atan_difference(omega2 / nu, omega1 / nu);
        let b = atan_difference(omega2 / zeta, omega1 / zeta);
        wp2 / (zeta * zeta - nu * nu) * FRAC_2_PI * (a - nu / zeta * b)
    }
}

/// `atan(x) - atan(y)` for `x, y >= 0`, accurate when `x ~ y`.
fn atan_difference(x: f64, y: f64) -> f64 {
    ((x - y) / (1.0 + x * y)).atan()
}

/// Lossless free-electron metal, `eps = 1 - omega_p^2 / omega^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlasmaModel {
    omega_p: f64,
}

impl PlasmaModel {
    pub fn new(omega_p: f64) -> Result<Self> {
        if !(omega_p > 0.0 && omega_p.is_finite()) {
            return Err(CasimirError::Invalid(format!(
                "plasma frequency must be positive, got {omega_p}"
            )));
        }
        Ok(Self { omega_p })
    }

    pub fn from_ev(omega_p_ev: f64) -> Result<Self> {
        Self::new(ev_to_rad_per_s(omega_p_ev))
    }

    pub fn gold() -> Self {
        Self::from_ev(9.0).expect("valid constant")
    }

    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }

    pub fn real_axis(&self, omega: f64) -> Complex64 {
        Complex64::new(1.0 - (self.omega_p / omega).powi(2), 0.0)
    }

    pub fn imag_axis(&self, zeta: f64) -> f64 {
        1.0 + (self.omega_p / zeta).powi(2)
    }
}

/// What a tabulated model does below its first sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowExtrapolation {
    /// Drude tail fitted to the two lowest samples.
    DrudeTail,
    Reject,
}

/// What a tabulated model does above its last sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HighExtrapolation {
    /// `eps' - 1 ~ omega^-2`, `eps'' ~ omega^-3`, continuous at the last sample.
    PowerLaw,
    Reject,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableSample {
    /// rad/s
    pub omega: f64,
    pub eps_re: f64,
    pub eps_im: f64,
}

/// Optical data interpolated linearly in `(ln omega, eps')` and
/// `(ln omega, ln eps'')`.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedModel {
    samples: Vec<TableSample>,
    low: LowExtrapolation,
    high: HighExtrapolation,
    tail: Option<DrudeModel>,
}

pub const MIN_TABLE_SAMPLES: usize = 8;

impl TabulatedModel {
    pub fn new(
        samples: Vec<TableSample>,
        low: LowExtrapolation,
        high: HighExtrapolation,
    ) -> Result<Self> {
        if samples.len() < MIN_TABLE_SAMPLES {
            return Err(CasimirError::Invalid(format!(
                "optical table needs at least {MIN_TABLE_SAMPLES} samples, got {}",
                samples.len()
            )));
        }
        for (i, s) in samples.iter().enumerate() {
            if !(s.omega > 0.0 && s.omega.is_finite()) {
                return Err(CasimirError::Invalid(format!(
                    "row {}: frequency must be positive and finite",
                    i + 1
                )));
            }
            if !(s.eps_im >= 0.0) || !s.eps_re.is_finite() || !s.eps_im.is_finite() {
                return Err(CasimirError::Invalid(format!(
                    "row {}: eps'' = {} violates passivity (must be >= 0)",
                    i + 1,
                    s.eps_im
                )));
            }
            if i > 0 && !(s.omega > samples[i - 1].omega) {
                return Err(CasimirError::Invalid(format!(
                    "row {}: frequencies must be strictly increasing",
                    i + 1
                )));
            }
        }
        let tail = fit_drude_tail(&samples[0], &samples[1]);
        Ok(Self {
            samples,
            low,
            high,
            tail,
        })
    }

    /// Samples a Drude model at the given frequencies.
    pub fn synthesize(model: &DrudeModel, omegas: &[f64]) -> Result<Self> {
        let samples = omegas
            .iter()
            .map(|&omega| {
                let eps = model.real_axis(omega);
                TableSample {
                    omega,
                    eps_re: eps.re,
                    eps_im: eps.im,
                }
            })
            .collect();
        Self::new(
            samples,
            LowExtrapolation::DrudeTail,
            HighExtrapolation::PowerLaw,
        )
    }

    pub fn samples(&self) -> &[TableSample] {
        &self.samples
    }

    pub fn low_policy(&self) -> LowExtrapolation {
        self.low
    }

    pub fn high_policy(&self) -> HighExtrapolation {
        self.high
    }

    pub fn real_axis(&self, omega: f64) -> Result<Complex64> {
        let first = self.samples[0];
        let last = *self.samples.last().expect("non-empty");
        if omega < first.omega {
            return match (self.low, self.tail) {
                (LowExtrapolation::Reject, _) => Err(CasimirError::Range(format!(
                    "omega = {omega:e} rad/s is below the table start {:e}",
                    first.omega
                ))),
                (LowExtrapolation::DrudeTail, Some(drude)) => Ok(drude.real_axis(omega)),
                (LowExtrapolation::DrudeTail, None) => {
                    Ok(Complex64::new(first.eps_re, first.eps_im))
                }
            };
        }
        if omega > last.omega {
            return match self.high {
                HighExtrapolation::Reject => Err(CasimirError::Range(format!(
                    "omega = {omega:e} rad/s is above the table end {:e}",
                    last.omega
                ))),
                HighExtrapolation::PowerLaw => {
                    let x = last.omega / omega;
                    Ok(Complex64::new(
                        1.0 + (last.eps_re - 1.0) * x * x,
                        last.eps_im * x * x * x,
                    ))
                }
            };
        }
        let i = match self
            .samples
            .binary_search_by(|s| s.omega.total_cmp(&omega))
        {
            Ok(i) => {
                let s = self.samples[i];
                return Ok(Complex64::new(s.eps_re, s.eps_im));
            }
            Err(i) => i - 1,
        };
        Ok(interpolate(&self.samples[i], &self.samples[i + 1], omega))
    }

    fn eps_im(&self, omega: f64) -> f64 {
        self.real_axis(omega).map(|e| e.im).unwrap_or(0.0)
    }

    /// `(2/pi) int omega eps''/(omega^2 + zeta^2)` over `[lo, hi]`, restricted
    /// to the tabulated range, integrating each interval in `ln omega`.
    fn kk_table(&self, lo: f64, hi: f64, zeta: f64) -> f64 {
        let mut total = 0.0;
        for pair in self.samples.windows(2) {
            let a = pair[0].omega.max(lo);
            let b = pair[1].omega.min(hi);
            if b <= a {
                continue;
            }
            let (a, b) = (a.ln(), b.ln());
            let (v, _) = gauss_kronrod(
                &mut |u: f64| {
                    let w = u.exp();
                    let e = interpolate(&pair[0], &pair[1], w).im;
                    w * w * e / (w * w + zeta * zeta)
                },
                a,
                b,
            );
            total += v;
        }
        FRAC_2_PI * total
    }

    pub fn imag_axis(&self, zeta: f64) -> f64 {
        let first = self.samples[0];
        let last = *self.samples.last().expect("non-empty");
        let mut eps = 1.0 + self.kk_table(0.0, f64::INFINITY, zeta);
        if let (LowExtrapolation::DrudeTail, Some(drude)) = (self.low, self.tail) {
            eps += drude.band_kk_shift(0.0, first.omega, zeta);
        }
        if self.high == HighExtrapolation::PowerLaw && last.eps_im > 0.0 {
            // eps'' = e_N (omega_N / omega)^3 above the table.
            let wn = last.omega;
            let x = zeta / wn;
            let bracket = if x < 1e-3 {
                (1.0 / 3.0 - x * x / 5.0 + x.powi(4) / 7.0) / wn.powi(3)
            } else {
                (1.0 / wn - x.atan() / zeta) / (zeta * zeta)
            };
            eps += FRAC_2_PI * last.eps_im * wn.powi(3) * bracket;
        }
        eps
    }

    /// Serializes the table in the line-oriented eV format read by
    /// [`load_optical_table`].
    pub fn to_table_text(&self) -> String {
        let mut out = String::from("# units: eV\n# omega_eV eps_re eps_im\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{:.17e} {:.17e} {:.17e}\n",
                rad_per_s_to_ev(s.omega),
                s.eps_re,
                s.eps_im
            ));
        }
        out
    }
}

fn interpolate(a: &TableSample, b: &TableSample, omega: f64) -> Complex64 {
    let t = (omega / a.omega).ln() / (b.omega / a.omega).ln();
    let re = a.eps_re + t * (b.eps_re - a.eps_re);
    let im = if a.eps_im > 0.0 && b.eps_im > 0.0 {
        (a.eps_im.ln() + t * (b.eps_im / a.eps_im).ln()).exp()
    } else {
        a.eps_im + t * (b.eps_im - a.eps_im)
    };
    Complex64::new(re, im)
}

fn fit_drude_tail(s0: &TableSample, s1: &TableSample) -> Option<DrudeModel> {
    let fit = |s: &TableSample| -> Option<(f64, f64)> {
        let depolar = 1.0 - s.eps_re;
        if !(depolar > 0.0 && s.eps_im > 0.0) {
            return None;
        }
        let nu = s.omega * s.eps_im / depolar;
        let wp2 = depolar * (s.omega * s.omega + nu * nu);
        Some((wp2, nu))
    };
    let (wp2_a, nu_a) = fit(s0)?;
    let (wp2_b, nu_b) = fit(s1)?;
    DrudeModel::new((wp2_a * wp2_b).sqrt().sqrt(), (nu_a * nu_b).sqrt()).ok()
}

/// Reads an optical table: `#` comments, a required `# units: eV` header, and
/// rows `omega_eV eps_re eps_im` separated by whitespace or commas.
pub fn load_optical_table<R: BufRead>(source: R) -> Result<TabulatedModel> {
    let mut samples = Vec::new();
    let mut saw_units = false;
    let mut last_line = 0;
    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = line.map_err(|e| CasimirError::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        if !line.is_ascii() {
            return Err(CasimirError::Parse {
                line: line_no,
                message: "non-ASCII content".into(),
            });
        }
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once(':') {
                if key.trim().eq_ignore_ascii_case("units") {
                    if !value.trim().eq_ignore_ascii_case("ev") {
                        return Err(CasimirError::Parse {
                            line: line_no,
                            message: format!("unsupported units '{}', expected eV", value.trim()),
                        });
                    }
                    saw_units = true;
                }
            }
            continue;
        }
        if !saw_units {
            return Err(CasimirError::Parse {
                line: line_no,
                message: "data before the required '# units: eV' header".into(),
            });
        }
        let fields: Vec<&str> = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        if fields.len() != 3 {
            return Err(CasimirError::Parse {
                line: line_no,
                message: format!("expected 3 columns, found {}", fields.len()),
            });
        }
        let mut values = [0.0; 3];
        for (slot, field) in values.iter_mut().zip(&fields) {
            *slot = field.parse().map_err(|_| CasimirError::Parse {
                line: line_no,
                message: format!("'{field}' is not a number"),
            })?;
        }
        samples.push((
            line_no,
            TableSample {
                omega: ev_to_rad_per_s(values[0]),
                eps_re: values[1],
                eps_im: values[2],
            },
        ));
    }
    if samples.is_empty() {
        return Err(CasimirError::Parse {
            line: last_line,
            message: "no data rows".into(),
        });
    }
    for w in samples.windows(2) {
        if !(w[1].1.omega > w[0].1.omega) {
            return Err(CasimirError::Invalid(format!(
                "line {}: frequencies must be strictly increasing",
                w[1].0
            )));
        }
    }
    if let Some((line, s)) = samples.iter().find(|(_, s)| !(s.eps_im >= 0.0)) {
        return Err(CasimirError::Invalid(format!(
            "line {line}: eps'' = {} violates passivity",
            s.eps_im
        )));
    }
    TabulatedModel::new(
        samples.into_iter().map(|(_, s)| s).collect(),
        LowExtrapolation::DrudeTail,
        HighExtrapolation::PowerLaw,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowMode {
    /// Unit-step edges.
    Sharp,
    /// Arctangent edges of width `(c/a)/s`.
    Smooth,
}

/// A band `(omega1, omega2)` in which the susceptibility is reduced by `delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowSpec {
    omega1: f64,
    omega2: f64,
    delta: f64,
    sharpness: f64,
    mode: WindowMode,
}

impl WindowSpec {
    pub fn new(
        omega1: f64,
        omega2: f64,
        delta: f64,
        sharpness: f64,
        mode: WindowMode,
    ) -> Result<Self> {
        if !(omega1 > 0.0 && omega2 > omega1 && omega2.is_finite()) {
            return Err(CasimirError::Invalid(format!(
                "window needs 0 < omega1 < omega2, got ({omega1:e}, {omega2:e})"
            )));
        }
        if !(0.0..=1.0).contains(&delta) {
            return Err(CasimirError::Invalid(format!(
                "window reduction delta must lie in [0, 1], got {delta}"
            )));
        }
        if !(sharpness > 0.0) {
            return Err(CasimirError::Invalid(format!(
                "window sharpness must be positive, got {sharpness}"
            )));
        }
        Ok(Self {
            omega1,
            omega2,
            delta,
            sharpness,
            mode,
        })
    }

    pub fn sharp(omega1: f64, omega2: f64, delta: f64) -> Result<Self> {
        Self::new(omega1, omega2, delta, f64::INFINITY, WindowMode::Sharp)
    }

    pub fn smooth(omega1: f64, omega2: f64, delta: f64, sharpness: f64) -> Result<Self> {
        Self::new(omega1, omega2, delta, sharpness, WindowMode::Smooth)
    }

    /// The hydrogen-switchable-mirror band, 7.5e14 to 9.4e15 rad/s.
    pub fn mirror_band(delta: f64, sharpness: f64, mode: WindowMode) -> Result<Self> {
        Self::new(7.5e14, 9.4e15, delta, sharpness, mode)
    }

    pub fn omega1(&self) -> f64 {
        self.omega1
    }
    pub fn omega2(&self) -> f64 {
        self.omega2
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn sharpness(&self) -> f64 {
        self.sharpness
    }
    pub fn mode(&self) -> WindowMode {
        self.mode
    }

    pub fn with_delta(self, delta: f64) -> Result<Self> {
        Self::new(self.omega1, self.omega2, delta, self.sharpness, self.mode)
    }

    /// Factor multiplying the susceptibility at `omega`, for plate separation `a`.
    pub fn factor(&self, omega: f64, a: f64) -> f64 {
        match self.mode {
            WindowMode::Sharp => {
                let step = |x: f64| {
                    if x > 0.0 {
                        1.0
                    } else if x < 0.0 {
                        0.0
                    } else {
                        0.5
                    }
                };
                1.0 - self.delta * step(omega - self.omega1) * step(self.omega2 - omega)
            }
            WindowMode::Smooth => {
                let scale = self.sharpness * a / SPEED_OF_LIGHT;
                1.0 - self.delta / PI
                    * (((omega - self.omega1) * scale).atan()
                        + ((self.omega2 - omega) * scale).atan())
            }
        }
    }
}

/// `window.factor(omega, a)`.
pub fn window_factor(spec: &WindowSpec, omega: f64, a: f64) -> f64 {
    spec.factor(omega, a)
}

/// A permittivity model.
#[derive(Debug, Clone, PartialEq)]
pub enum DielectricModel {
    Drude(DrudeModel),
    Plasma(PlasmaModel),
    Tabulated(TabulatedModel),
    /// Frequency-independent permittivity: vacuum (`1`) or the
    /// perfect-conductor limit (`eps >> 1`).
    Constant(Complex64),
    /// A base model whose susceptibility is reduced inside a window.
    Windowed {
        base: Box<DielectricModel>,
        window: WindowSpec,
        separation: f64,
    },
}

impl DielectricModel {
    pub fn vacuum() -> Self {
        Self::Constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(eps: f64) -> Self {
        Self::Constant(Complex64::new(eps, 0.0))
    }

    /// Applies a window; `separation` sets the edge width of smooth windows.
    pub fn windowed(base: DielectricModel, window: WindowSpec, separation: f64) -> Result<Self> {
        if !(separation > 0.0) {
            return Err(CasimirError::Invalid(format!(
                "plate separation must be positive, got {separation}"
            )));
        }
        Ok(Self::Windowed {
            base: Box::new(base),
            window,
            separation,
        })
    }

    /// `eps(omega)` for real `omega > 0`.
    pub fn permittivity_real_axis(&self, omega: f64) -> Result<Complex64> {
        if !(omega > 0.0) {
            return Err(CasimirError::Domain(format!(
                "real frequency must be positive, got {omega}"
            )));
        }
        match self {
            Self::Drude(m) => Ok(m.real_axis(omega)),
            Self::Plasma(m) => Ok(m.real_axis(omega)),
            Self::Tabulated(m) => m.real_axis(omega),
            Self::Constant(eps) => Ok(*eps),
            Self::Windowed {
                base,
                window,
                separation,
            } => {
                let chi = base.permittivity_real_axis(omega)? - 1.0;
                Ok(1.0 + chi * window.factor(omega, *separation))
            }
        }
    }

    /// `eps(i zeta)` for `zeta > 0`.
    pub fn permittivity_imag_axis(&self, zeta: f64) -> Result<f64> {
        if !(zeta > 0.0) {
            return Err(CasimirError::Domain(format!(
                "imaginary frequency must be positive, got {zeta}"
            )));
        }
        match self {
            Self::Drude(m) => Ok(m.imag_axis(zeta)),
            Self::Plasma(m) => Ok(m.imag_axis(zeta)),
            Self::Tabulated(m) => Ok(m.imag_axis(zeta)),
            Self::Constant(eps) => {
                if eps.im == 0.0 {
                    Ok(eps.re)
                } else {
                    Err(CasimirError::Unsupported(
                        "a constant complex permittivity has no causal continuation".into(),
                    ))
                }
            }
            Self::Windowed { base, window, .. } => match window.mode() {
                WindowMode::Smooth => Err(CasimirError::Unsupported(
                    "smooth windows are not causal; no imaginary-axis continuation".into(),
                )),
                WindowMode::Sharp => {
                    let shift = base.band_kk_shift(window.omega1(), window.omega2(), zeta)?;
                    Ok(base.permittivity_imag_axis(zeta)? - window.delta() * shift)
                }
            },
        }
    }

    /// `(2/pi) int_{omega1}^{omega2} omega eps''(omega)/(omega^2 + zeta^2) d omega`.
    pub fn band_kk_shift(&self, omega1: f64, omega2: f64, zeta: f64) -> Result<f64> {
        match self {
            Self::Drude(m) => Ok(m.band_kk_shift(omega1, omega2, zeta)),
            Self::Plasma(_) => Ok(0.0),
            Self::Constant(eps) => Ok(if eps.im == 0.0 {
                0.0
            } else {
                eps.im / PI * ((omega2 * omega2 + zeta * zeta) / (omega1 * omega1 + zeta * zeta)).ln()
            }),
            Self::Tabulated(m) => {
                let first = m.samples[0].omega;
                let mut shift = m.kk_table(omega1, omega2, zeta);
                if omega1 < first {
                    if let (LowExtrapolation::DrudeTail, Some(d)) = (m.low, m.tail) {
                        shift += d.band_kk_shift(omega1, omega2.min(first), zeta);
                    }
                }
                let last = m.samples.last().expect("non-empty").omega;
                if omega2 > last {
                    let lo = omega1.max(last);
                    let (v, _) = gauss_kronrod(
                        &mut |u: f64| {
                            let w = u.exp();
                            w * w * m.eps_im(w) / (w * w + zeta * zeta)
                        },
                        lo.ln(),
                        omega2.ln(),
                    );
                    shift += FRAC_2_PI * v;
                }
                Ok(shift)
            }
            Self::Windowed { .. } => Err(CasimirError::Unsupported(
                "nested windows have no closed-form Kramers–Kronig shift".into(),
            )),
        }
    }

    /// Whether `permittivity_imag_axis` is available.
    pub fn supports_imag_axis(&self) -> bool {
        match self {
            Self::Constant(eps) => eps.im == 0.0,
            Self::Windowed { base, window, .. } => {
                window.mode() == WindowMode::Sharp
                    && !matches!(**base, Self::Windowed { .. })
                    && base.supports_imag_axis()
            }
            _ => true,
        }
    }

    /// Frequencies where the real-axis integrand changes character: plasma and
    /// surface-plasmon frequencies, and window edges.
    pub fn features(&self) -> Vec<f64> {
        match self {
            Self::Drude(m) => vec![m.omega_p / 2f64.sqrt(), m.omega_p],
            Self::Plasma(m) => vec![m.omega_p / 2f64.sqrt(), m.omega_p],
            Self::Windowed { base, window, .. } => {
                let mut f = base.features();
                f.push(window.omega1());
                f.push(window.omega2());
                f
            }
            _ => Vec::new(),
        }
    }
}

/// `delta_eps(i zeta)` for a sharp window with `delta = 1` on a Drude base.
pub fn delta_eps_imag_axis(model: &DrudeModel, spec: &WindowSpec, zeta: f64) -> Result<f64> {
    if !(zeta > 0.0) {
        return Err(CasimirError::Domain(format!(
            "imaginary frequency must be positive, got {zeta}"
        )));
    }
    Ok(model.band_kk_shift(spec.omega1(), spec.omega2(), zeta))
}
