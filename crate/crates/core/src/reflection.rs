//! Single-interface Fresnel coefficients in the Lifshitz variable `p`.
//!
//! With `w = sqrt(p^2 + eps - 1)`,
//!
//! ```text
//! r_TE = (p - w) / (p + w),     r_TM = (eps p - w) / (eps p + w).
//! ```
//!
//! `p` is the cosine of the vacuum angle for propagating waves, `p = i q` on
//! the evanescent branch, and real `p >= 1` on the imaginary frequency axis.

use num_complex::Complex64;

use crate::error::{CasimirError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarization {
    TE,
    TM,
}

impl Polarization {
    pub const ALL: [Polarization; 2] = [Polarization::TE, Polarization::TM];

    pub fn index(self) -> usize {
        match self {
            Polarization::TE => 0,
            Polarization::TM => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Polarization::TE => "te",
            Polarization::TM => "tm",
        }
    }
}

/// A point on the integration contour, tagged with its branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContourPoint {
    /// Real `p` in `(0, 1]`: waves propagating in the gap.
    Propagating(f64),
    /// `p = i q` with `q > 0`: evanescent waves.
    Evanescent(f64),
    /// Real `p >= 1` paired with an imaginary frequency.
    ImagAxis(f64),
}

impl ContourPoint {
    pub fn propagating(p: f64) -> Result<Self> {
        if p > 0.0 && p <= 1.0 {
            Ok(Self::Propagating(p))
        } else {
            Err(CasimirError::Domain(format!(
                "propagating branch needs p in (0, 1], got {p}"
            )))
        }
    }

    pub fn evanescent(q: f64) -> Result<Self> {
        if q > 0.0 && q.is_finite() {
            Ok(Self::Evanescent(q))
        } else {
            Err(CasimirError::Domain(format!(
                "evanescent branch needs q > 0, got {q}"
            )))
        }
    }

    pub fn imag_axis(p: f64) -> Result<Self> {
        if p >= 1.0 && p.is_finite() {
            Ok(Self::ImagAxis(p))
        } else {
            Err(CasimirError::Domain(format!(
                "imaginary-axis branch needs p >= 1, got {p}"
            )))
        }
    }

    /// The complex value of `p`.
    pub fn p(self) -> Complex64 {
        match self {
            Self::Propagating(p) | Self::ImagAxis(p) => Complex64::new(p, 0.0),
            Self::Evanescent(q) => Complex64::new(0.0, q),
        }
    }
}

/// Square root with `Im w >= 0`, ties broken by `Re w >= 0`.
pub fn transmitted_root(z: Complex64) -> Complex64 {
    let w = z.sqrt();
    if w.im < 0.0 || (w.im == 0.0 && w.re < 0.0) {
        -w
    } else {
        w
    }
}

/// Fresnel coefficient for one polarization.
pub fn fresnel(eps: Complex64, point: ContourPoint, sigma: Polarization) -> Result<Complex64> {
    fresnel_pair(eps, point).map(|r| r[sigma.index()])
}

/// Both coefficients `[r_TE, r_TM]`, sharing the transmitted root.
pub fn fresnel_pair(eps: Complex64, point: ContourPoint) -> Result<[Complex64; 2]> {
    let p = point.p();
    let w = transmitted_root(p * p + eps - 1.0);
    let te_den = p + w;
    let tm_den = eps * p + w;
    if te_den.norm() < 1e-300 || tm_den.norm() < 1e-300 {
        return Err(CasimirError::SingularInterface(format!(
            "vanishing Fresnel denominator at eps = {eps}, p = {p}"
        )));
    }
    // Numerators in product form: exact identities that avoid the `p - w`
    // cancellation when `|eps|` or `|p|` is large.
    let te = (1.0 - eps) / (te_den * te_den);
    let tm = (eps - 1.0) * ((eps + 1.0) * p * p - 1.0) / (tm_den * tm_den);
    Ok([te, tm])
}

/// Real-arithmetic coefficients on the imaginary frequency axis, where
/// `eps(i zeta)` is real and `p >= 1`.
pub fn fresnel_imag_axis(eps: f64, p: f64) -> [f64; 2] {
    let w = (p * p + eps - 1.0).max(0.0).sqrt();
    // Numerators rewritten without the `p - w` cancellation at large p.
    let te = (p + w) * (p + w);
    let tm = (eps * p + w) * (eps * p + w);
    [
        (1.0 - eps) / te,
        (eps - 1.0) * ((eps + 1.0) * p * p - 1.0) / tm,
    ]
}
