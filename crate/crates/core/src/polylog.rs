//! Polylogarithms `Li_m(z) = sum_{n>=1} z^n / n^m` of order 1 to 4 on the
//! closed unit disc, and the inverse of `Li_4` on `[0, 1]`.
//!
//! Small arguments (`|z| <= 0.5`) use the defining series. Larger arguments
//! use the expansion in `mu = ln z`,
//!
//! ```text
//! Li_s(z) = sum_{k != s-1} zeta(s-k) mu^k / k!
//!         + mu^(s-1) / (s-1)! * (H_{s-1} - ln(-mu)),
//! ```
//!
//! which converges for `|mu| < 2 pi`; on the annulus `0.5 < |z| <= 1` the
//! ratio `|mu| / 2 pi` stays below 0.52, so a few dozen terms suffice.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::constants::{ZETA2, ZETA3, ZETA4};
use crate::error::{CasimirError, Result};

/// Default relative tolerance for polylogarithm evaluation.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Slack allowed on `|z| <= 1` for arguments produced by rounding.
pub const UNIT_DISC_SLACK: f64 = 1e-12;

const SERIES_RADIUS: f64 = 0.5;
const MAX_TERMS: usize = 400;

/// Order `m` of the polylogarithm, restricted to `1..=4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolylogOrder(u8);

impl PolylogOrder {
    pub const ONE: Self = Self(1);
    pub const TWO: Self = Self(2);
    pub const THREE: Self = Self(3);
    pub const FOUR: Self = Self(4);

    pub fn new(m: u32) -> Result<Self> {
        match m {
            1..=4 => Ok(Self(m as u8)),
            _ => Err(CasimirError::Domain(format!(
                "polylogarithm order {m} is outside 1..=4"
            ))),
        }
    }

    pub fn get(self) -> u32 {
        self.0 as u32
    }
}

/// A complex argument inside the closed unit disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitDiscArgument(Complex64);

impl UnitDiscArgument {
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(CasimirError::Domain(format!("non-finite argument {z}")));
        }
        if z.norm() > 1.0 + UNIT_DISC_SLACK {
            return Err(CasimirError::Domain(format!(
                "|z| = {} lies outside the closed unit disc",
                z.norm()
            )));
        }
        Ok(Self(z))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

/// `Li_m(z)` to relative tolerance `tol` (at least `1e-14`).
pub fn eval_polylog(order: PolylogOrder, z: UnitDiscArgument, tol: f64) -> Result<Complex64> {
    if !(tol >= 1e-14) {
        return Err(CasimirError::Domain(format!(
            "tolerance {tol:e} is below the attainable 1e-14"
        )));
    }
    let z = z.value();
    // Evaluate in the closed upper half plane so that Li(conj z) == conj Li(z)
    // holds bit for bit.
    if z.im < 0.0 {
        return eval_upper(order.get(), z.conj(), tol).map(|v| v.conj());
    }
    eval_upper(order.get(), z, tol)
}

/// Convenience wrapper: validates `m` and `z` and uses [`DEFAULT_TOLERANCE`].
pub fn polylog(m: u32, z: Complex64) -> Result<Complex64> {
    eval_polylog(
        PolylogOrder::new(m)?,
        UnitDiscArgument::new(z)?,
        DEFAULT_TOLERANCE,
    )
}

fn eval_upper(s: u32, z: Complex64, tol: f64) -> Result<Complex64> {
    if s == 1 {
        let one_minus = Complex64::new(1.0, 0.0) - z;
        if one_minus.norm() < 1e-15 {
            return Err(CasimirError::Divergence(
                "Li_1(z) = -ln(1 - z) diverges at z = 1".into(),
            ));
        }
        let v = -one_minus.ln();
        return Ok(if z.im == 0.0 && z.re < 1.0 {
            Complex64::new(v.re, 0.0)
        } else {
            v
        });
    }
    if z == Complex64::new(1.0, 0.0) {
        return Ok(Complex64::new(zeta_int(s), 0.0));
    }
    let v = if z.norm() <= SERIES_RADIUS {
        direct_series(s, z, tol)
    } else {
        log_series(s, z, tol)
    };
    // Li_s is real on the real segment [-1, 1].
    Ok(if z.im == 0.0 && z.re <= 1.0 {
        Complex64::new(v.re, 0.0)
    } else {
        v
    })
}

fn direct_series(s: u32, z: Complex64, tol: f64) -> Complex64 {
    let r = z.norm();
    let mut power = z;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..=MAX_TERMS {
        let term = power / (n as f64).powi(s as i32);
        sum += term;
        // Geometric bound on the remaining tail.
        if term.norm() * r / (1.0 - r) <= tol * 0.1 * sum.norm() || power.norm() == 0.0 {
            break;
        }
        power *= z;
    }
    sum
}

fn log_series(s: u32, z: Complex64, tol: f64) -> Complex64 {
    let mu = z.ln();
    let mut sum = Complex64::new(0.0, 0.0);

    // Terms k = 0 .. s-2 carry zeta(s-k) with s-k >= 2.
    let mut mu_k = Complex64::new(1.0, 0.0);
    let mut factorial = 1.0;
    for k in 0..s.saturating_sub(1) {
        if k > 0 {
            mu_k *= mu;
            factorial *= k as f64;
        }
        sum += mu_k * (zeta_int(s - k) / factorial);
    }

    // Logarithmic term at k = s-1.
    let mu_s1 = mu.powu(s - 1);
    let fact_s1: f64 = (1..s).map(|v| v as f64).product();
    let harmonic: f64 = (1..s).map(|v| 1.0 / v as f64).sum();
    sum += mu_s1 / fact_s1 * (Complex64::new(harmonic, 0.0) - (-mu).ln());

    // k = s: zeta(0) = -1/2.
    sum += mu_s1 * mu * (-0.5 / (fact_s1 * s as f64));

    // k = s-1+j with even j: zeta(1-j) expressed through zeta(j).
    let ratio = mu / (2.0 * PI);
    let ratio_sq = ratio * ratio;
    let mut ratio_j = Complex64::new(1.0, 0.0);
    let zetas = even_zetas();
    let mut j = 2usize;
    while j < MAX_TERMS {
        ratio_j *= ratio_sq;
        let denom: f64 = (j..j + s as usize).map(|v| v as f64).product();
        let sign = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let term = ratio_j * mu_s1 * (sign * 2.0 * zetas[j / 2] / denom);
        sum += term;
        if term.norm() <= tol * 0.01 * sum.norm() {
            break;
        }
        j += 2;
    }
    sum
}

fn zeta_int(s: u32) -> f64 {
    match s {
        2 => ZETA2,
        3 => ZETA3,
        4 => ZETA4,
        _ => unreachable!("zeta({s}) not needed"),
    }
}

/// `zeta(2k)` for `k = 0 .. MAX_TERMS/2`; entry 0 is unused.
fn even_zetas() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n_max = 200usize;
        (0..=MAX_TERMS / 2)
            .map(|k| {
                let j = 2 * k;
                match j {
                    0 => f64::NAN,
                    2 => ZETA2,
                    4 => ZETA4,
                    _ => {
                        let e = j as i32;
                        let head: f64 = (1..=n_max).rev().map(|n| (n as f64).powi(-e)).sum();
                        let n = n_max as f64;
                        // Euler–Maclaurin tail beyond n_max.
                        let tail = n.powi(1 - e) / (j as f64 - 1.0) - 0.5 * n.powi(-e)
                            + j as f64 * n.powi(-e - 1) / 12.0;
                        head + tail
                    }
                }
            })
            .collect()
    })
}

/// Unique `x` in `[0, 1]` with `Li_4(x) = y`, for `0 <= y <= zeta(4)`.
pub fn inverse_polylog4(y: f64) -> Result<f64> {
    if !(y >= 0.0 && y <= ZETA4 * (1.0 + 1e-14)) {
        return Err(CasimirError::Range(format!(
            "Li_4 on [0, 1] takes values in [0, zeta(4)]; got {y:e}"
        )));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    if y >= ZETA4 {
        return Ok(1.0);
    }
    let li = |m: u32, x: f64| -> f64 {
        eval_upper(m, Complex64::new(x, 0.0), 1e-14).map(|v| v.re).unwrap_or(f64::NAN)
    };
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    // Li_4(x) >= x on [0, 1], so y itself is an upper bound.
    let mut x = y.min(1.0);
    for _ in 0..200 {
        let f = li(4, x) - y;
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let slope = li(3, x) / x;
        let mut next = x - f / slope;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-16 * x.max(1e-300) || hi - lo <= 1e-16 * hi {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn series_oracle(m: u32, z: Complex64, terms: usize) -> Complex64 {
        (1..=terms)
            .map(|n| z.powu(n as u32) / (n as f64).powi(m as i32))
            .sum()
    }

    #[test]
    fn order_validation() {
        assert!(PolylogOrder::new(0).is_err());
        assert!(PolylogOrder::new(5).is_err());
        assert_eq!(PolylogOrder::new(3).unwrap(), PolylogOrder::THREE);
    }

    #[test]
    fn li4_at_one_is_zeta4() {
        let v = polylog(4, c(1.0, 0.0)).unwrap();
        let pi = std::f64::consts::PI;
        assert!((v.re - pi.powi(4) / 90.0).abs() < 1e-14);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn li3_at_zero_vanishes() {
        assert_eq!(polylog(3, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn li4_quarter_matches_series() {
        // Truncated series with 60 terms; tail below 0.25^61 / 61^4.
        let oracle = series_oracle(4, c(0.25, 0.0), 60);
        let v = polylog(4, c(0.25, 0.0)).unwrap();
        assert!((v - oracle).norm() < 1e-13 * oracle.norm());
        assert!((v.re - 0.254_116_2).abs() < 1e-7);
    }

    #[test]
    fn li1_half_is_log2() {
        let v = polylog(1, c(0.5, 0.0)).unwrap();
        let series = series_oracle(1, c(0.5, 0.0), 80);
        assert!((v.re - 2f64.ln()).abs() < 1e-15);
        assert!((v - series).norm() < 1e-14);
    }

    #[test]
    fn li1_diverges_at_one() {
        assert!(matches!(
            polylog(1, c(1.0, 0.0)),
            Err(CasimirError::Divergence(_))
        ));
    }

    #[test]
    fn outside_disc_is_rejected() {
        assert!(matches!(
            polylog(2, c(1.01, 0.0)),
            Err(CasimirError::Domain(_))
        ));
        // Rounding slack is tolerated.
        assert!(polylog(2, c(1.0 + 1e-13, 0.0)).is_ok());
    }

    #[test]
    fn tolerance_floor() {
        let z = UnitDiscArgument::new(c(0.3, 0.1)).unwrap();
        assert!(eval_polylog(PolylogOrder::TWO, z, 1e-16).is_err());
    }

    #[test]
    fn both_branches_agree_near_switch_radius() {
        for m in 2..=4 {
            for k in 0..12 {
                let phase = k as f64 * 0.5;
                let z = Complex64::from_polar(0.55, phase);
                let a = log_series(m, z, 1e-14);
                let b = series_oracle(m, z, 200);
                assert!((a - b).norm() < 1e-14 * b.norm().max(1e-3), "m={m} z={z}");
            }
        }
    }

    #[test]
    fn near_one_from_inside() {
        // Li_2(1 - eps) = zeta(2) - eps (1 - ln eps) + O(eps^2 ln eps)
        let eps = 1e-9;
        let v = polylog(2, c(1.0 - eps, 0.0)).unwrap().re;
        let approx = ZETA2 - eps * (1.0 - eps.ln());
        assert!((v - approx).abs() < 1e-15);
    }

    #[test]
    fn inverse_endpoints() {
        assert_eq!(inverse_polylog4(0.0).unwrap(), 0.0);
        assert_eq!(inverse_polylog4(ZETA4).unwrap(), 1.0);
        assert!(inverse_polylog4(-1e-3).is_err());
        assert!(inverse_polylog4(ZETA4 * 1.001).is_err());
    }

    #[test]
    fn inverse_roundtrip_quarter() {
        let y = polylog(4, c(0.25, 0.0)).unwrap().re;
        let x = inverse_polylog4(y).unwrap();
        assert!((x - 0.25).abs() < 1e-14);
    }
}
