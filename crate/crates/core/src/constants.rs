//! Physical constants (CODATA 2018, SI) and unit conversions.

/// Reduced Planck constant in J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Elementary charge in C.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Angular frequency corresponding to a photon energy of 1 eV, in rad/s.
pub const RAD_PER_SECOND_PER_EV: f64 = ELEMENTARY_CHARGE / HBAR;

/// `zeta(2)`
pub const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
/// `zeta(3)` (Apéry's constant)
pub const ZETA3: f64 = 1.202_056_903_159_594_2;
/// `zeta(4) = pi^4 / 90`
pub const ZETA4: f64 = ZETA2 * ZETA2 * 0.4;

/// Converts a photon energy in eV to angular frequency in rad/s.
pub fn ev_to_rad_per_s(energy_ev: f64) -> f64 {
    energy_ev * RAD_PER_SECOND_PER_EV
}

/// Converts an angular frequency in rad/s to photon energy in eV.
pub fn rad_per_s_to_ev(omega: f64) -> f64 {
    omega / RAD_PER_SECOND_PER_EV
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ev_conversion() {
        assert!((RAD_PER_SECOND_PER_EV / 1.519_267e15 - 1.0).abs() < 1e-6);
        let w = ev_to_rad_per_s(9.0);
        assert!((w / 1.3673e16 - 1.0).abs() < 1e-4);
        assert!((rad_per_s_to_ev(w) - 9.0).abs() < 1e-12);
    }

    #[test]
    fn zeta4_is_pi4_over_90() {
        let pi = std::f64::consts::PI;
        assert!((ZETA4 - pi.powi(4) / 90.0).abs() < 1e-15);
    }
}
