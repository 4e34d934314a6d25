//! Physical constants (SI, CODATA 2018) and a few unit helpers.

/// Speed of light in vacuum, m/s (exact).
pub const C_LIGHT: f64 = 2.99792458e8;

/// Vacuum permittivity, F/m.
pub const EPS_0: f64 = 8.8541878128e-12;

/// Vacuum permeability, H/m.
pub const MU_0: f64 = 1.25663706212e-6;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054571817e-34;

/// Elementary charge, C (exact).
pub const E_CHARGE: f64 = 1.602176634e-19;

/// Bohr radius, m.
pub const A_BOHR: f64 = 5.29177210903e-11;

/// Atomic unit of electric dipole moment e·a0, C·m.
pub const E_A0: f64 = E_CHARGE * A_BOHR;

/// Converts a level spacing in spectroscopic wavenumbers (cm^-1) to an
/// angular frequency in rad/s.
pub fn omega_from_cm(delta_e_cm: f64) -> f64 {
    2.0 * std::f64::consts::PI * C_LIGHT * delta_e_cm * 100.0
}

/// Vacuum wavelength (m) of a transition given in cm^-1.
pub fn wavelength_from_cm(delta_e_cm: f64) -> f64 {
    1.0 / (delta_e_cm * 100.0)
}
