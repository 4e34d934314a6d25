//! Spontaneous emission of an alkali atom near a cylindrical step-index
//! nanofibre.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`] — cylindrical Bessel functions `J_m`, `Y_m`, `K_m` and their
//!   derivatives, accurate to roughly machine precision over the parameter
//!   ranges a vacuum-clad nanofibre problem ever visits;
//! * [`quad`] — Gauss–Legendre panels with adaptive bisection, used for mode
//!   normalisation integrals and the radiative-continuum integral;
//! * [`atom`] — fine-structure level data, exact-rational angular-momentum
//!   algebra (Clebsch–Gordan / 6-j), dipole matrix elements and decay channel
//!   enumeration for the sodium states of interest;
//! * [`guided`] — bound (evanescent-tail) modes of the fibre: eigenvalue
//!   solver, field profiles, normalisation and group-slowness;
//! * [`radiative`] — the free continuum modes: interface coefficient chain,
//!   profiles and the delta-normalisation sum rule;
//! * [`rates`] — golden-rule emission rates assembled from the pieces above,
//!   split into guided and radiative contributions per decay channel.
//!
//! All quantities are SI unless a name says otherwise (`energy_cm` is in
//! spectroscopic wavenumbers, reduced matrix elements are tabulated in units
//! of the elementary charge times the Bohr radius).

pub mod atom;
pub mod consts;
pub mod error;
pub mod guided;
pub mod halfint;
pub mod quad;
pub mod radiative;
pub mod rates;
pub mod specfun;

pub use error::{Error, Result};
pub use halfint::Half;

/// Complex scalar used throughout the field-profile machinery.
pub type C64 = num_complex::Complex64;
