//! Radiative modes of the fibre: the continuum with |β| < k n₂.
//!
//! A radiative mode is labelled by frequency `ω`, axial wavenumber `β`,
//! azimuthal order `m ∈ ℤ` and a two-valued polarization label `p`.  Inside
//! the core the field is a regular Bessel standing wave with amplitudes
//! `A` and `B` for the electric and magnetic axial components; outside it
//! combines `J` and `Y` waves with coefficients `C, D, E, F` fixed by the
//! boundary conditions at `r = a`.
//!
//! The two polarizations are built as `B = i p η A`, with `η` chosen so the
//! `p = ±1` modes are orthogonal, and `|A|` follows from δ-function
//! normalization on (ω, β).  Both conditions are re-checked numerically by
//! [`RadMode::sum_rule_residual`] and [`cross_orthogonality`].
//!
//! All quantities that diverge as `σ → 0` (grazing modes) or at large `m`
//! are combined through max-rescaled sums, so the amplitudes stay finite
//! until far outside the physically populated region; any overflow that
//! slips through surfaces as an error rather than a silent NaN.

use crate::error::{Error, Result};
use crate::guided::Fibre;
use crate::specfun::{bessel_j, bessel_j_prime, bessel_y, bessel_y_prime};
use crate::{consts, C64};

/// One radiative mode, fully normalized.
#[derive(Clone, Copy, Debug)]
pub struct RadMode {
    pub fibre: Fibre,
    pub omega: f64,
    /// Axial wavenumber, |β| < k n₂ (signed).
    pub beta: f64,
    /// Azimuthal order (signed).
    pub m: i32,
    /// Polarization label ±1.
    pub p: i32,
    /// Transverse wavenumber in the core.
    pub kappa: f64,
    /// Transverse wavenumber outside, σ = sqrt(n₂²k² − β²) > 0.
    pub sigma: f64,
    /// Polarization mixing parameter (≈ 1/c in the vacuum limit).
    pub eta: f64,
    /// Axial electric amplitude inside (real, > 0).
    amp_a: f64,
    /// Axial magnetic amplitude inside: B = i·amp_b.
    amp_b: f64,
    /// Outside amplitudes: e_z = c_j J_m(σr) + c_y Y_m(σr) (both real).
    c_j: f64,
    c_y: f64,
    /// Outside magnetic amplitudes: D = i·d_j, F = i·d_y.
    d_j: f64,
    d_y: f64,
    /// Raw boundary brackets kept for the independent sum-rule recheck.
    v1: f64,
    v2: f64,
    m1: f64,
    m2: f64,
    l1: f64,
    l2: f64,
}

/// Build the radiative mode (ω, β, m, p).
pub fn build_mode(fibre: &Fibre, omega: f64, beta: f64, m: i32, p: i32) -> Result<RadMode> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain(format!("angular frequency {omega} must be positive")));
    }
    if p != 1 && p != -1 {
        return Err(Error::Domain(format!("polarization label {p} must be ±1")));
    }
    let k = omega / consts::C_LIGHT;
    let (n1, n2, a) = (fibre.n1, fibre.n2, fibre.radius);
    let sigma_sq = n2 * n2 * k * k - beta * beta;
    if sigma_sq <= 0.0 {
        return Err(Error::Domain(format!(
            "|β| = {} reaches the radiative edge k n₂ = {}",
            beta.abs(),
            k * n2
        )));
    }
    let sigma = sigma_sq.sqrt();
    let kappa = (n1 * n1 * k * k - beta * beta).sqrt();

    // Boundary brackets evaluated at r = a.
    let (pa, sa) = (kappa * a, sigma * a);
    let jm_k = bessel_j(m, pa);
    let jp_k = bessel_j_prime(m, pa);
    let jm_s = bessel_j(m, sa);
    let jp_s = bessel_j_prime(m, sa);
    let ym_s = bessel_y(m, sa);
    let yp_s = bessel_y_prime(m, sa);

    let eps = consts::EPS_0;
    let mu = consts::MU_0;
    let v_pref = m as f64 * beta * k * k * (n2 * n2 - n1 * n1)
        / (a * omega * mu * kappa * kappa * sigma * sigma);
    let v1 = v_pref * jm_s * jm_k;
    let v2 = v_pref * ym_s * jm_k;
    let m1 = jm_s * jp_k / kappa - jp_s * jm_k / sigma;
    let m2 = ym_s * jp_k / kappa - yp_s * jm_k / sigma;
    let l1 = eps * n1 * n1 * jm_s * jp_k / kappa - eps * n2 * n2 * jp_s * jm_k / sigma;
    let l2 = eps * n1 * n1 * ym_s * jp_k / kappa - eps * n2 * n2 * yp_s * jm_k / sigma;
    for x in [v1, v2, m1, m2, l1, l2] {
        if !x.is_finite() {
            return Err(Error::Numerics(format!(
                "boundary bracket overflow at m = {m}, σa = {sa:e}"
            )));
        }
    }

    // η as a ratio of max-rescaled quadratic sums (the common scale divides
    // out, so the rescale is exact).
    let g = [v1, v2, m1, m2, l1, l2]
        .iter()
        .fold(0.0f64, |acc, x| acc.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    let (v1g, v2g, m1g, m2g, l1g, l2g) = (v1 / g, v2 / g, m1 / g, m2 / g, l1 / g, l2 / g);
    let num = l1g * l1g + l2g * l2g + eps * mu * (v1g * v1g + v2g * v2g);
    let den = v1g * v1g + v2g * v2g + eps / mu * (m1g * m1g + m2g * m2g);
    if den == 0.0 {
        return Err(Error::Numerics(format!(
            "degenerate polarization condition at m = {m}, β = {beta:e}"
        )));
    }
    let eta = (num / den).sqrt();

    // Normalization through the max-rescaled quadratic sum T, keeping every
    // intermediate bounded by 1 in magnitude.
    let pf = p as f64;
    let cl = consts::C_LIGHT;
    let u1 = (l1 - pf * eta * v1) / (eps * n2 * n2);
    let u2 = (l2 - pf * eta * v2) / (eps * n2 * n2);
    let w1 = cl * (mu * v1 - pf * eta * m1);
    let w2 = cl * (mu * v2 - pf * eta * m2);
    let mm = [u1, u2, w1, w2]
        .iter()
        .fold(0.0f64, |acc, x| acc.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    let (u1m, u2m, w1m, w2m) = (u1 / mm, u2 / mm, w1 / mm, w2 / mm);
    let t_hat = (u1m * u1m + u2m * u2m + w1m * w1m + w2m * w2m).sqrt();

    let amp_a = (2.0 / (std::f64::consts::PI.powi(3) * omega * a * a * sigma * sigma)).sqrt()
        / (mm * t_hat);
    let scale = sigma / (2.0 * std::f64::consts::PI * omega).sqrt() / t_hat;
    Ok(RadMode {
        fibre: *fibre,
        omega,
        beta,
        m,
        p,
        kappa,
        sigma,
        eta,
        amp_a,
        amp_b: pf * eta * amp_a,
        c_j: -scale * u2m,
        c_y: scale * u1m,
        d_j: scale * w2m / cl,
        d_y: -scale * w1m / cl,
        v1,
        v2,
        m1,
        m2,
        l1,
        l2,
    })
}

impl RadMode {
    /// Cylindrical components `(e_r, e_φ, e_z)` of the profile at radius
    /// `r > 0`; the propagation phase `exp(i(βz + mφ))` is not included.
    pub fn profile(&self, r: f64) -> [C64; 3] {
        debug_assert!(r > 0.0, "profile radius must be positive");
        let m = self.m;
        let mf = m as f64;
        let omega = self.omega;
        if r < self.fibre.radius {
            let kap = self.kappa;
            let x = kap * r;
            let jm = bessel_j(m, x);
            let jp = bessel_j_prime(m, x);
            let radial = self.beta * self.amp_a * jp - self.amp_b * omega * mf * jm / (r * kap);
            let e_phi = self.amp_a * mf * self.beta * jm / (kap * kap * r)
                - self.amp_b * omega * jp / kap;
            [
                C64::new(0.0, -radial / kap),
                C64::new(e_phi, 0.0),
                C64::new(self.amp_a * jm, 0.0),
            ]
        } else {
            let sig = self.sigma;
            let x = sig * r;
            let jm = bessel_j(m, x);
            let jp = bessel_j_prime(m, x);
            let ym = bessel_y(m, x);
            let yp = bessel_y_prime(m, x);
            let radial = self.beta * (self.c_j * jp + self.c_y * yp)
                - mf * omega / (sig * r) * (self.d_j * jm + self.d_y * ym);
            let e_phi = mf * self.beta / (sig * sig * r) * (self.c_j * jm + self.c_y * ym)
                - omega / sig * (self.d_j * jp + self.d_y * yp);
            [
                C64::new(0.0, -radial / sig),
                C64::new(e_phi, 0.0),
                C64::new(self.c_j * jm + self.c_y * ym, 0.0),
            ]
        }
    }

    /// Normalization recheck through the raw boundary brackets: rebuilds
    /// C, D, E, F from A and B and returns the deviation of the δ-function
    /// sum rule from unity.
    pub fn sum_rule_residual(&self) -> f64 {
        let (eps, mu, cl) = (consts::EPS_0, consts::MU_0, consts::C_LIGHT);
        let n2 = self.fibre.n2;
        let pf = self.p as f64;
        let pref = std::f64::consts::PI * self.fibre.radius * self.sigma * self.sigma / 2.0;
        // iB = -pηA folds the chain onto real combinations.
        let c_chain = -pref / (eps * n2 * n2) * self.amp_a * (self.l2 - pf * self.eta * self.v2);
        let e_chain = pref / (eps * n2 * n2) * self.amp_a * (self.l1 - pf * self.eta * self.v1);
        let d_chain = pref * self.amp_a * (mu * self.v2 - pf * self.eta * self.m2);
        let f_chain = -pref * self.amp_a * (mu * self.v1 - pf * self.eta * self.m1);
        let total = 2.0 * std::f64::consts::PI * self.omega / (self.sigma * self.sigma)
            * (c_chain * c_chain
                + e_chain * e_chain
                + cl * cl * (d_chain * d_chain + f_chain * f_chain));
        (total - 1.0).abs()
    }
}

/// Overlap of the two polarization modes sharing (ω, β, m): the coefficient
/// combination that the δ-normalization maps their scalar product onto.
/// Vanishes when η does its job.
pub fn cross_orthogonality(plus: &RadMode, minus: &RadMode) -> f64 {
    debug_assert_eq!(plus.m, minus.m);
    debug_assert_eq!(plus.p, -minus.p);
    let cl = consts::C_LIGHT;
    2.0 * std::f64::consts::PI * plus.omega / (plus.sigma * plus.sigma)
        * (plus.c_j * minus.c_j
            + plus.c_y * minus.c_y
            + cl * cl * (plus.d_j * minus.d_j + plus.d_y * minus.d_y))
}

#[cfg(test)]
mod tests {
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    use super::*;

    fn reference() -> (Fibre, f64) {
        let fibre = Fibre::new(100e-9, 1.45, 1.0).unwrap();
        let omega = 2.0 * std::f64::consts::PI * consts::C_LIGHT / 589e-9;
        (fibre, omega)
    }

    fn beta_grid(omega: f64, n2: f64) -> Vec<f64> {
        let edge = omega / consts::C_LIGHT * n2;
        [-0.95, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 0.95]
            .iter()
            .map(|f| f * edge)
            .collect()
    }

    #[test]
    fn vacuum_limit_recovers_free_waves() {
        // With n1 = n2 the boundary vanishes: C = A, D = ipA/c, E = F = 0.
        let fibre = Fibre::new(100e-9, 1.0, 1.0).unwrap();
        let omega = 2.0 * std::f64::consts::PI * consts::C_LIGHT / 589e-9;
        for m in -3..=3 {
            for p in [1, -1] {
                for beta in beta_grid(omega, 1.0) {
                    let mode = build_mode(&fibre, omega, beta, m, p).unwrap();
                    assert_relative_eq!(mode.c_j, mode.amp_a, max_relative = 1e-10);
                    assert_relative_eq!(
                        mode.d_j,
                        p as f64 * mode.amp_a / consts::C_LIGHT,
                        max_relative = 1e-10
                    );
                    assert!(mode.c_y.abs() <= 1e-10 * mode.amp_a);
                    assert!(mode.d_y.abs() <= 1e-10 * mode.amp_a / consts::C_LIGHT);
                    assert_relative_eq!(mode.eta, 1.0 / consts::C_LIGHT, max_relative = 1e-10);
                }
            }
        }
    }

    #[test]
    fn sum_rule_holds_across_the_continuum() {
        let (fibre, omega) = reference();
        for m in 0..=5 {
            for p in [1, -1] {
                for beta in beta_grid(omega, fibre.n2) {
                    let mode = build_mode(&fibre, omega, beta, m, p).unwrap();
                    assert!(
                        mode.sum_rule_residual() < 1e-11,
                        "m = {m}, p = {p}, β = {beta:e}: residual {}",
                        mode.sum_rule_residual()
                    );
                }
            }
        }
    }

    #[test]
    fn polarizations_are_orthogonal() {
        let (fibre, omega) = reference();
        for m in 0..=5 {
            for beta in beta_grid(omega, fibre.n2) {
                let plus = build_mode(&fibre, omega, beta, m, 1).unwrap();
                let minus = build_mode(&fibre, omega, beta, m, -1).unwrap();
                assert_abs_diff_eq!(cross_orthogonality(&plus, &minus), 0.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn profile_is_continuous_at_the_boundary() {
        let (fibre, omega) = reference();
        let a = fibre.radius;
        let eps = a * 1e-10;
        for m in [-2, 0, 1, 3] {
            for p in [1, -1] {
                for beta in beta_grid(omega, fibre.n2) {
                    let mode = build_mode(&fibre, omega, beta, m, p).unwrap();
                    let inner = mode.profile(a - eps);
                    let outer = mode.profile(a + eps);
                    let scale = inner
                        .iter()
                        .chain(outer.iter())
                        .map(|c| c.norm())
                        .fold(0.0, f64::max);
                    assert_abs_diff_eq!(
                        (inner[1] - outer[1]).norm() / scale, 0.0, epsilon = 1e-6
                    );
                    assert_abs_diff_eq!(
                        (inner[2] - outer[2]).norm() / scale, 0.0, epsilon = 1e-6
                    );
                    let d_in = inner[0] * fibre.n1 * fibre.n1;
                    let d_out = outer[0] * fibre.n2 * fibre.n2;
                    assert_abs_diff_eq!((d_in - d_out).norm() / scale, 0.0, epsilon = 1e-6);
                }
            }
        }
    }

    #[test]
    fn rejects_out_of_range_beta() {
        let (fibre, omega) = reference();
        let edge = omega / consts::C_LIGHT * fibre.n2;
        assert!(build_mode(&fibre, omega, edge, 0, 1).is_err());
        assert!(build_mode(&fibre, omega, -1.5 * edge, 0, 1).is_err());
        assert!(build_mode(&fibre, omega, 0.0, 0, 2).is_err());
    }
}
