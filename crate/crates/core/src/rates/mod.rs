//! Spontaneous-emission rates of an atom beside the fibre.
//!
//! The decay rate of an excited state splits into a guided part — a sum over
//! the bound branches at each transition frequency — and a radiative part,
//! an integral over the free continuum.  Per mode, the contribution is the
//! squared projection of the transition dipole onto the mode profile at the
//! atom's position:
//!
//! * guided: `γ += (ω β′ / 2ε₀ħ) |d · e|²`, where `β′ = dβ/dω`,
//! * radiative: `γ += (ω / 2ε₀ħ) ∫ dβ Σ_{m,p} |d · e|²`.
//!
//! Different final Zeeman sublevels are distinct decay channels, so the
//! spherical dipole components `q = -1, 0, +1` add incoherently.  The rates
//! are exactly independent of the azimuth `φ` and of the axial position —
//! every `φ`-dependent factor is a pure phase — and of the propagation
//! direction `f`; the `φ` argument is still threaded through the coupling
//! so the invariance is a checked property rather than an assumption.
//!
//! The surrounding medium is vacuum: each channel's fibre has `n₂ = 1` and
//! a core index resolved from the dispersion table by the transition's
//! lower level.

use crate::atom::{AtomData, AtomicState, Channel, Level};
use crate::error::{Error, Result};
use crate::guided::{self, Fibre};
use crate::quad::{integrate_adaptive, AdaptiveOpts};
use crate::radiative;
use crate::{consts, C64, Half};

/// Numerical controls for the rate evaluation.
#[derive(Clone, Copy, Debug)]
pub struct Knobs {
    /// Relative tolerance of the β-integration per azimuthal order.
    pub quad_rel_tol: f64,
    /// Azimuthal orders stop once three consecutive shells each add less
    /// than this fraction of the running radiative sum.
    pub msum_rel_tol: f64,
    /// Hard cap on the azimuthal order (an error, not a truncation, when hit).
    pub max_m: i32,
}

impl Default for Knobs {
    fn default() -> Self {
        Knobs { quad_rel_tol: 1e-6, msum_rel_tol: 1e-8, max_m: 160 }
    }
}

/// Observation point in cylindrical coordinates about the fibre axis.
#[derive(Clone, Copy, Debug)]
pub struct Site {
    /// Distance from the fibre axis in m.
    pub r: f64,
    /// Azimuth in rad.
    pub phi: f64,
    /// Axial position in m; enters couplings only as a pure phase.
    pub z: f64,
}

impl Site {
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::Domain(format!("site radius {r} must be positive")));
        }
        Ok(Site { r, phi, z: 0.0 })
    }

    pub fn with_z(mut self, z: f64) -> Self {
        self.z = z;
        self
    }
}

/// Guided contribution of one bound branch, summed over f and p.
#[derive(Clone, Debug)]
pub struct BranchRate {
    pub label: String,
    pub m: i32,
    pub beta: f64,
    pub beta_prime: f64,
    /// Rate in 1/s.
    pub rate: f64,
}

/// Emission rates of a single fine-structure decay channel.
#[derive(Clone, Debug)]
pub struct ChannelRates {
    pub upper: Level,
    pub lower: Level,
    pub mj: Half,
    pub omega: f64,
    pub wavelength: f64,
    /// Core index used for this channel.
    pub n1: f64,
    pub v_number: f64,
    /// Free-space rate of the channel in 1/s.
    pub vacuum: f64,
    /// Total guided rate in 1/s.
    pub guided: f64,
    /// Radiative-continuum rate in 1/s.
    pub radiative: f64,
    pub branches: Vec<BranchRate>,
}

impl ChannelRates {
    pub fn total(&self) -> f64 {
        self.guided + self.radiative
    }
}

/// Emission rates of an excited state, channel by channel.
#[derive(Clone, Debug)]
pub struct StateRates {
    pub state: AtomicState,
    pub fibre_radius: f64,
    pub site: Site,
    /// Σ over channels, in 1/s.
    pub guided: f64,
    pub radiative: f64,
    /// Free-space total for reference, in 1/s.
    pub vacuum: f64,
    pub channels: Vec<ChannelRates>,
}

impl StateRates {
    pub fn total(&self) -> f64 {
        self.guided + self.radiative
    }
}

/// Squared dipole projections |u_q*·e|² for q = -1, 0, +1, including the
/// mode's azimuthal phase exp(i m_phase φ); all phases cancel in the moduli,
/// which is exactly the φ-invariance of the rates.
fn couplings(e: &[C64; 3], m_phase: i32, phi: f64) -> [f64; 3] {
    let ph = C64::from_polar(1.0, m_phase as f64 * phi);
    let er = e[0] * ph;
    let ep = e[1] * ph;
    let ez = e[2] * ph;
    let i = C64::i();
    [
        (er + i * ep).norm_sqr() * 0.5,
        ez.norm_sqr(),
        (er - i * ep).norm_sqr() * 0.5,
    ]
}

/// Squared sub-transition dipoles for q = -1, 0, +1 out of `|j, mj⟩`.
fn dipole_sq(channel: &Channel, mj: Half) -> [f64; 3] {
    let mut d2 = [0.0; 3];
    for (slot, q) in [(0usize, -1), (1, 0), (2, 1)] {
        let d = channel.dipole_component(mj, q);
        d2[slot] = d * d;
    }
    d2
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// u_q* · e for a field given in cylindrical components at azimuth `phi`.
fn sph_dot(q: i32, e: &[C64; 3], phi: f64) -> C64 {
    let (sin, cos) = phi.sin_cos();
    let ex = e[0] * cos - e[1] * sin;
    let ey = e[0] * sin + e[1] * cos;
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    match q {
        0 => e[2],
        1 => -(ex - C64::i() * ey) * inv_sqrt2,
        -1 => (ex + C64::i() * ey) * inv_sqrt2,
        _ => C64::new(0.0, 0.0),
    }
}

/// Complex coupling amplitude of one bound branch to the sub-transition
/// `|j, m_j⟩ → |j′, m_j + q⟩`:
/// `G = −√(ωβ′/4πε₀ħ) (d·e) exp[i(fβz + pmφ)]`.
///
/// The rate machinery only ever consumes `|G|²`, which is independent of
/// `φ`, `z` and `f`; exposing the complex amplitude makes those invariances
/// testable instead of assumed.
pub fn guided_coupling(
    branch: &guided::Branch,
    channel: &Channel,
    mj: Half,
    q: i32,
    f: i32,
    p: i32,
    site: Site,
) -> C64 {
    let d = channel.dipole_component(mj, q);
    let e = branch.profile(site.r, p, f);
    let angle = f as f64 * branch.beta * site.z + (p * branch.m) as f64 * site.phi;
    let scale =
        (channel.omega * branch.beta_prime / (4.0 * std::f64::consts::PI * consts::EPS_0 * consts::HBAR))
            .sqrt();
    -scale * d * sph_dot(q, &e, site.phi) * C64::from_polar(1.0, angle)
}

/// Complex coupling amplitude of one continuum mode to the sub-transition
/// `|j, m_j⟩ → |j′, m_j + q⟩`:
/// `G = −√(ω/4πε₀ħ) (d·e) exp[i(βz + mφ)]`.
pub fn radiative_coupling(
    mode: &radiative::RadMode,
    channel: &Channel,
    mj: Half,
    q: i32,
    site: Site,
) -> C64 {
    let d = channel.dipole_component(mj, q);
    let e = mode.profile(site.r);
    let angle = mode.beta * site.z + mode.m as f64 * site.phi;
    let scale =
        (channel.omega / (4.0 * std::f64::consts::PI * consts::EPS_0 * consts::HBAR)).sqrt();
    -scale * d * sph_dot(q, &e, site.phi) * C64::from_polar(1.0, angle)
}

/// Rates of one channel at one site.  `dn1_domega` is the chromatic slope of
/// the core index at the channel frequency; it enters only through the group
/// slope β′ weighting the bound branches.
pub fn channel_rates(
    fibre: &Fibre,
    channel: &Channel,
    dn1_domega: f64,
    mj: Half,
    site: Site,
    knobs: &Knobs,
) -> Result<ChannelRates> {
    let omega = channel.omega;
    let d2 = dipole_sq(channel, mj);
    let strength = d2[0] + d2[1] + d2[2];
    let pref = omega / (2.0 * consts::EPS_0 * consts::HBAR);

    // Guided branches.
    let modes = guided::solve_modes_dispersive(fibre, omega, dn1_domega)?;
    let mut branches = Vec::with_capacity(modes.branches.len());
    let mut guided_total = 0.0;
    for branch in &modes.branches {
        let mut rate = 0.0;
        if strength > 0.0 {
            for f in [1, -1] {
                for &p in branch.kind.p_values() {
                    let e = branch.profile(site.r, p, f);
                    let c = couplings(&e, p * branch.m, site.phi);
                    rate += pref * branch.beta_prime * dot3(&d2, &c);
                }
            }
        }
        guided_total += rate;
        branches.push(BranchRate {
            label: branch.label(),
            m: branch.m,
            beta: branch.beta,
            beta_prime: branch.beta_prime,
            rate,
        });
    }

    // Radiative continuum: β = k n₂ sin θ flattens the band edges, m-shells
    // are added until three consecutive ones are negligible.
    let mut radiative_total = 0.0;
    if strength > 0.0 {
        let edge = omega / consts::C_LIGHT * fibre.n2;
        let opts = AdaptiveOpts {
            rel_tol: knobs.quad_rel_tol,
            init_panels: ((edge * site.r).ceil() as usize).max(8),
            ..AdaptiveOpts::default()
        };
        let mut quiet_shells = 0;
        let mut shell = 0;
        loop {
            let mut shell_sum = 0.0;
            let orders: &[i32] = if shell == 0 { &[0] } else { &[shell, -shell] };
            for &m in orders {
                for p in [1, -1] {
                    shell_sum += radiative_order(
                        fibre, omega, m, p, &d2, site, edge, &opts,
                    )?;
                }
            }
            radiative_total += shell_sum;
            if shell > 0 && shell_sum <= knobs.msum_rel_tol * radiative_total {
                quiet_shells += 1;
                if quiet_shells >= 3 {
                    break;
                }
            } else {
                quiet_shells = 0;
            }
            shell += 1;
            if shell > knobs.max_m {
                return Err(Error::Numerics(format!(
                    "azimuthal sum for {} → {} not converged at m = {}",
                    channel.upper, channel.lower, knobs.max_m
                )));
            }
        }
        radiative_total *= pref;
    }

    Ok(ChannelRates {
        upper: channel.upper,
        lower: channel.lower,
        mj,
        omega,
        wavelength: channel.wavelength,
        n1: fibre.n1,
        v_number: fibre.v_number(omega),
        vacuum: channel.vacuum_rate(),
        guided: guided_total,
        radiative: radiative_total,
        branches,
    })
}

/// ∫ dβ Σ_q d_q² |u_q*·e|² for one (m, p), without the ω/2ε₀ħ prefactor.
#[allow(clippy::too_many_arguments)]
fn radiative_order(
    fibre: &Fibre,
    omega: f64,
    m: i32,
    p: i32,
    d2: &[f64; 3],
    site: Site,
    edge: f64,
    opts: &AdaptiveOpts,
) -> Result<f64> {
    let mut failure: Option<Error> = None;
    let mut integrand = |theta: f64| -> f64 {
        if failure.is_some() {
            return 0.0;
        }
        let beta = edge * theta.sin();
        match radiative::build_mode(fibre, omega, beta, m, p) {
            Ok(mode) => {
                let e = mode.profile(site.r);
                let c = couplings(&e, m, site.phi);
                edge * theta.cos() * dot3(d2, &c)
            }
            Err(err) => {
                failure = Some(err);
                0.0
            }
        }
    };
    let value = integrate_adaptive(
        &mut integrand,
        -std::f64::consts::FRAC_PI_2,
        std::f64::consts::FRAC_PI_2,
        opts,
    )
    .map_err(|err| match err {
        Error::Numerics(msg) => {
            Error::Numerics(format!("continuum order m = {m}, p = {p}: {msg}"))
        }
        other => other,
    })?;
    match failure {
        Some(err) => Err(err),
        None => Ok(value),
    }
}

/// Rates of every decay channel of `state`, with the per-channel core index
/// resolved from the atom's dispersion table and vacuum outside.
pub fn state_rates(
    atom: &AtomData,
    fibre_radius: f64,
    state: AtomicState,
    site: Site,
    knobs: &Knobs,
) -> Result<StateRates> {
    let mut out = StateRates {
        state,
        fibre_radius,
        site,
        guided: 0.0,
        radiative: 0.0,
        vacuum: 0.0,
        channels: Vec::new(),
    };
    for channel in atom.channels_from(state.level)? {
        let n1 = atom.dispersion.index_at(channel.wavelength);
        let slope = atom.dispersion.dn_domega_at(channel.wavelength);
        let fibre = Fibre::new(fibre_radius, n1, 1.0)?;
        let rates = channel_rates(&fibre, &channel, slope, state.mj, site, knobs)?;
        out.guided += rates.guided;
        out.radiative += rates.radiative;
        out.vacuum += rates.vacuum;
        out.channels.push(rates);
    }
    Ok(out)
}

/// Decay-induced decoherence rate of a superposition of two states: half the
/// sum of their total emission rates.
pub fn decoherence_rate(a: &StateRates, b: &StateRates) -> f64 {
    0.5 * (a.total() + b.total())
}
