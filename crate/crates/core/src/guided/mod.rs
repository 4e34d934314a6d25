//! Bound (guided) modes of a step-index cylindrical waveguide.
//!
//! A bound mode at angular frequency `ω` propagates with `k n₂ < β < k n₁`
//! (`k = ω/c`): it is oscillatory in the core of index `n₁` and evanescent in
//! the cladding of index `n₂`.  Matching the tangential field components at
//! the core boundary yields a transcendental dispersion relation whose roots
//! in `β` form a finite set of branches — the familiar HE/EH hybrid modes and
//! the TE/TM modes of azimuthal order zero.
//!
//! The solver scans a dense grid in `x = β/k`, brackets every sign change of
//! a pole-free residual, polishes each bracket by bisection, classifies the
//! branch, and attaches the group slope `dβ/dω` (by re-solving at shifted
//! frequencies) and the normalization amplitude (in closed form, cross-checked
//! against direct quadrature in the tests).  Field profiles are normalized so
//! that `∫ dφ ∫ n(r)² |e|² r dr = 1`.

use crate::error::{Error, Result};
use crate::specfun::{bessel_j, bessel_j_prime, bessel_k, bessel_k_prime};
use crate::{consts, C64};

/// First zero of J₀; a fibre carries a single bound branch iff its V number
/// is below this.
pub const SINGLE_MODE_V: f64 = 2.404825557695773;

/// Margin keeping the scan strictly inside the open interval (k n₂, k n₁).
const EDGE_MARGIN: f64 = 1e-9;
/// Uniform scan points in x = β/k.
const SCAN_POINTS: usize = 12_000;
/// Extra log-spaced points hugging the lower edge, where weakly bound
/// branches (tiny `γa`) hide between uniform grid nodes.
const TAIL_POINTS: usize = 300;
const TAIL_DELTA_MIN: f64 = 1e-12;
/// Below x = n₂(1 + TAIL_SWITCH) the hybrid residual is evaluated in its
/// cancellation-free tail form; see [`Geometry::hybrid_tail`].
const TAIL_SWITCH: f64 = 1e-3;
/// Relative half-step used for the dβ/dω finite difference.
const GROUP_STEP: f64 = 1e-6;

/// Fibre cross-section: radius and the two refractive indices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fibre {
    /// Core radius in m.
    pub radius: f64,
    /// Core index.
    pub n1: f64,
    /// Cladding index (normally 1 for vacuum).
    pub n2: f64,
}

impl Fibre {
    /// `n1 == n2` is allowed: the fibre is then optically absent and carries
    /// no bound modes.
    pub fn new(radius: f64, n1: f64, n2: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Domain(format!("fibre radius {radius} must be positive")));
        }
        if !(n2 >= 1.0) || !(n1 >= n2) || !n1.is_finite() {
            return Err(Error::Domain(format!(
                "indices must satisfy n1 >= n2 >= 1, got n1 = {n1}, n2 = {n2}"
            )));
        }
        Ok(Fibre { radius, n1, n2 })
    }

    /// Normalized frequency V = k a sqrt(n1² - n2²).
    pub fn v_number(&self, omega: f64) -> f64 {
        let k = omega / consts::C_LIGHT;
        k * self.radius * (self.n1 * self.n1 - self.n2 * self.n2).sqrt()
    }

    /// True when only the fundamental branch can propagate at `omega`.
    pub fn is_single_mode(&self, omega: f64) -> bool {
        self.v_number(omega) < SINGLE_MODE_V
    }
}

/// Transverse family of a bound branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchKind {
    /// Hybrid branch with dominant magnetic axial field.
    He,
    /// Hybrid branch with dominant electric axial field.
    Eh,
    /// Transverse-electric branch (m = 0, e_z = 0).
    Te,
    /// Transverse-magnetic branch (m = 0, only e_r and e_z).
    Tm,
}

impl BranchKind {
    fn tag(self) -> &'static str {
        match self {
            BranchKind::He => "HE",
            BranchKind::Eh => "EH",
            BranchKind::Te => "TE",
            BranchKind::Tm => "TM",
        }
    }

    /// Number of distinct polarization labels carried by the branch.
    pub fn polarization_count(self) -> usize {
        match self {
            BranchKind::He | BranchKind::Eh => 2,
            BranchKind::Te | BranchKind::Tm => 1,
        }
    }

    /// Polarization labels to sum over.
    pub fn p_values(self) -> &'static [i32] {
        match self {
            BranchKind::He | BranchKind::Eh => &[1, -1],
            BranchKind::Te | BranchKind::Tm => &[1],
        }
    }
}

/// One bound branch at a fixed frequency, fully normalized.
#[derive(Clone, Copy, Debug)]
pub struct Branch {
    pub fibre: Fibre,
    pub omega: f64,
    /// Azimuthal order (≥ 0; the two circulation senses are carried by p).
    pub m: i32,
    pub kind: BranchKind,
    /// 1-based index counting branches of this (m, kind) by descending β.
    pub radial_index: u32,
    /// Propagation constant in 1/m.
    pub beta: f64,
    /// Group slope dβ/dω in s/m.
    pub beta_prime: f64,
    /// Transverse wavenumber in the core, κ = sqrt(n1²k² - β²).
    pub kappa: f64,
    /// Decay constant in the cladding, γ = sqrt(β² - n2²k²).
    pub gamma: f64,
    /// Profile asymmetry parameter (meaningless for the TE family).
    pub s: f64,
    /// Normalization amplitude (|C| for hybrid/TM, the e_φ amplitude for TE).
    pub amp: f64,
}

impl Branch {
    /// Conventional label such as `HE11` or `TM01`.
    pub fn label(&self) -> String {
        format!("{}{}{}", self.kind.tag(), self.m, self.radial_index)
    }

    /// Relative residual of the dispersion relation at the stored β, measured
    /// as the backward error in `x = β/k`: the Newton correction `|F/(x F')|`
    /// of the scanned residual `F`.  This is the relative distance to the
    /// exact root, and unlike the raw `|F|` it is well conditioned even for
    /// weakly bound branches, where `F` is so steep in `x` that a root
    /// converged to the last floating-point digit still leaves a sizable
    /// forward value.
    pub fn eigen_residual(&self) -> f64 {
        let k = self.omega / consts::C_LIGHT;
        let geom = Geometry::new(self.fibre, k);
        let x = self.beta / k;
        let m = self.m;
        let f: Box<dyn Fn(f64) -> f64> = match self.kind {
            BranchKind::Te => Box::new(move |x| geom.factors(0, x).0),
            BranchKind::Tm => Box::new(move |x| geom.factors(0, x).1),
            _ => Box::new(move |x| geom.hybrid_any(m, x)),
        };
        // Keep the difference stencil inside the open bound interval.
        let h = (1e-7 * x)
            .min(0.45 * (x - self.fibre.n2))
            .min(0.45 * (self.fibre.n1 - x))
            .max(f64::EPSILON * x);
        let slope = (f(x + h) - f(x - h)) / (2.0 * h);
        let value = f(x);
        if !slope.is_finite() || slope == 0.0 || !value.is_finite() {
            return f64::INFINITY;
        }
        (value / (slope * x)).abs()
    }

    /// Cylindrical components `(e_r, e_φ, e_z)` of the normalized profile at
    /// radius `r`, for circulation label `p` and propagation direction `f`
    /// (both ±1).  The accompanying propagation phase `exp(i(fβz + pmφ))`
    /// is not included.
    pub fn profile(&self, r: f64, p: i32, f: i32) -> [C64; 3] {
        debug_assert!(p == 1 || p == -1);
        debug_assert!(f == 1 || f == -1);
        let a = self.fibre.radius;
        let m = self.m;
        if self.kind == BranchKind::Te {
            // Purely azimuthal electric field; no polarization label.
            let e_phi = if r < a {
                self.amp * bessel_j(1, self.kappa * r)
            } else {
                self.amp * bessel_j(1, self.kappa * a) / bessel_k(1, self.gamma * a)
                    * bessel_k(1, self.gamma * r)
            };
            return [C64::new(0.0, 0.0), C64::new(e_phi, 0.0), C64::new(0.0, 0.0)];
        }
        let (ms, pf) = (m as f64 * self.s, p as f64);
        let c = self.amp;
        let (er, ephi, ez) = if r < a {
            let ratio = bessel_k(m, self.gamma * a) / bessel_j(m, self.kappa * a);
            let jm1 = bessel_j(m - 1, self.kappa * r);
            let jp1 = bessel_j(m + 1, self.kappa * r);
            let pref = self.beta * c * ratio / (2.0 * self.kappa);
            (
                -pref * (jm1 * (1.0 - ms) - jp1 * (1.0 + ms)), // divided by i below
                pf * pref * (jm1 * (1.0 - ms) + jp1 * (1.0 + ms)),
                c * ratio * bessel_j(m, self.kappa * r),
            )
        } else {
            let km1 = bessel_k(m - 1, self.gamma * r);
            let kp1 = bessel_k(m + 1, self.gamma * r);
            let pref = self.beta * c / (2.0 * self.gamma);
            (
                -pref * (km1 * (1.0 - ms) + kp1 * (1.0 + ms)),
                pf * pref * (km1 * (1.0 - ms) - kp1 * (1.0 + ms)),
                c * bessel_k(m, self.gamma * r),
            )
        };
        // e_r carries the 1/i; the axial component flips with the
        // propagation direction.
        [
            C64::new(0.0, er),
            C64::new(ephi, 0.0),
            C64::new(f as f64 * ez, 0.0),
        ]
    }
}

/// Scan bookkeeping for one residual family at one azimuthal order.
#[derive(Clone, Copy, Debug)]
pub struct FamilyScan {
    pub m: i32,
    pub family: &'static str,
    pub grid_points: usize,
    pub brackets: usize,
    pub roots: usize,
}

/// Diagnostics accumulated while solving for the branches.
#[derive(Clone, Debug, Default)]
pub struct ScanReport {
    pub v_number: f64,
    pub families: Vec<FamilyScan>,
}

/// The complete set of bound branches at one frequency.
#[derive(Clone, Debug)]
pub struct ModeSet {
    pub branches: Vec<Branch>,
    pub report: ScanReport,
}

/// Precomputed scan geometry: everything depends on β only through x = β/k.
#[derive(Clone, Copy)]
struct Geometry {
    ka: f64,
    n1: f64,
    n2: f64,
}

impl Geometry {
    fn new(fibre: Fibre, k: f64) -> Self {
        Geometry { ka: k * fibre.radius, n1: fibre.n1, n2: fibre.n2 }
    }

    fn p_of(&self, x: f64) -> f64 {
        self.ka * (self.n1 * self.n1 - x * x).max(0.0).sqrt()
    }

    fn q_of(&self, x: f64) -> f64 {
        self.ka * (x * x - self.n2 * self.n2).max(0.0).sqrt()
    }

    /// TE factor Q J' K + P J K' and TM factor n1² Q J' K + n2² P J K',
    /// evaluated at order m.
    fn factors(&self, m: i32, x: f64) -> (f64, f64, f64, f64) {
        let p = self.p_of(x);
        let q = self.q_of(x);
        let j = bessel_j(m, p);
        let jp = bessel_j_prime(m, p);
        let kk = bessel_k(m, q);
        let kp = bessel_k_prime(m, q);
        let te = q * jp * kk + p * j * kp;
        let tm = self.n1 * self.n1 * q * jp * kk + self.n2 * self.n2 * p * j * kp;
        (te, tm, j * kk, p * q)
    }

    /// Pole-free residual of the full dispersion relation for hybrid orders.
    /// Multiplying the relation by (P J Q K)² clears the poles at the zeros
    /// of J_m, where this expression is strictly positive: every sign change
    /// is a genuine root.
    fn hybrid_f(&self, m: i32, x: f64) -> f64 {
        let (te, tm, jk, pq) = self.factors(m, x);
        let p = self.p_of(x);
        let q = self.q_of(x);
        let sum_sq = p * p + q * q;
        let rhs = (m as f64 * x / self.ka).powi(2) * sum_sq * sum_sq * (jk / pq) * (jk / pq)
            * (self.ka * self.ka);
        tm * te - rhs
    }

    /// The three stable pieces of the tail form of the hybrid relation:
    /// `R = A₀B₀ − m²x²/P⁴ − w·W` with `w = 1/Q²`.
    ///
    /// As x → n₂ the cleared residual [`Self::hybrid_f`] subtracts two
    /// quantities that agree through O(1/Q⁴) and loses every significant
    /// digit, which once showed up as duplicate and phantom sign changes on
    /// the fine part of the scan grid.  Substituting
    /// `K'_m(Q) = −K_{m−1}(Q) − (m/Q)K_m(Q)` and `x² = n₂² + Q²/(ka)²` into
    /// the ratio form of the relation cancels the divergent orders exactly,
    /// leaving coefficients that stay O(1) however small Q gets.
    fn tail_pieces(&self, m: i32, x: f64) -> (f64, f64, f64, f64) {
        let p = self.p_of(x);
        let q = self.q_of(x);
        let mf = m as f64;
        let jt = bessel_j_prime(m, p) / (p * bessel_j(m, p));
        let rho = bessel_k(m - 1, q) / (q * bessel_k(m, q));
        let w = 1.0 / (q * q);
        let sp = 1.0 / (p * p);
        let n1sq = self.n1 * self.n1;
        let n2sq = self.n2 * self.n2;
        let a0 = jt - rho;
        let b0 = n1sq * jt - n2sq * rho;
        let x2 = x * x;
        let coeff = mf * (n2sq * a0 + b0) + 2.0 * mf * mf * x2 * sp + (mf / self.ka).powi(2);
        (a0 * b0, mf * mf * x2 * sp * sp, w, coeff)
    }

    /// Tail-form residual; same sign as [`Self::hybrid_f`] (they differ by
    /// the positive factor (P J Q K)²).
    fn hybrid_tail(&self, m: i32, x: f64) -> f64 {
        let (ab, rhs0, w, coeff) = self.tail_pieces(m, x);
        ab - rhs0 - w * coeff
    }

    /// True where the tail form should replace the cleared form.
    fn in_tail(&self, x: f64) -> bool {
        x < self.n2 * (1.0 + TAIL_SWITCH)
    }

    /// Hybrid residual with the accuracy-appropriate form for the region.
    fn hybrid_any(&self, m: i32, x: f64) -> f64 {
        if self.in_tail(x) {
            self.hybrid_tail(m, x)
        } else {
            self.hybrid_f(m, x)
        }
    }

    /// Profile asymmetry parameter of the printed hybrid family.
    fn s_param(&self, m: i32, x: f64) -> f64 {
        let p = self.p_of(x);
        let q = self.q_of(x);
        let num = 1.0 / (q * q) + 1.0 / (p * p);
        let den = bessel_j_prime(m, p) / (p * bessel_j(m, p))
            + bessel_k_prime(m, q) / (q * bessel_k(m, q));
        num / den
    }
}

/// Candidate β/k interval with a confirmed sign change.
struct Bracket {
    lo: f64,
    hi: f64,
}

/// Grid of scan abscissae: uniform over the open interval plus a
/// logarithmic tail hugging the lower edge.
fn scan_grid(n1: f64, n2: f64) -> Vec<f64> {
    let x_lo = n2 * (1.0 + EDGE_MARGIN);
    let x_hi = n1 * (1.0 - EDGE_MARGIN);
    if x_lo >= x_hi {
        return Vec::new();
    }
    let mut xs = Vec::with_capacity(SCAN_POINTS + TAIL_POINTS);
    let step = (x_hi - x_lo) / (SCAN_POINTS - 1) as f64;
    // Log tail between the lower edge and the second uniform node.
    let delta_max = (x_lo + step - n2) / n2;
    if delta_max > TAIL_DELTA_MIN {
        let ratio = (delta_max / TAIL_DELTA_MIN).ln();
        for i in 0..TAIL_POINTS {
            let t = i as f64 / TAIL_POINTS as f64;
            xs.push(n2 * (1.0 + TAIL_DELTA_MIN * (ratio * t).exp()));
        }
    }
    for i in 0..SCAN_POINTS {
        xs.push(x_lo + i as f64 * step);
    }
    // The tail overlaps the first uniform node: the scan must walk a
    // monotone grid or a root in the overlap is bracketed twice.
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();
    xs
}

/// Bracket every sign change of `f` on the grid; non-finite samples are
/// skipped (they can only occur deep in never-populated corners).
fn find_brackets(f: &dyn Fn(f64) -> f64, xs: &[f64]) -> Vec<Bracket> {
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for &x in xs {
        let y = f(x);
        if !y.is_finite() {
            prev = None;
            continue;
        }
        if let Some((x0, y0)) = prev {
            if y == 0.0 {
                out.push(Bracket { lo: x, hi: x });
            } else if y0 * y < 0.0 {
                out.push(Bracket { lo: x0, hi: x });
            }
        }
        prev = Some((x, y));
    }
    out
}

/// Bisect a bracketed root to near machine precision in x.
fn bisect(f: &dyn Fn(f64) -> f64, bracket: &Bracket) -> f64 {
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    if lo == hi {
        return lo;
    }
    let mut f_lo = f(lo);
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_lo * f_mid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
        if (hi - lo) < 1e-15 * mid {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Track a known root to a slightly different geometry (same residual family,
/// scaled ka) by expanding a bracket around the old position.
fn continue_root(f: &dyn Fn(f64) -> f64, x0: f64, n1: f64, n2: f64) -> Option<f64> {
    let lo_lim = n2 * (1.0 + TAIL_DELTA_MIN);
    let hi_lim = n1 * (1.0 - EDGE_MARGIN);
    let mut w = 1e-9;
    while w <= 2e-2 {
        let lo = (x0 - w * x0).max(lo_lim);
        let hi = (x0 + w * x0).min(hi_lim);
        if lo < hi {
            let (f_lo, f_hi) = (f(lo), f(hi));
            if f_lo.is_finite() && f_hi.is_finite() && f_lo * f_hi < 0.0 {
                return Some(bisect(f, &Bracket { lo, hi }));
            }
        }
        w *= 10.0;
    }
    None
}

/// Solve for every bound branch of `fibre` at angular frequency `omega`.
///
/// Branches come back sorted by descending β (fundamental first).  An empty
/// set is not an error: thin fibres at long wavelengths bind their
/// fundamental branch so weakly that it carries no measurable field near the
/// fibre, and it drops out of the representable range.
pub fn solve_modes(fibre: &Fibre, omega: f64) -> Result<ModeSet> {
    solve_modes_dispersive(fibre, omega, 0.0)
}

/// Like [`solve_modes`], but with a chromatic core: `dn1_domega` is the slope
/// of the core index at `omega`, and the group slope β′ of each branch is the
/// full derivative along the material dispersion curve.  Near the ultraviolet
/// the material term is the dominant correction to the group index of silica,
/// so rates that weight by β′ need it.
pub fn solve_modes_dispersive(fibre: &Fibre, omega: f64, dn1_domega: f64) -> Result<ModeSet> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain(format!("angular frequency {omega} must be positive")));
    }
    if !dn1_domega.is_finite() {
        return Err(Error::Domain(format!("index slope {dn1_domega} must be finite")));
    }
    let mut report = ScanReport { v_number: fibre.v_number(omega), ..Default::default() };
    if fibre.n1 == fibre.n2 {
        return Ok(ModeSet { branches: Vec::new(), report });
    }
    let k = omega / consts::C_LIGHT;
    let geom = Geometry::new(*fibre, k);
    let xs = scan_grid(fibre.n1, fibre.n2);

    // (m, kind, x-root) accumulated over families.
    let mut found: Vec<(i32, BranchKind, f64)> = Vec::new();
    let scan_family =
        |m: i32, family: &'static str, f: &dyn Fn(f64) -> f64, report: &mut ScanReport| -> Vec<f64> {
            let brackets = find_brackets(f, &xs);
            let mut roots: Vec<f64> = brackets.iter().map(|b| bisect(f, b)).collect();
            // Adjacent brackets occasionally bisect to the same point to
            // machine precision; keep one.
            roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
            roots.dedup_by(|a, b| (*a - *b).abs() <= 32.0 * f64::EPSILON * b.abs());
            report.families.push(FamilyScan {
                m,
                family,
                grid_points: xs.len(),
                brackets: brackets.len(),
                roots: roots.len(),
            });
            roots
        };

    // m = 0 splits exactly into TE and TM factors, scanned separately so
    // that a TE and a TM root in the same grid cell cannot hide each other.
    for x in scan_family(0, "TE", &|x| {
        let (te, _, _, _) = geom.factors(0, x);
        te
    }, &mut report) {
        found.push((0, BranchKind::Te, x));
    }
    for x in scan_family(0, "TM", &|x| {
        let (_, tm, _, _) = geom.factors(0, x);
        tm
    }, &mut report) {
        found.push((0, BranchKind::Tm, x));
    }

    // Hybrid orders: stop at the first m with no roots (cutoffs increase
    // with m, so nothing exists beyond it).
    for m in 1..=64 {
        let roots = scan_family(m, "hybrid", &|x| geom.hybrid_any(m, x), &mut report);
        if roots.is_empty() {
            break;
        }
        if m == 64 {
            return Err(Error::Numerics(
                "bound-mode scan did not terminate below azimuthal order 64".into(),
            ));
        }
        for x in roots {
            let s = geom.s_param(m, x);
            let kind = if s < 0.0 { BranchKind::He } else { BranchKind::Eh };
            found.push((m, kind, x));
        }
    }

    // Group slope by re-solving at shifted frequencies: ka scales to
    // ka(1 ± δ) and the core index follows its dispersion curve, so the
    // finite difference yields the full dβ/dω including the material term.
    let mut branches = Vec::with_capacity(found.len());
    for &(m, kind, x) in &found {
        let beta = x * k;
        let kappa = k * (fibre.n1 * fibre.n1 - x * x).max(0.0).sqrt();
        let gamma = k * (x * x - fibre.n2 * fibre.n2).max(0.0).sqrt();
        let n1_at = |scale: f64| fibre.n1 + dn1_domega * omega * (scale - 1.0);
        let residual_at = |scale: f64| -> Box<dyn Fn(f64) -> f64> {
            let g = Geometry { ka: geom.ka * scale, n1: n1_at(scale), n2: geom.n2 };
            match kind {
                BranchKind::Te => Box::new(move |x| {
                    let (te, _, _, _) = g.factors(0, x);
                    te
                }),
                BranchKind::Tm => Box::new(move |x| {
                    let (_, tm, _, _) = g.factors(0, x);
                    tm
                }),
                _ => Box::new(move |x| g.hybrid_any(m, x)),
            }
        };
        let omega_p = omega * (1.0 + GROUP_STEP);
        let omega_m = omega * (1.0 - GROUP_STEP);
        let x_p =
            continue_root(&*residual_at(1.0 + GROUP_STEP), x, n1_at(1.0 + GROUP_STEP), fibre.n2);
        let x_m =
            continue_root(&*residual_at(1.0 - GROUP_STEP), x, n1_at(1.0 - GROUP_STEP), fibre.n2);
        let beta_prime = match (x_p, x_m) {
            (Some(xp), Some(xm)) => {
                (xp * omega_p - xm * omega_m) / (consts::C_LIGHT * (omega_p - omega_m))
            }
            (Some(xp), None) => (xp * omega_p - beta * consts::C_LIGHT) // β c has units of ω x
                / (consts::C_LIGHT * (omega_p - omega)),
            (None, Some(xm)) => (beta * consts::C_LIGHT - xm * omega_m)
                / (consts::C_LIGHT * (omega - omega_m)),
            (None, None) => {
                return Err(Error::Numerics(format!(
                    "lost branch m = {m} while estimating its group slope"
                )))
            }
        };

        let s = if kind == BranchKind::Te { 0.0 } else { geom.s_param(m, x) };
        let amp = match kind {
            BranchKind::Te => te_amplitude(fibre, kappa, gamma),
            _ => hybrid_amplitude(fibre, m, beta, kappa, gamma, s),
        };
        branches.push(Branch {
            fibre: *fibre,
            omega,
            m,
            kind,
            radial_index: 0,
            beta,
            beta_prime,
            kappa,
            gamma,
            s,
            amp,
        });
    }

    branches.sort_by(|a, b| b.beta.partial_cmp(&a.beta).unwrap());
    // Radial index: 1-based count within each (m, kind) family by
    // descending β.
    for i in 0..branches.len() {
        let rank = branches[..i]
            .iter()
            .filter(|b| b.m == branches[i].m && b.kind == branches[i].kind)
            .count();
        branches[i].radial_index = rank as u32 + 1;
    }
    Ok(ModeSet { branches, report })
}

/// Closed-form |C| for the hybrid/TM family: products of Lommel-type
/// integrals over the core and cladding.
fn hybrid_amplitude(fibre: &Fibre, m: i32, beta: f64, kappa: f64, gamma: f64, s: f64) -> f64 {
    let a = fibre.radius;
    let p = kappa * a;
    let q = gamma * a;
    let ms = m as f64 * s;
    let jm = bessel_j(m, p);
    let km = bessel_k(m, q);

    let lommel_j = |n: i32| -> f64 {
        let c = bessel_j(n, p);
        c * c - bessel_j(n - 1, p) * bessel_j(n + 1, p)
    };
    let lommel_k = |n: i32| -> f64 {
        let c = bessel_k(n, q);
        bessel_k(n - 1, q) * bessel_k(n + 1, q) - c * c
    };

    let a1 = ((1.0 - ms) * (1.0 - ms) * lommel_j(m - 1)
        + (1.0 + ms) * (1.0 + ms) * lommel_j(m + 1)
        + 2.0 * (kappa / beta).powi(2) * lommel_j(m))
        / (kappa * jm).powi(2);
    let a2 = ((1.0 - ms) * (1.0 - ms) * lommel_k(m - 1)
        + (1.0 + ms) * (1.0 + ms) * lommel_k(m + 1)
        + 2.0 * (gamma / beta).powi(2) * lommel_k(m))
        / (gamma * km).powi(2);

    let n1 = fibre.n1;
    let n2 = fibre.n2;
    2.0 / (a
        * beta
        * km
        * (2.0 * std::f64::consts::PI * (n1 * n1 * a1 + n2 * n2 * a2)).sqrt())
}

/// Closed-form amplitude of the TE family (e_φ = amp · J₁(κr) in the core).
fn te_amplitude(fibre: &Fibre, kappa: f64, gamma: f64) -> f64 {
    let a = fibre.radius;
    let p = kappa * a;
    let q = gamma * a;
    let j1 = bessel_j(1, p);
    let k1 = bessel_k(1, q);
    let core = bessel_j(1, p) * bessel_j(1, p) - bessel_j(0, p) * bessel_j(2, p);
    let clad = bessel_k(0, q) * bessel_k(2, q) - k1 * k1;
    let n1 = fibre.n1;
    let n2 = fibre.n2;
    1.0 / (a
        * (std::f64::consts::PI * (n1 * n1 * core + n2 * n2 * (j1 / k1).powi(2) * clad)).sqrt())
}

#[cfg(test)]
mod tests {
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    use super::*;
    use crate::quad::{integrate_adaptive, AdaptiveOpts};

    /// 589 nm light on a 200 nm radius silica fibre: V ≈ 2.24, single mode.
    fn reference_fibre() -> (Fibre, f64) {
        let fibre = Fibre::new(200e-9, 1.45, 1.0).unwrap();
        let omega = 2.0 * std::f64::consts::PI * consts::C_LIGHT / 589e-9;
        (fibre, omega)
    }

    fn norm_quadrature(branch: &Branch, p: i32) -> f64 {
        let fibre = branch.fibre;
        let a = fibre.radius;
        let density = |r: f64, n: f64| -> f64 {
            let e = branch.profile(r, p, 1);
            n * n * e.iter().map(|c| c.norm_sqr()).sum::<f64>() * r
        };
        let opts = AdaptiveOpts { rel_tol: 1e-12, ..Default::default() };
        let inner =
            integrate_adaptive(&mut |r| density(r, fibre.n1), 0.0, a, &opts).unwrap();
        let r_max = a + 60.0 / branch.gamma;
        let outer =
            integrate_adaptive(&mut |r| density(r, fibre.n2), a, r_max, &opts).unwrap();
        2.0 * std::f64::consts::PI * (inner + outer)
    }

    #[test]
    fn single_mode_fibre_has_he11_only() {
        let (fibre, omega) = reference_fibre();
        assert!(fibre.is_single_mode(omega));
        let modes = solve_modes(&fibre, omega).unwrap();
        assert_eq!(modes.branches.len(), 1);
        let he11 = &modes.branches[0];
        assert_eq!(he11.label(), "HE11");
        let k = omega / consts::C_LIGHT;
        assert!(he11.beta > k * fibre.n2 && he11.beta < k * fibre.n1);
        assert!(he11.eigen_residual() < 1e-10);
        // Group slope lands in the physically sensible window.
        let c = consts::C_LIGHT;
        assert!(he11.beta_prime > 0.8 / c && he11.beta_prime < 2.0 * fibre.n1 / c);
    }

    #[test]
    fn multimode_census_matches_cutoff_table() {
        // Census checked against an independent high-precision scan of the
        // dispersion relation: at this contrast the HE41 cutoff lies well
        // above V = 5.2 (HE-family cutoffs rise with index contrast), so
        // eight branches exist.
        let omega = 2.0 * std::f64::consts::PI * consts::C_LIGHT / 589e-9;
        let k = omega / consts::C_LIGHT;
        let v_target = 5.2;
        let n1 = 1.45f64;
        let a = v_target / (k * (n1 * n1 - 1.0).sqrt());
        let fibre = Fibre::new(a, n1, 1.0).unwrap();
        assert_relative_eq!(fibre.v_number(omega), v_target, max_relative = 1e-12);
        let modes = solve_modes(&fibre, omega).unwrap();
        let mut labels: Vec<String> = modes.branches.iter().map(|b| b.label()).collect();
        labels.sort();
        let mut expected = vec![
            "HE11", "TE01", "TM01", "HE21", "EH11", "HE12", "HE31", "EH21",
        ];
        expected.sort_unstable();
        assert_eq!(labels, expected);
        for b in &modes.branches {
            assert!(b.eigen_residual() < 1e-10, "{}: residual {}", b.label(), b.eigen_residual());
        }
        // The fundamental has the largest β.
        assert_eq!(modes.branches[0].label(), "HE11");
    }

    #[test]
    fn profiles_are_continuous_where_maxwell_demands() {
        let omega = 2.0 * std::f64::consts::PI * consts::C_LIGHT / 589e-9;
        let k = omega / consts::C_LIGHT;
        let n1 = 1.45f64;
        let a = 5.2 / (k * (n1 * n1 - 1.0).sqrt());
        let fibre = Fibre::new(a, n1, 1.0).unwrap();
        let modes = solve_modes(&fibre, omega).unwrap();
        let eps = a * 1e-9;
        for b in &modes.branches {
            for p in b.kind.p_values() {
                let inner = b.profile(a - eps, *p, 1);
                let outer = b.profile(a + eps, *p, 1);
                let scale = inner.iter().map(|c| c.norm()).fold(0.0, f64::max);
                // Tangential components e_φ and e_z are continuous.
                assert_abs_diff_eq!(
                    (inner[1] - outer[1]).norm() / scale, 0.0, epsilon = 1e-6
                );
                assert_abs_diff_eq!(
                    (inner[2] - outer[2]).norm() / scale, 0.0, epsilon = 1e-6
                );
                // The normal displacement n² e_r is continuous.
                let d_in = inner[0] * fibre.n1 * fibre.n1;
                let d_out = outer[0] * fibre.n2 * fibre.n2;
                assert_abs_diff_eq!((d_in - d_out).norm() / scale, 0.0, epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn closed_form_normalization_matches_quadrature() {
        let (fibre, omega) = reference_fibre();
        let modes = solve_modes(&fibre, omega).unwrap();
        let he11 = &modes.branches[0];
        for p in [1, -1] {
            assert_relative_eq!(norm_quadrature(he11, p), 1.0, max_relative = 1e-8);
        }
        // Same check across a multimode census, all families.
        let k = omega / consts::C_LIGHT;
        let a = 5.2 / (k * (fibre.n1 * fibre.n1 - 1.0).sqrt());
        let thick = Fibre::new(a, fibre.n1, 1.0).unwrap();
        for b in &solve_modes(&thick, omega).unwrap().branches {
            assert_relative_eq!(norm_quadrature(b, 1), 1.0, max_relative = 1e-7);
        }
    }

    #[test]
    fn tail_and_cleared_forms_agree_where_both_are_accurate() {
        // The two evaluations differ by the strictly positive factor
        // (P J Q K)^2, so their ratio must reproduce it.
        let geom = Geometry { ka: 2.5218889, n1: 1.467, n2: 1.0 };
        for m in 1..=3 {
            for &x in &[1.001, 1.01, 1.05, 1.2, 1.4] {
                let p = geom.p_of(x);
                let q = geom.q_of(x);
                let fac = (p * bessel_j(m, p) * q * bessel_k(m, q)).powi(2);
                let cleared = geom.hybrid_f(m, x);
                let tail = geom.hybrid_tail(m, x);
                assert_relative_eq!(cleared, tail * fac, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn weakly_bound_fundamental_is_found_exactly_once() {
        // Thin fibre far below every higher cutoff (V ≈ 0.74): the lone
        // branch hugs the lower edge of the bound interval, where the scan
        // once reported phantom duplicates.  Root checked against an
        // independent 25-digit scan of the dispersion relation.
        let fibre = Fibre::new(100e-9, 1.467, 1.0).unwrap();
        let omega = 2.0 * std::f64::consts::PI * consts::C_LIGHT / 912.0e-9;
        let modes = solve_modes(&fibre, omega).unwrap();
        assert_eq!(modes.branches.len(), 1);
        let he11 = &modes.branches[0];
        assert_eq!(he11.label(), "HE11");
        let x = he11.beta * consts::C_LIGHT / omega;
        assert_relative_eq!(x, 1.00002930932667, max_relative = 1e-10);
        assert!(he11.eigen_residual() < 1e-10);
        // Group slope of a barely bound wave is that of a free wave.
        assert_relative_eq!(he11.beta_prime * consts::C_LIGHT, 1.0, max_relative = 1e-2);
    }

    #[test]
    fn moderately_multimode_census_and_roots() {
        // V ≈ 2.71, just above the second set of cutoffs: exactly HE11,
        // TE01 and TM01.  Roots checked against the same independent scan.
        let fibre = Fibre::new(100e-9, 1.467, 1.0).unwrap();
        let omega = 2.0 * std::f64::consts::PI * consts::C_LIGHT / 249.146e-9;
        let modes = solve_modes(&fibre, omega).unwrap();
        let mut got: Vec<(String, f64)> = modes
            .branches
            .iter()
            .map(|b| (b.label(), b.beta * consts::C_LIGHT / omega))
            .collect();
        got.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(got.len(), 3);
        let expected = [
            ("HE11", 1.26584356522929),
            ("TE01", 1.04688519200032),
            ("TM01", 1.02397328377961),
        ];
        for ((label, x), (want_label, want_x)) in got.iter().zip(expected) {
            assert_eq!(label, want_label);
            assert_relative_eq!(*x, want_x, max_relative = 1e-10);
        }
    }

    #[test]
    fn absent_fibre_has_no_bound_modes() {
        let fibre = Fibre::new(100e-9, 1.0, 1.0).unwrap();
        let omega = 2.0 * std::f64::consts::PI * consts::C_LIGHT / 589e-9;
        let modes = solve_modes(&fibre, omega).unwrap();
        assert!(modes.branches.is_empty());
    }

    #[test]
    fn rejects_bad_geometry() {
        assert!(Fibre::new(-1.0, 1.45, 1.0).is_err());
        assert!(Fibre::new(1e-7, 0.9, 0.8).is_err());
        assert!(Fibre::new(1e-7, 1.2, 1.45).is_err());
        let fibre = Fibre::new(1e-7, 1.45, 1.0).unwrap();
        assert!(solve_modes(&fibre, -1.0).is_err());
    }
}
