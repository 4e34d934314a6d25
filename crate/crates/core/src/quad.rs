//! Gauss–Legendre quadrature with adaptive panel bisection.
//!
//! The integrands met in this crate are smooth inside a panel but can be
//! oscillatory (field products at large radii) or steep (evanescent tails),
//! so a fixed high-order rule per panel plus bisection-to-tolerance is both
//! simple and reliable.  Panels are refined until the parent/children
//! discrepancy of the 15-point rule falls below a locally apportioned share
//! of the requested tolerance.

use crate::error::{Error, Result};
use std::sync::OnceLock;

/// Nodes and weights of an n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the rule by Newton iteration on the Legendre polynomial;
    /// nodes converge to machine precision in a handful of steps.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        // Symmetric rule: find the non-negative half and mirror it.
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Recurrence (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 1..n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
                    p0 = p1;
                    p1 = p2;
                }
                dp = nf * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// Applies the rule to `f` over [a, b].
    pub fn integrate(&self, f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

fn rule15() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(15))
}

/// Options for [`integrate_adaptive`].
#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOpts {
    /// Relative tolerance on the total integral.
    pub rel_tol: f64,
    /// Number of equal panels the interval is seeded with before refinement;
    /// callers raise this for oscillatory integrands (≈ one panel per half
    /// oscillation is ample for the 15-point rule).
    pub init_panels: usize,
    /// Recursion depth limit per seed panel.  Panels that exhaust it are
    /// accepted as-is and their leftover residual is charged against the
    /// global error budget, so a feature too narrow for the depth limit only
    /// fails the integral if it genuinely breaks the requested tolerance.
    pub max_depth: u32,
}

impl Default for AdaptiveOpts {
    fn default() -> Self {
        AdaptiveOpts {
            rel_tol: 1e-10,
            init_panels: 8,
            max_depth: 40,
        }
    }
}

/// Integrates `f` over [a, b] by adaptive bisection of Gauss–Legendre panels.
///
/// Fails with a numerical error if the residual left in depth-exhausted
/// panels exceeds the requested tolerance of the whole integral, or if the
/// integrand returns a non-finite value (the offending abscissa is
/// reported).
pub fn integrate_adaptive(
    f: &mut dyn FnMut(f64) -> f64,
    a: f64,
    b: f64,
    opts: &AdaptiveOpts,
) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("integration bounds [{a}, {b}]")));
    }
    if a == b {
        return Ok(0.0);
    }
    let n0 = opts.init_panels.max(1);
    let width = (b - a) / n0 as f64;
    let guard = |x: f64, f: &mut dyn FnMut(f64) -> f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Numerics(format!("integrand non-finite at x = {x:e}")))
        }
    };
    // Seed pass establishes the L1 scale the relative tolerance refers to.
    let mut seeds = Vec::with_capacity(n0);
    let mut scale = 0.0;
    for i in 0..n0 {
        let lo = a + i as f64 * width;
        let hi = if i == n0 - 1 { b } else { lo + width };
        let est = rule15().integrate(&mut |x| guard(x, f).unwrap_or(f64::NAN), lo, hi);
        if !est.is_finite() {
            return Err(Error::Numerics(format!(
                "integrand non-finite in panel [{lo:e}, {hi:e}]"
            )));
        }
        scale += est.abs();
        seeds.push((lo, hi, est));
    }
    if scale == 0.0 {
        scale = f64::MIN_POSITIVE;
    }
    let eps_panel = opts.rel_tol * scale / n0 as f64;
    // The locally apportioned tolerance halves with each bisection level, but
    // chasing it below the roundoff level of the whole integral is
    // meaningless: once a panel's residual is at machine noise relative to
    // the total, further refinement only shuffles last-bit error around.
    let floor = f64::EPSILON * scale;
    let mut total = 0.0;
    let mut tally = Deficit::default();
    for (lo, hi, est) in seeds {
        total += refine(
            f,
            lo,
            hi,
            est,
            eps_panel,
            floor,
            opts.rel_tol,
            opts.max_depth,
            &mut tally,
        )?;
    }
    // Panels that exhausted the depth limit are acceptable as long as their
    // collective leftover residual stays within the global tolerance; an
    // unresolvable needle then costs its honest share of the error budget
    // instead of aborting an integral it cannot actually spoil.
    let eps_total = opts.rel_tol * scale;
    if tally.sum > eps_total {
        let (lo, hi) = tally.worst_span;
        return Err(Error::Numerics(format!(
            "adaptive quadrature failed to converge: unresolved residual {:e} exceeds \
             tolerance {eps_total:e} (worst interval [{lo:e}, {hi:e}], residual {:e})",
            tally.sum, tally.worst
        )));
    }
    Ok(total)
}

/// Residual left behind by panels that hit the bisection depth limit.
#[derive(Default)]
struct Deficit {
    sum: f64,
    worst: f64,
    worst_span: (f64, f64),
}

impl Deficit {
    fn charge(&mut self, residual: f64, a: f64, b: f64) {
        self.sum += residual;
        if residual > self.worst {
            self.worst = residual;
            self.worst_span = (a, b);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn refine(
    f: &mut dyn FnMut(f64) -> f64,
    a: f64,
    b: f64,
    whole: f64,
    eps: f64,
    floor: f64,
    rel_tol: f64,
    depth_left: u32,
    tally: &mut Deficit,
) -> Result<f64> {
    let mid = 0.5 * (a + b);
    let left = rule15().integrate(f, a, mid);
    let right = rule15().integrate(f, mid, b);
    let sum = left + right;
    if !sum.is_finite() {
        return Err(Error::Numerics(format!(
            "integrand non-finite in panel [{a:e}, {b:e}]"
        )));
    }
    // A panel is final when any of these holds:
    //  - it meets its halving share of the global tolerance;
    //  - it is converged to the requested tolerance relative to its own
    //    mass (summed over panels this bounds the total error by rel_tol
    //    times the L1 norm, which is the accuracy contract; it is also what
    //    terminates refinement on a noise-limited feature, where the
    //    evaluated integrand carries irreducible relative error and no
    //    amount of bisection can meet an ever-halving tolerance);
    //  - its residual sits at the roundoff level of the whole integral or
    //    of the panel itself (children agreeing with the parent to tens of
    //    machine epsilons cannot be improved, since node placement itself
    //    quantizes there);
    //  - bisection has exhausted the f64 grid.
    let residual = (sum - whole).abs();
    let accept = eps.max(roundoff_floor(floor, sum)).max(rel_tol * sum.abs());
    if residual <= accept || mid == a || mid == b {
        return Ok(sum);
    }
    if depth_left == 0 {
        tally.charge(residual, a, b);
        return Ok(sum);
    }
    Ok(refine(f, a, mid, left, 0.5 * eps, floor, rel_tol, depth_left - 1, tally)?
        + refine(f, mid, b, right, 0.5 * eps, floor, rel_tol, depth_left - 1, tally)?)
}

fn roundoff_floor(floor: f64, sum: f64) -> f64 {
    floor.max(50.0 * f64::EPSILON * sum.abs())
}
