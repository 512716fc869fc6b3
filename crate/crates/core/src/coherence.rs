//! Coherence between a `D_mu` atom and a near-field steering vector, and the
//! support / sparsity bounds that follow from it.
//!
//! For the Taylor channel model the inner product reduces to
//!
//! ```text
//! f(a, b) = (1/N) Σ_{n=0}^{N-1} exp(-j (a n + b n²))
//! a = (2πd/λ)(sin θ_m - sin θ_0),   b = (πd²/λ)(1/μ_0 - 1/μ)
//! ```
//!
//! and `M(a, b) = |f(a, b)|` is what the functions here evaluate or bound.
//! Support sets are expressed in `ã/π`, which equals the wrapped sine
//! difference for half-wavelength spacing.

use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2, TAU};

#[allow(unused_imports)]
use num_traits::Float;

use crate::fresnel::fresnel;
use crate::geometry::{ArrayConfig, Distance};
use crate::{Error, Result, ValidityFloor, C64};

/// `|b|` below this is treated as exactly zero.
pub const B_ZERO_TOL: f64 = 1e-15;

/// Inclusive slack when testing grid points against interval edges.
const EDGE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceParams {
    pub a: f64,
    pub b: f64,
    /// `a` wrapped into `[-π, π)`.
    pub a_tilde: f64,
    pub n: usize,
}

impl CoherenceParams {
    pub fn new(a: f64, b: f64, n: usize) -> Self {
        CoherenceParams {
            a,
            b,
            a_tilde: wrap_phase(a),
            n,
        }
    }

    pub fn is_b_zero(&self) -> bool {
        self.b.abs() < B_ZERO_TOL
    }

    /// `(-a, -b)`, which has the same coherence magnitude.
    pub fn mirrored(&self) -> Self {
        CoherenceParams::new(-self.a, -self.b, self.n)
    }
}

/// `mod(a + π, 2π) - π`.
pub fn wrap_phase(a: f64) -> f64 {
    let t = a + PI;
    t - TAU * (t / TAU).floor() - PI
}

pub fn params_from_sines(
    cfg: &ArrayConfig,
    sin_m: f64,
    sin_0: f64,
    mu: Distance,
    mu_0: Distance,
) -> CoherenceParams {
    let d = cfg.spacing();
    let lambda = cfg.wavelength();
    let a = 2.0 * PI * d / lambda * (sin_m - sin_0);
    let b = PI * d * d / lambda * (mu_0.reciprocal() - mu.reciprocal());
    CoherenceParams::new(a, b, cfg.n_antennas())
}

/// Parameters for the atom at `(theta_m, mu)` against a channel at
/// `(theta_0, mu_0)`.
pub fn params_from_geometry(
    cfg: &ArrayConfig,
    theta_m: f64,
    theta_0: f64,
    mu: Distance,
    mu_0: Distance,
) -> CoherenceParams {
    params_from_sines(cfg, theta_m.sin(), theta_0.sin(), mu, mu_0)
}

/// Direct `N`-term evaluation of `|f(a, b)|`.
pub fn coherence_exact(p: &CoherenceParams) -> f64 {
    let n = p.n as f64;
    let sum: C64 = (0..p.n)
        .map(|i| {
            let t = i as f64;
            let (s, c) = (p.a_tilde * t + p.b * t * t).sin_cos();
            C64::new(c, -s)
        })
        .sum();
    sum.norm() / n
}

/// Closed-form approximation: the Dirichlet kernel when `b = 0`, otherwise
/// the Fresnel-integral form of the sum.
pub fn coherence_approx(p: &CoherenceParams) -> f64 {
    if p.is_b_zero() {
        return dirichlet(p.a_tilde, p.n);
    }
    if p.b < 0.0 {
        return coherence_approx(&p.mirrored());
    }
    let n = p.n as f64;
    let sb = p.b.sqrt();
    let x1 = p.a_tilde / (2.0 * sb);
    let x2 = (n - 1.0) * sb + x1;
    let (c1, s1) = fresnel(x1);
    let (c2, s2) = fresnel(x2);
    ((c2 - c1).powi(2) + (s2 - s1).powi(2)).sqrt() / (n * sb)
}

/// `(1/N) |sin(N a / 2) / sin(a / 2)|` with its limit 1 at `a = 0`.
fn dirichlet(a: f64, n: usize) -> f64 {
    let den = (0.5 * a).sin();
    if den.abs() < 1e-300 {
        return 1.0;
    }
    let num = (0.5 * n as f64 * a).sin();
    (num / (n as f64 * den)).abs().min(1.0)
}

/// Interval half-widths in units of `ã/π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// Two-sided half-width for `b = 0`.
    pub eta0: f64,
    /// Width on the side away from the stationary-phase range.
    pub eta1: f64,
    /// Width on the side of the stationary-phase range; `eta1` plus `2(N-1)|b|/π`.
    pub eta2: f64,
}

fn check_floors(n: usize, delta: f64) -> Result<()> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::invalid("delta", delta, "must be positive and finite"));
    }
    let nf = n as f64;
    let fresnel_floor = 2.0 * SQRT_2 / (nf * PI);
    if delta <= fresnel_floor {
        return Err(Error::DeltaBelowFloor {
            bound: ValidityFloor::FresnelIncrement,
            delta,
            floor: fresnel_floor,
        });
    }
    if delta <= 1.0 / nf {
        return Err(Error::DeltaBelowFloor {
            bound: ValidityFloor::Dirichlet,
            delta,
            floor: 1.0 / nf,
        });
    }
    Ok(())
}

/// Interval widths for detection threshold `delta`. The aperture term of
/// `eta2` is carried by `b_abs`: `2(N-1)|b|/π = D |1/μ_0 - 1/μ|` at `d = λ/2`.
pub fn thresholds(n: usize, delta: f64, b_abs: f64) -> Result<Thresholds> {
    if n < 2 {
        return Err(Error::invalid("n", n as f64, "need at least two antennas"));
    }
    check_floors(n, delta)?;
    let nf = n as f64;
    let eta0 = (1.0 - 2.0 / (nf * nf * delta * delta)).acos() / PI;
    let eta1 = 2.0 * SQRT_2 / (nf * PI * delta);
    let eta2 = eta1 + 2.0 * (nf - 1.0) * b_abs.abs() / PI;
    Ok(Thresholds { eta0, eta1, eta2 })
}

/// `(lo, hi)` bounds on `ã/π` outside which `M < delta` is guaranteed.
fn support_interval(t: &Thresholds, b: f64) -> (f64, f64) {
    if b.abs() < B_ZERO_TOL {
        (-t.eta0, t.eta0)
    } else if b > 0.0 {
        (-t.eta2, t.eta1)
    } else {
        (-t.eta1, t.eta2)
    }
}

/// Grid indices of a `D_mu` dictionary that can carry a coefficient of
/// magnitude `>= delta` for a single path at `(theta_0, mu_0)`. Intervals
/// wrap around `±1`.
pub fn predicted_support(
    cfg: &ArrayConfig,
    theta_0: f64,
    mu_0: Distance,
    mu: Distance,
    delta: f64,
) -> Result<Vec<usize>> {
    let s0 = theta_0.sin();
    let probe = params_from_sines(cfg, s0, s0, mu, mu_0);
    let t = thresholds(cfg.n_antennas(), delta, probe.b)?;
    let (lo, hi) = support_interval(&t, probe.b);
    let inside = |u: f64| [u - 2.0, u, u + 2.0].iter().any(|&v| v >= lo - EDGE_SLACK && v <= hi + EDGE_SLACK);
    Ok((0..cfg.n_antennas())
        .filter(|&m| {
            let p = params_from_sines(cfg, cfg.grid_sine(m), s0, mu, mu_0);
            inside(p.a_tilde / PI)
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    BZero,
    BNonzero,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SparsityBoundReport {
    pub eta0: f64,
    pub eta1: f64,
    pub eta2: f64,
    /// `2 eta0` or `eta1 + eta2`.
    pub interval_width: f64,
    /// `⌈interval_width / (2/N)⌉`.
    pub k_bar: usize,
    pub regime: Regime,
    /// Large-`N` limit `⌈2/(π delta)⌉` of the `b = 0` bound.
    pub asymptotic_k: usize,
    /// `(N/1.24) sqrt(2/(N-1))`: growth cap on the aperture term.
    pub sublinear_cap: f64,
}

/// Upper bound on the number of `D_mu` coefficients of magnitude `>= delta`
/// for a single path with quadratic-phase parameter `b`.
pub fn sparsity_bound(cfg: &ArrayConfig, delta: f64, b: f64) -> Result<SparsityBoundReport> {
    let n = cfg.n_antennas();
    let t = thresholds(n, delta, b)?;
    let nf = n as f64;
    let (regime, interval_width) = if b.abs() < B_ZERO_TOL {
        (Regime::BZero, 2.0 * t.eta0)
    } else {
        (Regime::BNonzero, t.eta1 + t.eta2)
    };
    Ok(SparsityBoundReport {
        eta0: t.eta0,
        eta1: t.eta1,
        eta2: t.eta2,
        interval_width,
        k_bar: (interval_width * nf / 2.0).ceil() as usize,
        regime,
        asymptotic_k: (2.0 / (PI * delta)).ceil() as usize,
        sublinear_cap: nf / 1.24 * (2.0 / (nf - 1.0)).sqrt(),
    })
}

/// `(#{m : |alpha_m| >= delta}, count / M)`.
pub fn empirical_sparsity(alpha: &[C64], delta: f64) -> (usize, f64) {
    let count = alpha.iter().filter(|v| v.norm() >= delta).count();
    let fraction = if alpha.is_empty() {
        0.0
    } else {
        count as f64 / alpha.len() as f64
    };
    (count, fraction)
}
