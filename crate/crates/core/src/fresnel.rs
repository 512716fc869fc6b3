//! Unnormalized Fresnel integrals
//!
//! ```text
//! C(x) = ∫₀ˣ cos(t²) dt,   S(x) = ∫₀ˣ sin(t²) dt
//! ```
//!
//! evaluated through the normalized pair `C_std(u) = ∫₀ᵘ cos(πt²/2) dt` via
//! `C(x) = sqrt(π/2) · C_std(x · sqrt(2/π))`. The normalized integrals use a
//! power series for `|u| <= 1.5` and the continued fraction of the
//! complementary error function beyond, both accurate to ~1e-15.

use core::f64::consts::{FRAC_PI_2, PI};

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result, C64};

const SERIES_LIMIT: f64 = 1.5;
const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;
const MAX_ITER: usize = 200;

/// `sqrt(π/8)`, the common limit of `C(x)` and `S(x)` as `x → ∞`.
pub const ASYMPTOTE: f64 = 0.626_657_068_657_750_1;

/// Unnormalized `(C(x), S(x))`; odd in `x`.
pub fn fresnel(x: f64) -> (f64, f64) {
    let scale = FRAC_PI_2.sqrt();
    let (c, s) = fresnel_normalized(x / scale);
    (scale * c, scale * s)
}

/// Normalized `(C_std(u), S_std(u))` with kernel `πt²/2`.
pub fn fresnel_normalized(u: f64) -> (f64, f64) {
    if u.is_nan() {
        return (f64::NAN, f64::NAN);
    }
    let ax = u.abs();
    let (c, s) = if ax < TINY.sqrt() {
        (ax, 0.0)
    } else if ax <= SERIES_LIMIT {
        series(ax)
    } else if ax.is_infinite() {
        (0.5, 0.5)
    } else {
        continued_fraction(ax)
    };
    if u < 0.0 {
        (-c, -s)
    } else {
        (c, s)
    }
}

/// Interleaved power series for both integrals.
fn series(x: f64) -> (f64, f64) {
    let fact = FRAC_PI_2 * x * x;
    let mut term = x;
    let mut sum_c = x;
    let mut sum_s = 0.0;
    let mut sign = 1.0;
    let mut odd = true;
    let mut n = 3.0;
    let mut sum = 0.0;
    for k in 1..=MAX_ITER {
        term *= fact / k as f64;
        sum += sign * term / n;
        let test = sum.abs() * EPS;
        if odd {
            sign = -sign;
            sum_s = sum;
            sum = sum_c;
        } else {
            sum_c = sum;
            sum = sum_s;
        }
        if term < test {
            break;
        }
        odd = !odd;
        n += 2.0;
    }
    (sum_c, sum_s)
}

/// Modified Lentz evaluation of the erfc continued fraction.
fn continued_fraction(x: f64) -> (f64, f64) {
    let pix2 = PI * x * x;
    let mut b = C64::new(1.0, -pix2);
    let mut cc = C64::new(1.0 / TINY, 0.0);
    let mut d = C64::new(1.0, 0.0) / b;
    let mut h = d;
    let mut n = -1.0;
    for _ in 2..=MAX_ITER {
        n += 2.0;
        let a = -n * (n + 1.0);
        b += C64::new(4.0, 0.0);
        d = C64::new(1.0, 0.0) / (d * a + b);
        cc = b + C64::new(a, 0.0) / cc;
        let del = cc * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < EPS {
            break;
        }
    }
    h *= C64::new(x, -x);
    let (sin, cos) = (0.5 * pix2).sin_cos();
    let cs = C64::new(0.5, 0.5) * (C64::new(1.0, 0.0) - C64::new(cos, sin) * h);
    (cs.re, cs.im)
}

/// Checks `|C(x+Δ) − C(x)| < 1/x` and `|S(x+Δ) − S(x)| < 1/x` numerically.
pub fn fresnel_increment_bound_check(x: f64, delta_x: f64) -> Result<bool> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::invalid("x", x, "must be positive"));
    }
    if !(delta_x > 0.0 && delta_x.is_finite()) {
        return Err(Error::invalid("delta_x", delta_x, "must be positive"));
    }
    let (c0, s0) = fresnel(x);
    let (c1, s1) = fresnel(x + delta_x);
    let bound = 1.0 / x;
    Ok((c1 - c0).abs() < bound && (s1 - s0).abs() < bound)
}
