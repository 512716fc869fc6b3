//! Uniform linear array model: wavelengths, field-region boundaries, exact
//! and second-order (Taylor) spherical-wave steering vectors, and multipath
//! channel synthesis.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

// Needed without std; shadowed by inherent methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::rng::{complex_normal, open_unit_interval, seeded};
use crate::{Error, Result, C64};

/// Speed of light used to derive wavelengths, in m/s.
pub const SPEED_OF_LIGHT: f64 = 2.998e8;

/// Carrier frequency, antenna count and element spacing of a ULA.
///
/// The wavelength is always derived from the carrier frequency; with
/// [`ArrayConfig::half_wavelength`] the spacing is exactly `wavelength / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayConfig {
    carrier_freq: f64,
    n_antennas: usize,
    spacing: f64,
}

impl ArrayConfig {
    /// Array with half-wavelength spacing.
    pub fn half_wavelength(carrier_freq: f64, n_antennas: usize) -> Result<Self> {
        let freq = validate_freq(carrier_freq)?;
        Self::with_spacing(freq, n_antennas, SPEED_OF_LIGHT / freq / 2.0)
    }

    pub fn with_spacing(carrier_freq: f64, n_antennas: usize, spacing: f64) -> Result<Self> {
        let carrier_freq = validate_freq(carrier_freq)?;
        if n_antennas < 2 {
            return Err(Error::invalid(
                "n_antennas",
                n_antennas as f64,
                "at least two antennas are required",
            ));
        }
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(Error::invalid("spacing", spacing, "must be positive and finite"));
        }
        Ok(Self {
            carrier_freq,
            n_antennas,
            spacing,
        })
    }

    pub fn carrier_freq(&self) -> f64 {
        self.carrier_freq
    }

    pub fn n_antennas(&self) -> usize {
        self.n_antennas
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_freq
    }

    /// `2 pi / lambda`.
    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength()
    }

    /// `D = (N - 1) d`.
    pub fn aperture(&self) -> f64 {
        (self.n_antennas - 1) as f64 * self.spacing
    }

    pub fn field_boundaries(&self) -> FieldBoundaries {
        field_boundaries(self)
    }

    /// Rayleigh distance scaled by `cos^2(theta)`.
    pub fn effective_rayleigh(&self, theta: f64) -> f64 {
        let c = theta.cos();
        self.field_boundaries().rayleigh * c * c
    }

    /// `sin(theta_n) = (2n - N - 1) / N` for the 0-based grid index `k = n - 1`.
    pub fn grid_sine(&self, k: usize) -> f64 {
        let n = self.n_antennas as f64;
        (2.0 * k as f64 + 1.0 - n) / n
    }
}

fn validate_freq(f: f64) -> Result<f64> {
    if f > 0.0 && f.is_finite() {
        Ok(f)
    } else {
        Err(Error::invalid("carrier_freq", f, "must be positive and finite"))
    }
}

/// Fresnel (reactive / radiating near-field) and Rayleigh (near / far
/// field) distances in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldBoundaries {
    pub fresnel: f64,
    pub rayleigh: f64,
}

/// `(0.62 sqrt(D^3 / lambda), 2 D^2 / lambda)`.
pub fn field_boundaries(cfg: &ArrayConfig) -> FieldBoundaries {
    let d = cfg.aperture();
    let lambda = cfg.wavelength();
    FieldBoundaries {
        fresnel: 0.62 * (d * d * d / lambda).sqrt(),
        rayleigh: 2.0 * d * d / lambda,
    }
}

/// A positive distance or the far-field limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distance {
    Finite(f64),
    Infinite,
}

impl Distance {
    /// Accepts positive values; `+inf` maps to [`Distance::Infinite`].
    pub fn new(value: f64) -> Result<Self> {
        if value == f64::INFINITY {
            Ok(Distance::Infinite)
        } else if value > 0.0 && value.is_finite() {
            Ok(Distance::Finite(value))
        } else {
            Err(Error::invalid("distance", value, "must be positive"))
        }
    }

    /// `1 / value`, zero for the far-field limit.
    pub fn reciprocal(self) -> f64 {
        match self {
            Distance::Finite(v) => 1.0 / v,
            Distance::Infinite => 0.0,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Distance::Finite(v) => v,
            Distance::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Distance::Infinite)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteeringMode {
    /// Exact spherical-wave element distances.
    Exact,
    /// Second-order expansion `-(n-1) d sin + r + (n-1)^2 d^2 cos^2 / (2r)`.
    Taylor,
}

/// Far-field steering vector for angle `theta`.
pub fn far_steering(cfg: &ArrayConfig, theta: f64) -> Vec<C64> {
    far_steering_sin(cfg, theta.sin())
}

/// Far-field steering vector parameterized by `sin(theta)`.
pub fn far_steering_sin(cfg: &ArrayConfig, sin_theta: f64) -> Vec<C64> {
    let n = cfg.n_antennas();
    let amp = 1.0 / (n as f64).sqrt();
    let step = cfg.wavenumber() * cfg.spacing() * sin_theta;
    (0..n)
        .map(|m| C64::from_polar(amp, step * m as f64))
        .collect()
}

fn validate_range(r: f64) -> Result<f64> {
    if r > 0.0 && r.is_finite() {
        Ok(r)
    } else {
        Err(Error::invalid("r", r, "distance must be positive and finite"))
    }
}

fn validate_index(cfg: &ArrayConfig, n: usize) -> Result<usize> {
    if (1..=cfg.n_antennas()).contains(&n) {
        Ok(n - 1)
    } else {
        Err(Error::invalid("n", n as f64, "antenna index must be in 1..=N"))
    }
}

/// Distance from antenna `n` (1-based) to a source at `(theta, r)` measured
/// from the first antenna.
pub fn element_distance(
    cfg: &ArrayConfig,
    theta: f64,
    r: f64,
    n: usize,
    mode: SteeringMode,
) -> Result<f64> {
    let r = validate_range(r)?;
    let m = validate_index(cfg, n)?;
    Ok(r + path_difference(cfg, theta.sin(), theta.cos(), r, m, mode))
}

/// `r^(m+1) - r` for the 0-based element `m`, without cancellation.
fn path_difference(
    cfg: &ArrayConfig,
    sin_theta: f64,
    cos_theta: f64,
    r: f64,
    m: usize,
    mode: SteeringMode,
) -> f64 {
    let offset = m as f64 * cfg.spacing();
    match mode {
        SteeringMode::Exact => {
            let num = offset * offset - 2.0 * r * offset * sin_theta;
            let rn = (r * r + num).max(0.0).sqrt();
            if rn + r == 0.0 {
                0.0
            } else {
                num / (rn + r)
            }
        }
        SteeringMode::Taylor => {
            -offset * sin_theta + offset * offset * cos_theta * cos_theta / (2.0 * r)
        }
    }
}

/// Near-field steering vector `(1/sqrt(N)) exp(-j k (r^(n) - r))`.
///
/// The Taylor mode is evaluated as `far_steering(theta) ∘ b(r / cos^2 theta)`.
pub fn near_steering(
    cfg: &ArrayConfig,
    theta: f64,
    r: f64,
    mode: SteeringMode,
) -> Result<Vec<C64>> {
    let r = validate_range(r)?;
    match mode {
        SteeringMode::Taylor => {
            let mu = effective_mu(theta, r);
            let far = far_steering(cfg, theta);
            let b = b_vector(cfg, mu);
            Ok(far.iter().zip(&b).map(|(x, y)| x * y).collect())
        }
        SteeringMode::Exact => {
            let n = cfg.n_antennas();
            let amp = 1.0 / (n as f64).sqrt();
            let k = cfg.wavenumber();
            let (s, c) = theta.sin_cos();
            Ok((0..n)
                .map(|m| C64::from_polar(amp, -k * path_difference(cfg, s, c, r, m, mode)))
                .collect())
        }
    }
}

fn effective_mu(theta: f64, r: f64) -> Distance {
    let c = theta.cos();
    let mu = r / (c * c);
    if mu.is_finite() {
        Distance::Finite(mu)
    } else {
        Distance::Infinite
    }
}

/// Unit-modulus quadratic-phase vector `exp(-j k (n-1)^2 d^2 / (2 mu))`.
pub fn b_vector(cfg: &ArrayConfig, mu: Distance) -> Vec<C64> {
    let n = cfg.n_antennas();
    let coef = cfg.wavenumber() * cfg.spacing() * cfg.spacing() * mu.reciprocal() / 2.0;
    (0..n)
        .map(|m| {
            let m = m as f64;
            C64::from_polar(1.0, -coef * m * m)
        })
        .collect()
}

/// Effective distance `mu = r / cos^2(theta)` together with `cos^2(theta)`,
/// the factor mapping the Rayleigh distance to its effective value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveDistance {
    pub mu: f64,
    pub cos_sq: f64,
}

impl EffectiveDistance {
    pub fn effective_rayleigh(&self, cfg: &ArrayConfig) -> f64 {
        cfg.field_boundaries().rayleigh * self.cos_sq
    }

    /// Physical distance recovered from `mu` and the angle factor.
    pub fn range(&self) -> f64 {
        self.mu * self.cos_sq
    }
}

pub fn effective_distance(theta: f64, r: f64) -> Result<EffectiveDistance> {
    if !(theta.abs() < FRAC_PI_2) {
        return Err(Error::invalid("theta", theta, "must satisfy |theta| < pi/2"));
    }
    let r = validate_range(r)?;
    let c = theta.cos();
    let cos_sq = c * c;
    Ok(EffectiveDistance {
        mu: r / cos_sq,
        cos_sq,
    })
}

/// One propagation path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathParams {
    pub gain: C64,
    /// Angle of departure in radians.
    pub theta: f64,
    /// Distance from the reference antenna in meters.
    pub distance: f64,
    pub is_los: bool,
}

/// Ordered path list; index 0 is the line-of-sight path when sampled.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ChannelSpec {
    pub paths: Vec<PathParams>,
}

impl ChannelSpec {
    pub fn n_paths(&self) -> usize {
        self.paths.len()
    }

    /// `|g_0|^2 / sum_{l>0} |g_l|^2`.
    pub fn los_to_nlos_power_ratio(&self) -> Option<f64> {
        let (los, nlos) = self.paths.split_first()?;
        let p: f64 = nlos.iter().map(|p| p.gain.norm_sqr()).sum();
        (p > 0.0).then(|| los.gain.norm_sqr() / p)
    }

    pub fn total_power(&self) -> f64 {
        self.paths.iter().map(|p| p.gain.norm_sqr()).sum()
    }
}

/// `h = sum_l g_l a(theta_l, r_l)`.
pub fn synthesize_channel(
    cfg: &ArrayConfig,
    spec: &ChannelSpec,
    mode: SteeringMode,
) -> Result<Vec<C64>> {
    let mut h = alloc::vec![C64::new(0.0, 0.0); cfg.n_antennas()];
    for path in &spec.paths {
        let a = near_steering(cfg, path.theta, path.distance, mode)?;
        crate::linalg::axpy(path.gain, &a, &mut h);
    }
    Ok(h)
}

/// Random multipath channel generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSampler {
    pub n_paths: usize,
    /// LOS power over aggregate NLOS power, in dB.
    pub power_split_db: f64,
    /// Distance interval in meters; `None` means `[F_r, 1.2 R]`.
    pub distance_range: Option<(f64, f64)>,
    /// Rescale gains so that `sum |g_l|^2 = 1`.
    pub normalize_power: bool,
}

impl ChannelSampler {
    pub fn new(n_paths: usize, power_split_db: f64) -> Self {
        Self {
            n_paths,
            power_split_db,
            distance_range: None,
            normalize_power: false,
        }
    }

    pub fn resolved_range(&self, cfg: &ArrayConfig) -> Result<(f64, f64)> {
        let (lo, hi) = match self.distance_range {
            Some(r) => r,
            None => {
                let fb = cfg.field_boundaries();
                (fb.fresnel, 1.2 * fb.rayleigh)
            }
        };
        if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
            return Err(Error::invalid("distance_range", lo, "need 0 < min <= max < inf"));
        }
        Ok((lo, hi))
    }

    /// LOS gain from `CN(0,1)`; NLOS gains from `CN(0,1)` rescaled jointly to
    /// hit the LOS/NLOS split exactly; `sin(theta) ~ U(-1,1)`; distances
    /// uniform over the range.
    pub fn sample<R: Rng + ?Sized>(&self, cfg: &ArrayConfig, rng: &mut R) -> Result<ChannelSpec> {
        if self.n_paths < 1 {
            return Err(Error::invalid("n_paths", self.n_paths as f64, "need at least one path"));
        }
        if !self.power_split_db.is_finite() {
            return Err(Error::invalid("power_split_db", self.power_split_db, "must be finite"));
        }
        let (lo, hi) = self.resolved_range(cfg)?;
        let mut paths: Vec<PathParams> = (0..self.n_paths)
            .map(|l| {
                let gain = complex_normal(rng, 1.0);
                let theta = open_unit_interval(rng).asin();
                let distance = rng.random_range(lo..=hi);
                PathParams {
                    gain,
                    theta,
                    distance,
                    is_los: l == 0,
                }
            })
            .collect();

        if paths.len() > 1 {
            let los_power = paths[0].gain.norm_sqr();
            let nlos_power: f64 = paths[1..].iter().map(|p| p.gain.norm_sqr()).sum();
            let target = los_power / 10f64.powf(self.power_split_db / 10.0);
            if nlos_power > 0.0 {
                let scale = (target / nlos_power).sqrt();
                for p in &mut paths[1..] {
                    p.gain *= scale;
                }
            }
        }
        let mut spec = ChannelSpec { paths };
        if self.normalize_power {
            let total = spec.total_power();
            if total > 0.0 {
                let scale = 1.0 / total.sqrt();
                for p in &mut spec.paths {
                    p.gain *= scale;
                }
            }
        }
        Ok(spec)
    }
}

/// Seeded form of [`ChannelSampler::sample`].
pub fn sample_channel(cfg: &ArrayConfig, sampler: &ChannelSampler, seed: u64) -> Result<ChannelSpec> {
    sampler.sample(cfg, &mut seeded(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dot, norm};
    use core::f64::consts::FRAC_PI_4;

    fn cfg256() -> ArrayConfig {
        ArrayConfig::half_wavelength(100e9, 256).unwrap()
    }

    #[test]
    fn default_spacing_is_exactly_half_wavelength() {
        let cfg = cfg256();
        assert_eq!(cfg.spacing(), cfg.wavelength() / 2.0);
        assert!((cfg.wavelength() - 2.998e-3).abs() < 1e-15);
    }

    #[test]
    fn field_boundaries_at_100ghz_256_antennas() {
        let fb = cfg256().field_boundaries();
        // 97.54 m is the value for c = 3e8; with c = 2.998e8 it is 97.47 m.
        assert!((fb.rayleigh - 97.54).abs() / 97.54 < 1e-3, "{}", fb.rayleigh);
        assert!((fb.rayleigh - 97.4725).abs() < 1e-3, "{}", fb.rayleigh);
        assert!((fb.fresnel - 2.68).abs() < 0.01, "{}", fb.fresnel);
    }

    #[test]
    fn two_element_rayleigh_is_half_wavelength() {
        let cfg = ArrayConfig::half_wavelength(28e9, 2).unwrap();
        let fb = cfg.field_boundaries();
        assert!((fb.rayleigh - cfg.wavelength() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn config_rejects_bad_inputs() {
        assert!(ArrayConfig::half_wavelength(0.0, 16).is_err());
        assert!(ArrayConfig::half_wavelength(1e9, 1).is_err());
        assert!(ArrayConfig::with_spacing(1e9, 8, 0.0).is_err());
    }

    #[test]
    fn broadside_far_steering_is_flat() {
        let cfg = cfg256();
        let a = far_steering(&cfg, 0.0);
        let expect = 1.0 / 16.0;
        for v in a {
            assert!((v.re - expect).abs() < 1e-15 && v.im.abs() < 1e-15);
        }
    }

    #[test]
    fn far_steering_phase_progression() {
        let cfg = ArrayConfig::half_wavelength(100e9, 4).unwrap();
        let a = far_steering_sin(&cfg, 0.5);
        for (m, v) in a.iter().enumerate() {
            let expect = C64::from_polar(0.5, m as f64 * PI / 2.0);
            assert!((v - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn far_steering_grid_points_are_orthogonal() {
        let cfg = ArrayConfig::half_wavelength(100e9, 16).unwrap();
        let a = far_steering_sin(&cfg, cfg.grid_sine(3));
        let b = far_steering_sin(&cfg, cfg.grid_sine(10));
        assert!(dot(&a, &b).norm() < 1e-12);
    }

    #[test]
    fn first_element_distance_is_reference_range() {
        let cfg = cfg256();
        for mode in [SteeringMode::Exact, SteeringMode::Taylor] {
            assert_eq!(element_distance(&cfg, 0.7, 12.5, 1, mode).unwrap(), 12.5);
        }
    }

    #[test]
    fn broadside_exact_distance_is_pythagorean() {
        let cfg = cfg256();
        let r: f64 = 5.0;
        let n = 100;
        let off = 99.0 * cfg.spacing();
        let got = element_distance(&cfg, 0.0, r, n, SteeringMode::Exact).unwrap();
        assert!((got - (r * r + off * off).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn taylor_distance_close_to_exact_at_ten_meters() {
        let cfg = cfg256();
        let e = element_distance(&cfg, FRAC_PI_4, 10.0, 256, SteeringMode::Exact).unwrap();
        let t = element_distance(&cfg, FRAC_PI_4, 10.0, 256, SteeringMode::Taylor).unwrap();
        assert!((e - t).abs() < 1e-3 * 10.0);
    }

    #[test]
    fn taylor_error_shrinks_with_range() {
        let cfg = cfg256();
        let err = |r: f64| {
            let e = element_distance(&cfg, 0.4, r, 200, SteeringMode::Exact).unwrap();
            let t = element_distance(&cfg, 0.4, r, 200, SteeringMode::Taylor).unwrap();
            (e - t).abs()
        };
        assert!(err(10.0) > err(100.0));
        assert!(err(100.0) > err(1000.0));
    }

    #[test]
    fn distance_rejects_nonpositive_range() {
        let cfg = cfg256();
        assert!(element_distance(&cfg, 0.0, 0.0, 1, SteeringMode::Exact).is_err());
        assert!(near_steering(&cfg, 0.0, -1.0, SteeringMode::Taylor).is_err());
        assert!(element_distance(&cfg, 0.0, 1.0, 0, SteeringMode::Exact).is_err());
        assert!(element_distance(&cfg, 0.0, 1.0, 257, SteeringMode::Exact).is_err());
    }

    #[test]
    fn near_steering_first_entry_and_norm() {
        let cfg = cfg256();
        for mode in [SteeringMode::Exact, SteeringMode::Taylor] {
            let a = near_steering(&cfg, -0.3, 7.0, mode).unwrap();
            assert!((a[0] - C64::new(1.0 / 16.0, 0.0)).norm() < 1e-15);
            assert!((norm(&a) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn taylor_mode_is_hadamard_of_far_and_b() {
        let cfg = cfg256();
        let (theta, r) = (0.61, 9.0);
        let t = near_steering(&cfg, theta, r, SteeringMode::Taylor).unwrap();
        let mu = effective_distance(theta, r).unwrap().mu;
        let far = far_steering(&cfg, theta);
        let b = b_vector(&cfg, Distance::new(mu).unwrap());
        for ((x, f), bb) in t.iter().zip(&far).zip(&b) {
            assert!((x - f * bb).norm() < 1e-12);
        }
    }

    #[test]
    fn exact_and_taylor_steering_close_at_ten_meters() {
        let cfg = cfg256();
        let theta = PI / 6.0;
        let e = near_steering(&cfg, theta, 10.0, SteeringMode::Exact).unwrap();
        let t = near_steering(&cfg, theta, 10.0, SteeringMode::Taylor).unwrap();
        let diff: Vec<C64> = e.iter().zip(&t).map(|(a, b)| a - b).collect();
        // Independent double-precision evaluation gives 0.0835844; the gap is
        // dominated by the third-order term (n d)^3 sin cos^2 / (2 r^2).
        assert!((norm(&diff) - 0.083_584_368_5).abs() < 1e-8, "{}", norm(&diff));
    }

    #[test]
    fn b_vector_cases() {
        let cfg = cfg256();
        for v in b_vector(&cfg, Distance::Infinite) {
            assert_eq!(v, C64::new(1.0, 0.0));
        }
        assert_eq!(b_vector(&cfg, Distance::new(3.0).unwrap())[0], C64::new(1.0, 0.0));
        assert!(Distance::new(0.0).is_err());
        assert!(Distance::new(-2.0).is_err());
        assert_eq!(Distance::new(f64::INFINITY).unwrap(), Distance::Infinite);
    }

    #[test]
    fn b_vector_hand_evaluated_phase() {
        // lambda = 0.003, d = 0.0015, mu = 6:
        // entry 3 phase = -(2 pi / 0.003) * 4 * 0.0015^2 / 12 = -2 pi * 2.5e-4.
        let freq = SPEED_OF_LIGHT / 0.003;
        let cfg = ArrayConfig::with_spacing(freq, 3, 0.0015).unwrap();
        let b = b_vector(&cfg, Distance::new(6.0).unwrap());
        let expect = C64::from_polar(1.0, -2.0 * PI * 2.5e-4);
        assert!((b[2] - expect).norm() < 1e-12);
    }

    #[test]
    fn effective_distance_cases() {
        let e = effective_distance(0.0, 4.0).unwrap();
        assert_eq!(e.mu, 4.0);
        let e = effective_distance(PI / 3.0, 5.0).unwrap();
        assert!((e.mu - 20.0).abs() < 1e-12);
        assert!((e.range() - 5.0).abs() < 1e-12);
        assert!(effective_distance(FRAC_PI_2, 5.0).is_err());
        let cfg = cfg256();
        let rr = e.effective_rayleigh(&cfg);
        assert!((rr - cfg.effective_rayleigh(PI / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn taylor_on_grid_at_infinity_is_far_field() {
        let cfg = ArrayConfig::half_wavelength(100e9, 64).unwrap();
        let s = cfg.grid_sine(17);
        let far = far_steering_sin(&cfg, s);
        let b = b_vector(&cfg, Distance::Infinite);
        let near: Vec<C64> = far.iter().zip(&b).map(|(x, y)| x * y).collect();
        assert_eq!(near, far);
    }

    #[test]
    fn single_unit_path_equals_steering_vector() {
        let cfg = cfg256();
        let spec = ChannelSpec {
            paths: alloc::vec![PathParams {
                gain: C64::new(1.0, 0.0),
                theta: 0.2,
                distance: 15.0,
                is_los: true,
            }],
        };
        let h = synthesize_channel(&cfg, &spec, SteeringMode::Exact).unwrap();
        let a = near_steering(&cfg, 0.2, 15.0, SteeringMode::Exact).unwrap();
        assert_eq!(h, a);
        assert!((norm(&h) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sampler_split_determinism_and_los() {
        let cfg = cfg256();
        let sampler = ChannelSampler::new(3, 13.0);
        let a = sample_channel(&cfg, &sampler, 11).unwrap();
        let b = sample_channel(&cfg, &sampler, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.paths[0].is_los && !a.paths[1].is_los && !a.paths[2].is_los);
        let ratio = a.los_to_nlos_power_ratio().unwrap();
        assert!((ratio - 10f64.powf(1.3)).abs() < 1e-9, "{ratio}");
        assert!((ratio - 19.95).abs() < 0.01);

        let fb = cfg.field_boundaries();
        for p in &a.paths {
            assert!(p.distance >= fb.fresnel && p.distance <= 1.2 * fb.rayleigh);
            assert!(p.theta.abs() < FRAC_PI_2);
        }

        let one = sample_channel(&cfg, &ChannelSampler::new(1, 13.0), 3).unwrap();
        assert_eq!(one.n_paths(), 1);
        assert!(one.paths[0].is_los);
        assert!(sample_channel(&cfg, &ChannelSampler::new(0, 13.0), 3).is_err());
    }

    #[test]
    fn sampler_normalization_flag() {
        let cfg = cfg256();
        let mut s = ChannelSampler::new(3, 13.0);
        s.normalize_power = true;
        let spec = sample_channel(&cfg, &s, 5).unwrap();
        assert!((spec.total_power() - 1.0).abs() < 1e-12);
        assert!((spec.los_to_nlos_power_ratio().unwrap() - 10f64.powf(1.3)).abs() < 1e-9);
    }
}
