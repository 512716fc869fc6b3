//! Block-sparsity levels over the `sqrt(N)`-block partition, the resulting
//! sample-complexity bound, and Monte Carlo probes of block-RIP behavior.

use alloc::vec::Vec;
use core::f64::consts::{E, LN_2, PI, SQRT_2};

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;
use rand::seq::index;
use rand::Rng;

use crate::coherence::{params_from_sines, sparsity_bound};
use crate::dictionary::Dictionary;
use crate::geometry::{ArrayConfig, Distance};
use crate::linalg::{axpy, norm_sqr};
use crate::recovery::BlockPartition;
use crate::rng::{complex_normal, derive_seed, seeded};
use crate::{CMatrix, Error, Result, C64};

/// Integer `sqrt(n)`, if `n` is a perfect square.
pub fn exact_sqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VarrhoMode {
    /// A specific dictionary / channel distance pair.
    Pair { mu: Distance, mu_0: Distance },
    /// Worst case over all distances allowed by the near-field region.
    WorstCase,
}

/// Number of `sqrt(N)`-sized blocks needed to cover the significant
/// coefficients of a single path.
pub fn varrho_bound(cfg: &ArrayConfig, delta: f64, mode: VarrhoMode) -> Result<usize> {
    let n = cfg.n_antennas();
    let root = exact_sqrt(n).ok_or(Error::NonSquareAntennaCount(n))?;
    let rootf = root as f64;
    match mode {
        VarrhoMode::Pair { mu, mu_0 } => {
            let b = params_from_sines(cfg, 0.0, 0.0, mu, mu_0).b;
            let k_bar = sparsity_bound(cfg, delta, b)?.k_bar;
            Ok(k_bar.div_ceil(root).max(1))
        }
        VarrhoMode::WorstCase => {
            // Validates delta against the same floors as the pair bound.
            sparsity_bound(cfg, delta, 0.0)?;
            let nf = n as f64;
            let v = 2.0 * SQRT_2 / (PI * delta * rootf) + SQRT_2 / 1.24 * (nf / (nf - 1.0)).sqrt();
            Ok(v.ceil() as usize)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleComplexity {
    /// Smallest integer `T` satisfying the bound.
    pub t_min: usize,
    /// Right-hand side before rounding.
    pub raw: f64,
    /// `varrho ln(e sqrt(N) / varrho)`, the bound used for the block-support count.
    pub stirling_term: f64,
    /// `ln C(sqrt(N), varrho)`, the count it bounds.
    pub log_binomial: f64,
    /// The bound with `log_binomial` in place of `stirling_term`.
    pub raw_exact: f64,
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).map(|i| ((n - i) as f64 / (i + 1) as f64).ln()).sum()
}

/// `T >= (36 / (7 xi)) (varrho ln(e sqrt(N)/varrho) + varrho sqrt(N) ln(12/xi) + ln 2 + kappa)`.
pub fn sample_complexity(n: usize, varrho: usize, xi: f64, kappa: f64) -> Result<SampleComplexity> {
    if !(xi > 0.0 && xi < 1.0) {
        return Err(Error::invalid("xi", xi, "must lie in (0, 1)"));
    }
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::invalid("kappa", kappa, "must be positive"));
    }
    let root = exact_sqrt(n).ok_or(Error::NonSquareAntennaCount(n))?;
    if varrho == 0 || varrho > root {
        return Err(Error::invalid("varrho", varrho as f64, "must lie in 1..=sqrt(N)"));
    }
    let (v, r) = (varrho as f64, root as f64);
    let scale = 36.0 / (7.0 * xi);
    let rest = v * r * (12.0 / xi).ln() + LN_2 + kappa;
    let stirling_term = v * (E * r / v).ln();
    let log_binomial = ln_binomial(root, varrho);
    let raw = scale * (stirling_term + rest);
    Ok(SampleComplexity {
        t_min: raw.ceil() as usize,
        raw,
        stirling_term,
        log_binomial,
        raw_exact: scale * (log_binomial + rest),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RipProbeReport {
    /// Largest `| ||Psi c||^2 - 1 |` seen; `None` when no trial ran.
    pub xi_hat: Option<f64>,
    pub trials: usize,
    /// Fraction of trials with deviation `>= target_xi`.
    pub violation_rate: Option<f64>,
    pub target_xi: f64,
    pub partition: BlockPartition,
    pub k: usize,
    /// Per-trial deviations, in trial order.
    pub deviations: Vec<f64>,
}

impl RipProbeReport {
    pub fn median_deviation(&self) -> Option<f64> {
        if self.deviations.is_empty() {
            return None;
        }
        let mut d = self.deviations.clone();
        d.sort_by(f64::total_cmp);
        let m = d.len() / 2;
        Some(if d.len() % 2 == 0 { 0.5 * (d[m - 1] + d[m]) } else { d[m] })
    }
}

/// Random-sampling probe of the block-RIP constant of `psi`.
///
/// Trial `i` draws `k` distinct blocks uniformly and a unit-norm complex
/// Gaussian coefficient vector on them, using a seed derived from
/// `(seed, i)`. This is an estimate, not a certificate.
pub fn empirical_rip_probe(
    psi: &CMatrix,
    partition: &BlockPartition,
    k: usize,
    trials: usize,
    target_xi: f64,
    seed: u64,
) -> Result<RipProbeReport> {
    if partition.n_atoms() != psi.cols() {
        return Err(Error::mismatch("partition size", psi.cols(), partition.n_atoms()));
    }
    if k == 0 || k > partition.n_blocks() {
        return Err(Error::invalid("k", k as f64, "must lie in 1..=n_blocks"));
    }
    let deviations: Vec<f64> = (0..trials as u64)
        .map(|trial| rip_trial(psi, partition, k, &mut seeded(derive_seed(seed, &[trial]))))
        .collect();
    let xi_hat = deviations.iter().copied().reduce(f64::max);
    let violation_rate = (trials > 0)
        .then(|| deviations.iter().filter(|&&d| d >= target_xi).count() as f64 / trials as f64);
    Ok(RipProbeReport {
        xi_hat,
        trials,
        violation_rate,
        target_xi,
        partition: *partition,
        k,
        deviations,
    })
}

fn rip_trial<R: Rng>(psi: &CMatrix, partition: &BlockPartition, k: usize, rng: &mut R) -> f64 {
    let blocks = index::sample(rng, partition.n_blocks(), k);
    let mut cols = Vec::with_capacity(k * partition.block_size());
    for b in blocks.iter() {
        cols.extend(partition.block(b));
    }
    let mut coef: Vec<C64> = cols.iter().map(|_| complex_normal(rng, 1.0)).collect();
    let scale = norm_sqr(&coef).sqrt();
    for c in &mut coef {
        *c /= scale;
    }
    let mut out = alloc::vec![C64::zero(); psi.rows()];
    for (&j, &c) in cols.iter().zip(&coef) {
        axpy(c, psi.col(j), &mut out);
    }
    (norm_sqr(&out) - 1.0).abs()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianityReport {
    pub samples: usize,
    pub mean: C64,
    /// Empirical `E|x - mean|^2` of sampled entries.
    pub variance: f64,
    /// `1/N`.
    pub target_variance: f64,
    /// `|variance N - 1|`.
    pub relative_variance_error: f64,
    /// Normalized sample correlation between entries in distinct rows and
    /// columns, as a modulus.
    pub cross_correlation: f64,
    /// Set when the sampled entries have (numerically) zero variance.
    pub degenerate: bool,
}

/// Samples entries of `Psi = F D` and summarizes their first two moments
/// against `CN(0, 1/N)`.
pub fn gaussianity_probe(
    pilots: &CMatrix,
    dictionary: &Dictionary,
    samples: usize,
    seed: u64,
) -> Result<GaussianityReport> {
    let psi = pilots.matmul(dictionary.matrix())?;
    let (t, m) = (psi.rows(), psi.cols());
    if samples == 0 || t < 2 || m < 2 {
        return Err(Error::invalid(
            "samples",
            samples as f64,
            "need samples > 0 and at least a 2 x 2 sensing matrix",
        ));
    }
    let mut rng = seeded(seed);
    let mut first = Vec::with_capacity(samples);
    let mut second = Vec::with_capacity(samples);
    for _ in 0..samples {
        let (i1, j1) = (rng.random_range(0..t), rng.random_range(0..m));
        let i2 = (i1 + rng.random_range(1..t)) % t;
        let j2 = (j1 + rng.random_range(1..m)) % m;
        first.push(psi.get(i1, j1));
        second.push(psi.get(i2, j2));
    }
    let ns = samples as f64;
    let mean = first.iter().sum::<C64>() / ns;
    let variance = first.iter().map(|x| (x - mean).norm_sqr()).sum::<f64>() / ns;
    let target_variance = 1.0 / dictionary.n_rows() as f64;
    let degenerate = variance <= f64::MIN_POSITIVE;
    let cross: C64 = first.iter().zip(&second).map(|(x, y)| x * y.conj()).sum();
    let denom = (norm_sqr(&first) * norm_sqr(&second)).sqrt();
    let cross_correlation = if denom > 0.0 { cross.norm() / denom } else { 0.0 };
    Ok(GaussianityReport {
        samples,
        mean,
        variance,
        target_variance,
        relative_variance_error: (variance / target_variance - 1.0).abs(),
        cross_correlation,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherence::sparsity_bound;
    use crate::dictionary::{build_dft, build_dmu};
    use crate::recovery::{gen_pilots, PilotKind};

    fn cfg(n: usize) -> ArrayConfig {
        ArrayConfig::half_wavelength(100e9, n).unwrap()
    }

    fn d(v: f64) -> Distance {
        Distance::new(v).unwrap()
    }

    #[test]
    fn worst_case_varrho() {
        assert_eq!(varrho_bound(&cfg(256), 0.01, VarrhoMode::WorstCase).unwrap(), 7);
        assert!(matches!(
            varrho_bound(&cfg(200), 0.01, VarrhoMode::WorstCase),
            Err(Error::NonSquareAntennaCount(200))
        ));
        assert!(varrho_bound(&cfg(256), 0.001, VarrhoMode::WorstCase).is_err());
    }

    #[test]
    fn b_zero_varrho_tends_to_one() {
        let mode = VarrhoMode::Pair { mu: d(10.0), mu_0: d(10.0) };
        let large = cfg(65_536);
        let v = varrho_bound(&large, 0.01, mode).unwrap();
        assert_eq!(v, 64usize.div_ceil(256));
        assert_eq!(v, 1);
        assert!(varrho_bound(&cfg(256), 0.01, mode).unwrap() >= 1);
    }

    #[test]
    fn varrho_covers_k_bar_on_grid() {
        let c = cfg(256);
        let fb = c.field_boundaries();
        for i in 0..10 {
            let delta = 0.012 + 0.01 * i as f64;
            for j in 0..10 {
                let mu = fb.fresnel + (fb.rayleigh - fb.fresnel) * j as f64 / 9.0;
                let mu_0 = fb.rayleigh * 3.0 - mu * 0.5;
                let b = params_from_sines(&c, 0.0, 0.0, d(mu), d(mu_0)).b;
                let k_bar = sparsity_bound(&c, delta, b).unwrap().k_bar;
                let pair = varrho_bound(&c, delta, VarrhoMode::Pair { mu: d(mu), mu_0: d(mu_0) }).unwrap();
                let worst = varrho_bound(&c, delta, VarrhoMode::WorstCase).unwrap();
                assert!(pair * 16 >= k_bar);
                assert!(worst >= pair);
            }
        }
    }

    #[test]
    fn sample_complexity_example() {
        let s = sample_complexity(256, 7, 0.5, 1.0).unwrap();
        // (72/7)(7 ln(16e/7) + 112 ln 24 + ln 2 + 1), evaluated independently.
        assert!((s.raw - 3_810.054_097_973).abs() < 1e-6, "{}", s.raw);
        assert_eq!(s.t_min, 3811);
        assert!((s.log_binomial - 11440f64.ln()).abs() < 1e-12);
        assert!(s.log_binomial <= s.stirling_term);
        assert!(s.raw_exact < s.raw);
    }

    #[test]
    fn sample_complexity_monotonicity() {
        let base = sample_complexity(256, 5, 0.5, 1.0).unwrap().raw;
        assert!(sample_complexity(256, 5, 0.5, 2.0).unwrap().raw > base);
        assert!(sample_complexity(256, 6, 0.5, 1.0).unwrap().raw > base);
        let mut prev = f64::INFINITY;
        for i in 1..100 {
            let xi = i as f64 / 100.0;
            let v = sample_complexity(256, 5, xi, 1.0).unwrap().raw;
            assert!(v < prev);
            prev = v;
        }
        assert!(sample_complexity(256, 5, 1.0, 1.0).is_err());
        assert!(sample_complexity(256, 5, 0.0, 1.0).is_err());
        assert!(sample_complexity(256, 5, 0.5, 0.0).is_err());
        assert!(sample_complexity(256, 17, 0.5, 1.0).is_err());
    }

    #[test]
    fn unitary_sensing_is_an_isometry() {
        let dict = build_dmu(&cfg(64), d(9.0));
        let part = BlockPartition::new(64, 8).unwrap();
        let r = empirical_rip_probe(dict.matrix(), &part, 3, 200, 0.1, 1).unwrap();
        assert!(r.xi_hat.unwrap() < 1e-10);
        assert_eq!(r.violation_rate, Some(0.0));
    }

    fn gaussian_psi(t: usize, n: usize, seed: u64) -> CMatrix {
        // CN(0, 1/T) entries so that E||Psi c||^2 = ||c||^2.
        let mut psi = gen_pilots(t, n, PilotKind::Gaussian, seed);
        psi.scale((n as f64 / t as f64).sqrt());
        psi
    }

    #[test]
    fn gaussian_concentration() {
        let psi = gaussian_psi(32, 64, 3);
        let part = BlockPartition::new(64, 8).unwrap();
        let r = empirical_rip_probe(&psi, &part, 2, 1000, 0.5, 9).unwrap();
        assert!(r.violation_rate.unwrap() <= 0.10, "{:?}", r.violation_rate);
        assert_eq!(r.deviations.len(), 1000);
    }

    #[test]
    fn more_measurements_concentrate_better() {
        let part = BlockPartition::new(64, 8).unwrap();
        let median_of = |t: usize| {
            let mut v: Vec<f64> = (0..10)
                .map(|s| {
                    empirical_rip_probe(&gaussian_psi(t, 64, s), &part, 2, 200, 0.5, 100 + s)
                        .unwrap()
                        .xi_hat
                        .unwrap()
                })
                .collect();
            v.sort_by(f64::total_cmp);
            0.5 * (v[4] + v[5])
        };
        assert!(median_of(64) < median_of(32));
    }

    #[test]
    fn probe_edge_cases() {
        let psi = gaussian_psi(8, 16, 1);
        let part = BlockPartition::new(16, 4).unwrap();
        let r = empirical_rip_probe(&psi, &part, 1, 0, 0.5, 1).unwrap();
        assert!(r.xi_hat.is_none() && r.violation_rate.is_none() && r.median_deviation().is_none());
        assert!(empirical_rip_probe(&psi, &part, 5, 10, 0.5, 1).is_err());
        assert!(empirical_rip_probe(&psi, &BlockPartition::new(32, 4).unwrap(), 1, 10, 0.5, 1).is_err());
        let a = empirical_rip_probe(&psi, &part, 2, 50, 0.5, 4).unwrap();
        assert_eq!(a, empirical_rip_probe(&psi, &part, 2, 50, 0.5, 4).unwrap());
    }

    #[test]
    fn gaussian_sensing_entries() {
        let c = cfg(256);
        let dict = build_dmu(&c, d(20.0));
        let f = gen_pilots(100, 256, PilotKind::Gaussian, 7);
        let r = gaussianity_probe(&f, &dict, 100_000, 1).unwrap();
        assert!(r.relative_variance_error < 0.05, "{r:?}");
        assert!(r.mean.norm() < 0.05 * r.target_variance.sqrt());
        assert!(r.cross_correlation < 0.05);
        assert!(!r.degenerate);

        let rf = gen_pilots(100, 256, PilotKind::Rademacher, 7);
        let r = gaussianity_probe(&rf, &dict, 100_000, 1).unwrap();
        assert!(r.relative_variance_error < 0.05, "{r:?}");
    }

    #[test]
    fn zero_pilots_are_degenerate() {
        let dict = build_dft(&cfg(16));
        let r = gaussianity_probe(&CMatrix::zeros(4, 16), &dict, 1000, 1).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.variance, 0.0);
    }
}
