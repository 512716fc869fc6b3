//! Pilot design, observation synthesis and sparse / least-squares channel
//! estimators for `y = F h + n = F D beta + n`.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;
use rand::Rng;

use crate::dictionary::Dictionary;
use crate::geometry::{synthesize_channel, ArrayConfig, ChannelSpec, SteeringMode};
use crate::linalg::{lstsq, norm, norm_sqr};
use crate::rng::{complex_normal, seeded};
use crate::{CMatrix, Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PilotKind {
    /// i.i.d. `CN(0, 1/N)`.
    Gaussian,
    /// i.i.d. `±1/sqrt(N)`.
    Rademacher,
}

/// `T x N` pilot matrix drawn row by row, so a longer pilot sequence under
/// the same stream extends a shorter one.
pub fn draw_pilots<R: Rng + ?Sized>(t: usize, n: usize, kind: PilotKind, rng: &mut R) -> CMatrix {
    let nf = n as f64;
    let mut rows = Vec::with_capacity(t * n);
    for _ in 0..t * n {
        rows.push(match kind {
            PilotKind::Gaussian => complex_normal(rng, 1.0 / nf),
            PilotKind::Rademacher => {
                let v = if rng.random::<bool>() { 1.0 } else { -1.0 };
                C64::new(v / nf.sqrt(), 0.0)
            }
        });
    }
    CMatrix::from_fn(t, n, |i, j| rows[i * n + j])
}

pub fn gen_pilots(t: usize, n: usize, kind: PilotKind, seed: u64) -> CMatrix {
    draw_pilots(t, n, kind, &mut seeded(seed))
}

/// Per-measurement SNR convention: `sigma^2 = ||h||^2 / (N 10^(snr/10))`, so
/// that `E|f_t^T h|^2 / sigma^2` equals the SNR for `CN(0, 1/N)` pilots.
/// Infinite SNR gives zero noise.
pub fn noise_variance(h: &[C64], snr_db: f64) -> f64 {
    if snr_db == f64::INFINITY {
        0.0
    } else {
        norm_sqr(h) / (h.len() as f64 * 10f64.powf(snr_db / 10.0))
    }
}

/// Ground truth kept with a problem for scoring.
#[derive(Debug, Clone, PartialEq)]
pub struct Truth {
    pub h: Vec<C64>,
    /// `D^H h`.
    pub beta: Vec<C64>,
}

/// Observations of one channel through one pilot matrix.
#[derive(Debug, Clone)]
pub struct SensingProblem<'d> {
    dictionary: &'d Dictionary,
    pilots: CMatrix,
    sensing: CMatrix,
    observations: Vec<C64>,
    noise: Vec<C64>,
    noise_variance: f64,
    truth: Option<Truth>,
}

impl<'d> SensingProblem<'d> {
    /// `y = F h + noise`; `noise_variance` is recorded for stopping rules.
    pub fn new(
        dictionary: &'d Dictionary,
        pilots: CMatrix,
        h: Vec<C64>,
        noise: Vec<C64>,
        noise_variance: f64,
    ) -> Result<Self> {
        if pilots.rows() != noise.len() {
            return Err(Error::mismatch("noise length", pilots.rows(), noise.len()));
        }
        let mut y = pilots.mul_vec(&h)?;
        for (v, e) in y.iter_mut().zip(&noise) {
            *v += e;
        }
        let beta = dictionary.analyze(&h)?.beta;
        let mut problem = Self::from_observations(dictionary, pilots, y, noise_variance)?;
        problem.noise = noise;
        problem.truth = Some(Truth { h, beta });
        Ok(problem)
    }

    /// A problem without ground truth.
    pub fn from_observations(
        dictionary: &'d Dictionary,
        pilots: CMatrix,
        observations: Vec<C64>,
        noise_variance: f64,
    ) -> Result<Self> {
        if !(noise_variance >= 0.0 && noise_variance.is_finite()) {
            return Err(Error::invalid("noise_variance", noise_variance, "must be finite and >= 0"));
        }
        if pilots.rows() != observations.len() {
            return Err(Error::mismatch("observation length", pilots.rows(), observations.len()));
        }
        let sensing = pilots.matmul(dictionary.matrix())?;
        let t = observations.len();
        Ok(SensingProblem {
            dictionary,
            pilots,
            sensing,
            observations,
            noise: vec![C64::zero(); t],
            noise_variance,
            truth: None,
        })
    }

    pub fn dictionary(&self) -> &'d Dictionary {
        self.dictionary
    }

    pub fn pilots(&self) -> &CMatrix {
        &self.pilots
    }

    /// `Psi = F D`.
    pub fn sensing(&self) -> &CMatrix {
        &self.sensing
    }

    pub fn observations(&self) -> &[C64] {
        &self.observations
    }

    pub fn noise(&self) -> &[C64] {
        &self.noise
    }

    pub fn noise_variance(&self) -> f64 {
        self.noise_variance
    }

    pub fn truth(&self) -> Option<&Truth> {
        self.truth.as_ref()
    }

    pub fn n_pilots(&self) -> usize {
        self.observations.len()
    }

    /// `sqrt(T sigma^2)`, the expected noise norm.
    pub fn default_residual_tol(&self) -> f64 {
        (self.n_pilots() as f64 * self.noise_variance).sqrt()
    }
}

/// Draws pilots and noise from `seed` (pilots first, row by row) for the
/// exact-model channel of `spec`. Problems built from the same seed share
/// `F` and `n` regardless of the dictionary.
pub fn make_problem<'d>(
    cfg: &ArrayConfig,
    dictionary: &'d Dictionary,
    spec: &ChannelSpec,
    t: usize,
    snr_db: f64,
    pilot_kind: PilotKind,
    seed: u64,
) -> Result<SensingProblem<'d>> {
    if t == 0 {
        return Err(Error::invalid("t", 0.0, "need at least one pilot"));
    }
    if snr_db.is_nan() {
        return Err(Error::invalid("snr_db", snr_db, "must not be NaN"));
    }
    let h = synthesize_channel(cfg, spec, SteeringMode::Exact)?;
    let mut rng = seeded(seed);
    let pilots = draw_pilots(t, cfg.n_antennas(), pilot_kind, &mut rng);
    let sigma2 = noise_variance(&h, snr_db);
    let noise = if sigma2 > 0.0 {
        (0..t).map(|_| complex_normal(&mut rng, sigma2)).collect()
    } else {
        vec![C64::zero(); t]
    };
    SensingProblem::new(dictionary, pilots, h, noise, sigma2)
}

/// Uniform contiguous partition of `M` atoms into blocks of `block_size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockPartition {
    block_size: usize,
    n_blocks: usize,
}

impl BlockPartition {
    pub fn new(n_atoms: usize, block_size: usize) -> Result<Self> {
        if block_size == 0 || n_atoms == 0 || n_atoms % block_size != 0 {
            return Err(Error::invalid(
                "block_size",
                block_size as f64,
                "must be positive and divide the number of atoms",
            ));
        }
        Ok(BlockPartition {
            block_size,
            n_blocks: n_atoms / block_size,
        })
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn n_blocks(&self) -> usize {
        self.n_blocks
    }

    pub fn n_atoms(&self) -> usize {
        self.block_size * self.n_blocks
    }

    pub fn block(&self, i: usize) -> core::ops::Range<usize> {
        i * self.block_size..(i + 1) * self.block_size
    }
}

/// Default block budget: `min(ceil(1.5 varrho), floor(T / s))`, at least one.
pub fn default_k_max(varrho: usize, t: usize, block_size: usize) -> usize {
    let budget = (3 * varrho).div_ceil(2);
    budget.min(t / block_size.max(1)).max(1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryResult {
    pub beta_hat: Vec<C64>,
    /// Selected atom indices, block by block in selection order.
    pub support: Vec<usize>,
    /// Selected block indices in selection order.
    pub blocks: Vec<usize>,
    /// `D beta_hat`.
    pub h_hat: Vec<C64>,
    pub iterations: usize,
    pub residual_norm: f64,
    /// `||r||` before the first and after every iteration.
    pub residual_history: Vec<f64>,
    /// Whether any least-squares sub-solve needed the ridge fallback.
    pub regularized: bool,
}

/// Block orthogonal matching pursuit.
///
/// Each iteration adds the unused block maximizing `||Psi_i^H r||` (lowest
/// index on ties), re-fits all selected atoms by least squares and updates
/// the residual. Stops after `k_max` blocks, when `||r|| <= residual_tol`,
/// or when the residual is orthogonal to every remaining block.
pub fn block_omp(
    problem: &SensingProblem<'_>,
    partition: &BlockPartition,
    k_max: usize,
    residual_tol: f64,
) -> Result<RecoveryResult> {
    let psi = problem.sensing();
    let m = psi.cols();
    if partition.n_atoms() != m {
        return Err(Error::mismatch("partition size", m, partition.n_atoms()));
    }
    let y = problem.observations();
    let mut residual = y.to_vec();
    let mut history = vec![norm(&residual)];
    let mut used = vec![false; partition.n_blocks()];
    let mut blocks = Vec::new();
    let mut support = Vec::new();
    let mut coef = Vec::new();
    let mut regularized = false;

    while blocks.len() < k_max && *history.last().unwrap() > residual_tol {
        let corr = psi.adjoint_mul_vec(&residual)?;
        let mut best: Option<(usize, f64)> = None;
        for i in (0..partition.n_blocks()).filter(|&i| !used[i]) {
            let score: f64 = corr[partition.block(i)].iter().map(|c| c.norm_sqr()).sum();
            if best.map_or(true, |(_, s)| score > s) {
                best = Some((i, score));
            }
        }
        let Some((chosen, score)) = best else { break };
        if score == 0.0 {
            break;
        }
        used[chosen] = true;
        blocks.push(chosen);
        support.extend(partition.block(chosen));

        let sub = psi.select_columns(&support);
        let fit = lstsq(&sub, y)?;
        regularized |= fit.regularized;
        coef = fit.x;
        residual.copy_from_slice(y);
        for (k, &c) in coef.iter().enumerate() {
            crate::linalg::axpy(-c, sub.col(k), &mut residual);
        }
        history.push(norm(&residual));
    }

    let mut beta_hat = vec![C64::zero(); m];
    for (&j, &c) in support.iter().zip(&coef) {
        beta_hat[j] = c;
    }
    let h_hat = problem.dictionary().synthesize(&beta_hat)?;
    Ok(RecoveryResult {
        beta_hat,
        iterations: blocks.len(),
        support,
        blocks,
        h_hat,
        residual_norm: *history.last().unwrap(),
        residual_history: history,
        regularized,
    })
}

/// Orthogonal matching pursuit: block OMP with single-atom blocks.
pub fn omp(problem: &SensingProblem<'_>, k_max: usize, residual_tol: f64) -> Result<RecoveryResult> {
    let partition = BlockPartition::new(problem.sensing().cols(), 1)?;
    block_omp(problem, &partition, k_max, residual_tol)
}

/// Least-squares estimate of `h` from `y = F h + n`; needs `T >= N`.
pub fn ls_estimate(problem: &SensingProblem<'_>) -> Result<Vec<C64>> {
    let f = problem.pilots();
    if f.rows() < f.cols() {
        return Err(Error::invalid(
            "t",
            f.rows() as f64,
            "least squares needs at least N pilots",
        ));
    }
    Ok(lstsq(f, problem.observations())?.x)
}

/// `||h - h_hat||^2 / ||h||^2`.
pub fn nmse(h: &[C64], h_hat: &[C64]) -> Result<f64> {
    if h.len() != h_hat.len() {
        return Err(Error::mismatch("estimate length", h.len(), h_hat.len()));
    }
    let den = norm_sqr(h);
    if den == 0.0 {
        return Err(Error::invalid("h", 0.0, "truth must be nonzero"));
    }
    let num: f64 = h.iter().zip(h_hat).map(|(a, b)| (a - b).norm_sqr()).sum();
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dictionary::{build_dft, build_dmu};
    use crate::geometry::{ChannelSampler, Distance, PathParams};
    use proptest::prelude::*;
    use rand::Rng;

    fn cfg(n: usize) -> ArrayConfig {
        ArrayConfig::half_wavelength(100e9, n).unwrap()
    }

    fn single_path(theta: f64, r: f64) -> ChannelSpec {
        ChannelSpec {
            paths: vec![PathParams {
                gain: C64::new(0.8, -0.3),
                theta,
                distance: r,
                is_los: true,
            }],
        }
    }

    #[test]
    fn rademacher_entries_have_fixed_modulus() {
        let f = gen_pilots(20, 64, PilotKind::Rademacher, 3);
        for v in f.as_slice() {
            assert_eq!(v.norm(), 1.0 / 8.0);
            assert_eq!(v.im, 0.0);
        }
    }

    #[test]
    fn gaussian_pilot_variance() {
        let n = 1000;
        let f = gen_pilots(1000, n, PilotKind::Gaussian, 4);
        let var = norm_sqr(f.as_slice()) / f.as_slice().len() as f64;
        assert!((var * n as f64 - 1.0).abs() < 0.05);
    }

    #[test]
    fn pilots_are_reproducible_and_prefix_stable() {
        let a = gen_pilots(30, 16, PilotKind::Gaussian, 9);
        assert_eq!(a, gen_pilots(30, 16, PilotKind::Gaussian, 9));
        assert_ne!(a, gen_pilots(30, 16, PilotKind::Gaussian, 10));
        let b = gen_pilots(40, 16, PilotKind::Gaussian, 9);
        for j in 0..16 {
            assert_eq!(a.col(j), &b.col(j)[..30]);
        }
    }

    #[test]
    fn noiseless_problem_is_exact() {
        let c = cfg(64);
        let dict = build_dmu(&c, Distance::new(10.0).unwrap());
        let spec = single_path(0.3, 6.0);
        let p = make_problem(&c, &dict, &spec, 20, f64::INFINITY, PilotKind::Gaussian, 1).unwrap();
        let truth = p.truth().unwrap();
        assert_eq!(p.observations(), p.pilots().mul_vec(&truth.h).unwrap().as_slice());
        assert_eq!(p.noise_variance(), 0.0);
        let psi = p.pilots().matmul(dict.matrix()).unwrap();
        assert!(psi.max_abs_diff(p.sensing()) < 1e-12);
        let via_beta = p.sensing().mul_vec(&truth.beta).unwrap();
        for (a, b) in via_beta.iter().zip(p.observations()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn identity_pilots_add_noise_to_channel() {
        let c = cfg(32);
        let dict = build_dft(&c);
        let h = synthesize_channel(&c, &single_path(-0.2, 4.0), SteeringMode::Exact).unwrap();
        let mut rng = seeded(2);
        let noise: Vec<C64> = (0..32).map(|_| complex_normal(&mut rng, 0.01)).collect();
        let p = SensingProblem::new(&dict, CMatrix::identity(32), h.clone(), noise.clone(), 0.01).unwrap();
        for i in 0..32 {
            assert_eq!(p.observations()[i], h[i] + noise[i]);
        }
        assert_eq!(p.noise(), noise.as_slice());
    }

    #[test]
    fn snr_convention_matches_pilot_energy() {
        // E|f_t^T h|^2 = ||h||^2 / N for CN(0, 1/N) pilots.
        let c = cfg(64);
        let h = synthesize_channel(&c, &single_path(0.4, 5.0), SteeringMode::Exact).unwrap();
        let f = gen_pilots(20_000, 64, PilotKind::Gaussian, 8);
        let y = f.mul_vec(&h).unwrap();
        let energy = norm_sqr(&y) / y.len() as f64;
        let sigma2 = noise_variance(&h, 10.0);
        assert!((energy / sigma2 / 10.0 - 1.0).abs() < 0.05);
        assert!((sigma2 - norm_sqr(&h) / 640.0).abs() < 1e-15);
    }

    #[test]
    fn partition_must_divide() {
        assert!(BlockPartition::new(256, 3).is_err());
        assert!(BlockPartition::new(256, 0).is_err());
        let p = BlockPartition::new(256, 16).unwrap();
        assert_eq!(p.n_blocks(), 16);
        assert_eq!(p.block(2), 32..48);
    }

    fn gaussian_problem<'d>(dict: &'d Dictionary, t: usize, beta: &[C64], seed: u64) -> SensingProblem<'d> {
        let n = dict.n_rows();
        let f = gen_pilots(t, n, PilotKind::Gaussian, seed);
        let h = dict.synthesize(beta).unwrap();
        SensingProblem::new(dict, f, h, vec![C64::zero(); t], 0.0).unwrap()
    }

    #[test]
    fn single_block_is_recovered() {
        let c = cfg(64);
        let dict = build_dmu(&c, Distance::new(8.0).unwrap());
        let mut beta = vec![C64::zero(); 64];
        for (k, v) in beta[12..16].iter_mut().enumerate() {
            *v = C64::new(1.0 + k as f64, -0.5);
        }
        let p = gaussian_problem(&dict, 24, &beta, 1);
        let part = BlockPartition::new(64, 4).unwrap();
        let res = block_omp(&p, &part, 1, 0.0).unwrap();
        assert_eq!(res.blocks, vec![3]);
        assert!(res.residual_norm < 1e-9);
        assert!(nmse(&beta, &res.beta_hat).unwrap() < 1e-18);
    }

    #[test]
    fn zero_budget_returns_zero() {
        let c = cfg(16);
        let dict = build_dft(&c);
        let mut beta = vec![C64::zero(); 16];
        beta[2] = C64::new(1.0, 0.0);
        let p = gaussian_problem(&dict, 6, &beta, 1);
        let res = block_omp(&p, &BlockPartition::new(16, 2).unwrap(), 0, 0.0).unwrap();
        assert!(res.beta_hat.iter().all(|v| v.is_zero()));
        assert_eq!(res.residual_norm, norm(p.observations()));
        assert_eq!(res.iterations, 0);
    }

    #[test]
    fn block_two_sparse_gaussian_recovery_rate() {
        // Oracle: least squares restricted to the true support.
        let n = 256;
        let dict = build_dft(&cfg(n));
        let part = BlockPartition::new(n, 4).unwrap();
        let mut rng = seeded(123);
        let trials = 500;
        let mut ok = 0;
        for trial in 0..trials {
            let mut blocks = [rng.random_range(0..64usize), 0];
            loop {
                blocks[1] = rng.random_range(0..64);
                if blocks[1] != blocks[0] {
                    break;
                }
            }
            let mut beta = vec![C64::zero(); n];
            for &b in &blocks {
                for j in part.block(b) {
                    beta[j] = complex_normal(&mut rng, 1.0);
                }
            }
            let p = gaussian_problem(&dict, 80, &beta, 1000 + trial);
            let mut true_support: Vec<usize> = blocks.iter().flat_map(|&b| part.block(b)).collect();
            true_support.sort_unstable();
            let oracle = lstsq(&p.sensing().select_columns(&true_support), p.observations()).unwrap();
            let mut oracle_beta = vec![C64::zero(); n];
            for (&j, &v) in true_support.iter().zip(&oracle.x) {
                oracle_beta[j] = v;
            }
            assert!(nmse(&beta, &oracle_beta).unwrap() < 1e-20);

            let res = block_omp(&p, &part, 2, 0.0).unwrap();
            if nmse(&beta, &res.beta_hat).unwrap().sqrt() < 1e-6 {
                ok += 1;
            }
        }
        assert!(ok * 100 >= 95 * trials, "{ok}/{trials}");
    }

    #[test]
    fn omp_matches_unit_block_omp_and_recovers_one_atom() {
        let c = cfg(64);
        let dict = build_dmu(&c, Distance::new(5.0).unwrap());
        let mut beta = vec![C64::zero(); 64];
        beta[40] = C64::new(-0.7, 0.2);
        let p = gaussian_problem(&dict, 12, &beta, 5);
        let a = omp(&p, 3, 0.0).unwrap();
        let b = block_omp(&p, &BlockPartition::new(64, 1).unwrap(), 3, 0.0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.support[0], 40);
        assert!(nmse(&beta, &a.beta_hat).unwrap() < 1e-20);
        assert!(a.support.len() <= 3);
    }

    #[test]
    fn residual_tolerance_stops_early() {
        let c = cfg(64);
        let dict = build_dft(&c);
        let mut beta = vec![C64::zero(); 64];
        beta[7] = C64::new(1.0, 0.0);
        let p = gaussian_problem(&dict, 16, &beta, 2);
        let res = omp(&p, 10, 1e-8).unwrap();
        assert_eq!(res.iterations, 1);
    }

    #[test]
    fn ls_recovers_noiseless_channel() {
        let c = cfg(32);
        let dict = build_dft(&c);
        let spec = single_path(0.1, 3.0);
        let p = make_problem(&c, &dict, &spec, 32, f64::INFINITY, PilotKind::Gaussian, 4).unwrap();
        let h = &p.truth().unwrap().h;
        let hh = ls_estimate(&p).unwrap();
        for (a, b) in h.iter().zip(&hh) {
            assert!((a - b).norm() < 1e-8);
        }
        let p = make_problem(&c, &dict, &spec, 64, f64::INFINITY, PilotKind::Gaussian, 4).unwrap();
        assert!(nmse(h, &ls_estimate(&p).unwrap()).unwrap() < 1e-16);
        let p = make_problem(&c, &dict, &spec, 31, f64::INFINITY, PilotKind::Gaussian, 4).unwrap();
        assert!(ls_estimate(&p).is_err());
    }

    #[test]
    fn nmse_cases() {
        let h = vec![C64::new(1.0, 2.0), C64::new(-0.5, 0.0)];
        assert_eq!(nmse(&h, &h).unwrap(), 0.0);
        assert_eq!(nmse(&h, &[C64::zero(); 2]).unwrap(), 1.0);
        let twice: Vec<C64> = h.iter().map(|v| v * 2.0).collect();
        assert!((nmse(&h, &twice).unwrap() - 1.0).abs() < 1e-15);
        assert!(nmse(&[C64::zero(); 2], &h).is_err());
    }

    #[test]
    fn default_budget() {
        assert_eq!(default_k_max(7, 100, 4), 11);
        assert_eq!(default_k_max(7, 20, 4), 5);
        assert_eq!(default_k_max(0, 20, 4), 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn omp_invariants(seed in 0u64..10_000, s in prop::sample::select(vec![1usize, 2, 4, 8]), snr in 0.0f64..30.0) {
            let c = cfg(64);
            let dict = build_dmu(&c, Distance::new(6.0).unwrap());
            let spec = ChannelSampler::new(3, 13.0).sample(&c, &mut seeded(seed)).unwrap();
            let p = make_problem(&c, &dict, &spec, 32, snr, PilotKind::Gaussian, seed).unwrap();
            let part = BlockPartition::new(64, s).unwrap();
            let k_max = 32 / s;
            let res = block_omp(&p, &part, k_max, p.default_residual_tol()).unwrap();
            for w in res.residual_history.windows(2) {
                prop_assert!(w[1] <= w[0] * (1.0 + 1e-9));
            }
            prop_assert_eq!(res.support.len(), s * res.blocks.len());
            let mut distinct = res.blocks.clone();
            distinct.sort_unstable();
            distinct.dedup();
            prop_assert_eq!(distinct.len(), res.blocks.len());
            prop_assert!(res.blocks.len() <= k_max);
            let synth = dict.synthesize(&res.beta_hat).unwrap();
            prop_assert_eq!(synth, res.h_hat.clone());

            if s == 1 {
                prop_assert_eq!(omp(&p, k_max, p.default_residual_tol()).unwrap(), res.clone());
            }

            // Scale equivariance.
            let scale = 3.5;
            let h: Vec<C64> = p.truth().unwrap().h.iter().map(|v| v * scale).collect();
            let noise: Vec<C64> = p.noise().iter().map(|v| v * scale).collect();
            let q = SensingProblem::new(&dict, p.pilots().clone(), h, noise, p.noise_variance() * scale * scale).unwrap();
            let scaled = block_omp(&q, &part, k_max, q.default_residual_tol()).unwrap();
            prop_assert_eq!(&scaled.blocks, &res.blocks);
            for (a, b) in scaled.beta_hat.iter().zip(&res.beta_hat) {
                prop_assert!((a - b * scale).norm() <= 1e-9 * (1.0 + b.norm() * scale));
            }
        }
    }
}
