//! Monte Carlo pipelines, one per experiment kind.
//!
//! Every trial draws from its own generator seeded by
//! `derive_seed(master, [kind, grid point..., trial])`, so trials can run in
//! any order or in parallel with identical results. All methods inside a
//! trial see the same channel, pilots and noise.

use rayon::prelude::*;

use nearfield_core::block_rip::{exact_sqrt, sample_complexity, varrho_bound, VarrhoMode};
use nearfield_core::coherence::{
    coherence_approx, coherence_exact, empirical_sparsity, params_from_sines, sparsity_bound,
};
use nearfield_core::dictionary::{build_dft, build_dmu, build_polar_baseline, mutual_coherence, Dictionary};
use nearfield_core::geometry::{
    effective_distance, near_steering, synthesize_channel, ArrayConfig, ChannelSampler, ChannelSpec,
    Distance, SteeringMode,
};
use nearfield_core::recovery::{
    block_omp, default_k_max, draw_pilots, ls_estimate, make_problem, nmse, omp, BlockPartition,
};
use nearfield_core::block_rip::empirical_rip_probe;
use nearfield_core::rng::{derive_seed, label_hash, open_unit_interval, seeded, SimRng};
use rand::Rng;

use crate::config::{ExperimentConfig, ExperimentKind, Method, MuChoice, MuKeyword};
use crate::error::{Result, SimError};
use crate::fast::DmuAnalyzer;
use crate::table::{ResultRow, Table};

/// Block size whose default budget sets the atom budget of plain OMP.
const REFERENCE_BLOCK: usize = 4;

/// Upper limit on channel draws per accepted `mu0` bin sample.
const MAX_REJECTIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Aggregate {
    Mean,
    Median,
    Max,
}

/// Per-trial samples of one metric for one method.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub method: String,
    pub metric: String,
    pub aggregate: Aggregate,
    pub samples: Vec<f64>,
}

impl Series {
    fn new(method: impl Into<String>, metric: &str, aggregate: Aggregate, samples: Vec<f64>) -> Self {
        Series {
            method: method.into(),
            metric: metric.to_string(),
            aggregate,
            samples,
        }
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    /// Standard error of the mean; `None` below two samples.
    pub fn std_err(&self) -> Option<f64> {
        std_err(&self.samples)
    }

    pub fn median(&self) -> f64 {
        let mut v = self.samples.clone();
        v.sort_by(f64::total_cmp);
        let m = v.len() / 2;
        if v.len() % 2 == 0 {
            0.5 * (v[m - 1] + v[m])
        } else {
            v[m]
        }
    }

    pub fn value(&self) -> f64 {
        match self.aggregate {
            Aggregate::Mean => self.mean(),
            Aggregate::Median => self.median(),
            Aggregate::Max => self.samples.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

pub fn std_err(samples: &[f64]) -> Option<f64> {
    let n = samples.len();
    if n < 2 {
        return None;
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    Some((var / n as f64).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    /// e.g. `T=80;snr_db=5`.
    pub label: String,
    pub series: Vec<Series>,
}

impl GridPoint {
    pub fn find(&self, method: &str, metric: &str) -> Option<&Series> {
        self.series.iter().find(|s| s.method == method && s.metric == metric)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Samples {
    pub kind: ExperimentKind,
    pub points: Vec<GridPoint>,
    pub notes: String,
}

impl Samples {
    pub fn point(&self, label: &str) -> Option<&GridPoint> {
        self.points.iter().find(|p| p.label == label)
    }
}

/// Runs the configured experiment and keeps every per-trial sample.
pub fn run_samples(cfg: &ExperimentConfig) -> Result<Samples> {
    cfg.validate()?;
    let ctx = Context::new(cfg)?;
    let points = match cfg.experiment.kind {
        ExperimentKind::CoherenceError => coherence_error(&ctx)?,
        ExperimentKind::SparsityLevel => sparsity_level(&ctx)?,
        ExperimentKind::MutualCoherence => mutual_coherence_cdf(&ctx)?,
        ExperimentKind::BlockSizeSweep | ExperimentKind::NmseVsT | ExperimentKind::NmseVsSnr => nmse_grid(&ctx)?,
        ExperimentKind::NmseVsMu0 => nmse_grid(&ctx)?,
        ExperimentKind::RipProbe => rip_probe(&ctx)?,
    };
    Ok(Samples {
        kind: cfg.experiment.kind,
        points,
        notes: notes(cfg),
    })
}

/// Runs the configured experiment and aggregates it into result rows,
/// grid-major and method-minor.
pub fn run(cfg: &ExperimentConfig) -> Result<Table> {
    let samples = run_samples(cfg)?;
    let seed = cfg.seed()?;
    let hash = cfg.hash();
    let rows = samples
        .points
        .iter()
        .flat_map(|p| {
            p.series.iter().map(|s| ResultRow {
                experiment: samples.kind.id().to_string(),
                method: s.method.clone(),
                grid: p.label.clone(),
                metric: s.metric.clone(),
                value: s.value(),
                std_err: match s.aggregate {
                    Aggregate::Mean => s.std_err(),
                    _ => None,
                },
                trials: s.samples.len(),
                seed,
                config_hash: hash.clone(),
                notes: samples.notes.clone(),
            })
        })
        .collect();
    Ok(Table { rows })
}

fn notes(cfg: &ExperimentConfig) -> String {
    let mut parts = vec![format!("preset={:?}", cfg.preset).to_lowercase()];
    let e = &cfg.experiment;
    if e.kind.is_nmse() {
        parts.push("snr=per-measurement,sigma2=|h|^2/(N*10^(snr/10))".into());
        parts.push(format!("pilot={:?}", e.pilot).to_lowercase());
        parts.push(match e.k_max {
            Some(k) => format!("k_max={k}"),
            None => "k_max=min(ceil(1.5*varrho),T/s),residual_tol=sqrt(T*sigma2)".into(),
        });
    }
    if e.kind == ExperimentKind::MutualCoherence || e.methods.contains(&Method::PolarOmp) {
        parts.push(format!(
            "polar=approximate,{} rings uniform in 1/r over [F_r,R] incl. inf",
            e.polar_rings
        ));
    }
    if e.kind == ExperimentKind::RipProbe {
        parts.push("probe=random sampling (not a certificate),psi=sqrt(N/T)*F*D".into());
    }
    parts.join("; ")
}

struct Context<'a> {
    cfg: &'a ExperimentConfig,
    array: ArrayConfig,
    seed: u64,
}

impl<'a> Context<'a> {
    fn new(cfg: &'a ExperimentConfig) -> Result<Self> {
        Ok(Context {
            cfg,
            array: cfg.array_config()?,
            seed: cfg.seed()?,
        })
    }

    fn trial_seed(&self, grid: &[u64], trial: u64) -> u64 {
        let mut parts = Vec::with_capacity(grid.len() + 2);
        parts.push(label_hash(self.cfg.experiment.kind.id()));
        parts.extend_from_slice(grid);
        parts.push(trial);
        derive_seed(self.seed, &parts)
    }

    /// Runs `trials` independent trials in parallel. Each trial returns one
    /// value per series; the result is transposed to one vector per series.
    fn trials<F>(&self, grid: &[u64], f: F) -> Result<Vec<Vec<f64>>>
    where
        F: Fn(u64) -> Result<Vec<f64>> + Sync + Send,
    {
        let per_trial: Vec<Vec<f64>> = (0..self.cfg.trials as u64)
            .into_par_iter()
            .map(|i| f(self.trial_seed(grid, i)))
            .collect::<Result<_>>()?;
        let width = per_trial.first().map_or(0, Vec::len);
        Ok((0..width)
            .map(|k| per_trial.iter().map(|row| row[k]).collect())
            .collect())
    }

    fn near_field_range(&self, cfg: &ArrayConfig) -> (f64, f64) {
        match self.cfg.channel.distance_range {
            Some([lo, hi]) => (lo, hi),
            None => {
                let fb = cfg.field_boundaries();
                (fb.fresnel, fb.rayleigh)
            }
        }
    }

    fn sampler(&self) -> ChannelSampler {
        let c = &self.cfg.channel;
        ChannelSampler {
            n_paths: c.n_paths,
            power_split_db: c.power_split_db,
            distance_range: c.distance_range.map(|[lo, hi]| (lo, hi)),
            normalize_power: c.normalize_power,
        }
    }
}

fn fmt_num(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".into()
    } else {
        format!("{v}")
    }
}

fn draw_point(rng: &mut SimRng, range: (f64, f64)) -> Result<(f64, Distance)> {
    let s = open_unit_interval(rng);
    let r = rng.random_range(range.0..=range.1);
    let mu = effective_distance(s.asin(), r)?.mu;
    Ok((s, Distance::new(mu)?))
}

fn coherence_error(ctx: &Context<'_>) -> Result<Vec<GridPoint>> {
    ctx.cfg
        .experiment
        .n_antennas_list
        .iter()
        .map(|&n| {
            let cfg = ArrayConfig::half_wavelength(ctx.array.carrier_freq(), n)?;
            let range = ctx.near_field_range(&cfg);
            let mut cols = ctx.trials(&[n as u64], |seed| {
                let mut rng = seeded(seed);
                let (s_m, mu) = draw_point(&mut rng, range)?;
                let (s_0, mu_0) = draw_point(&mut rng, range)?;
                let p = params_from_sines(&cfg, s_m, s_0, mu, mu_0);
                Ok(vec![(coherence_approx(&p) - coherence_exact(&p)).abs()])
            })?;
            let errors = cols.remove(0);
            Ok(GridPoint {
                label: format!("N={n}"),
                series: vec![
                    Series::new("closed_form", "abs_error", Aggregate::Mean, errors.clone()),
                    Series::new("closed_form", "abs_error_max", Aggregate::Max, errors),
                ],
            })
        })
        .collect()
}

fn sparsity_level(ctx: &Context<'_>) -> Result<Vec<GridPoint>> {
    let delta = ctx.cfg.experiment.delta;
    ctx.cfg
        .experiment
        .n_antennas_list
        .iter()
        .map(|&n| {
            let cfg = ArrayConfig::half_wavelength(ctx.array.carrier_freq(), n)?;
            let range = ctx.near_field_range(&cfg);
            let analyzer = DmuAnalyzer::new(&cfg);
            let sampler = ChannelSampler {
                distance_range: Some(range),
                normalize_power: true,
                ..ctx.sampler()
            };
            let cols = ctx.trials(&[n as u64], |seed| {
                let mut rng = seeded(seed);
                let mu = Distance::new(rng.random_range(range.0..=range.1))?;
                let spec = sampler.sample(&cfg, &mut rng)?;
                let los = spec.paths[0];
                let mu_0 = Distance::new(effective_distance(los.theta, los.distance)?.mu)?;
                let b = params_from_sines(&cfg, 0.0, 0.0, mu, mu_0).b;
                let bound = sparsity_bound(&cfg, delta, b)?.k_bar as f64 / n as f64;

                let h_los = near_steering(&cfg, los.theta, los.distance, SteeringMode::Exact)?;
                let h_multi = synthesize_channel(&cfg, &spec, SteeringMode::Exact)?;
                let (_, f_los) = empirical_sparsity(&analyzer.analyze(mu, &h_los)?, delta);
                let (_, f_multi) = empirical_sparsity(&analyzer.analyze(mu, &h_multi)?, delta);
                let below = |f: f64| if f < bound { 1.0 } else { 0.0 };
                Ok(vec![f_los, below(f_los), f_multi, below(f_multi), bound])
            })?;
            let [f_los, b_los, f_multi, b_multi, bound]: [Vec<f64>; 5] =
                cols.try_into().expect("five series per trial");
            Ok(GridPoint {
                label: format!("N={n}"),
                series: vec![
                    Series::new("los", "fraction", Aggregate::Mean, f_los),
                    Series::new("los", "below_bound_rate", Aggregate::Mean, b_los),
                    Series::new("multipath", "fraction", Aggregate::Mean, f_multi),
                    Series::new("multipath", "below_bound_rate", Aggregate::Mean, b_multi),
                    Series::new("theory", "bound_fraction", Aggregate::Mean, bound),
                ],
            })
        })
        .collect()
}

/// A dictionary that is either shared across trials or drawn per trial.
enum DictSource {
    Fixed(Dictionary),
    RandomMu,
}

fn dmu_label(mu: &MuChoice) -> String {
    format!("dmu(mu={mu})")
}

fn dmu_source(cfg: &ArrayConfig, mu: &MuChoice) -> Result<DictSource> {
    Ok(match mu {
        MuChoice::Meters(v) => DictSource::Fixed(build_dmu(cfg, Distance::new(*v)?)),
        MuChoice::Keyword(MuKeyword::Infinite) => DictSource::Fixed(build_dmu(cfg, Distance::Infinite)),
        MuChoice::Keyword(MuKeyword::Random) => DictSource::RandomMu,
    })
}

/// Per-trial `mu ~ U[F_r, R]` stream, independent of the channel and pilots.
fn random_mu(cfg: &ArrayConfig, trial_seed: u64) -> Result<Distance> {
    let fb = cfg.field_boundaries();
    let mut rng = seeded(derive_seed(trial_seed, &[2]));
    Ok(Distance::new(rng.random_range(fb.fresnel..=fb.rayleigh))?)
}

fn polar(cfg: &ArrayConfig, rings: usize) -> Result<Dictionary> {
    let fb = cfg.field_boundaries();
    Ok(build_polar_baseline(cfg, rings, (fb.fresnel, fb.rayleigh))?)
}

fn mutual_coherence_cdf(ctx: &Context<'_>) -> Result<Vec<GridPoint>> {
    let e = &ctx.cfg.experiment;
    let cfg = ctx.array;
    let n = cfg.n_antennas();
    let sources = e
        .mu_list
        .iter()
        .map(|mu| dmu_source(&cfg, mu))
        .collect::<Result<Vec<_>>>()?;
    let polar_dict = polar(&cfg, e.polar_rings)?;
    let mut labels: Vec<String> = e.mu_list.iter().map(dmu_label).collect();
    labels.push(format!("polar(rings={})", e.polar_rings));
    e.t_list
        .iter()
        .map(|&t| {
            let cols = ctx.trials(&[t as u64], |seed| {
                let f = draw_pilots(t, n, e.pilot.into(), &mut seeded(derive_seed(seed, &[1])));
                let mut out = Vec::with_capacity(sources.len() + 1);
                for src in &sources {
                    let psi = match src {
                        DictSource::Fixed(d) => f.matmul(d.matrix())?,
                        DictSource::RandomMu => f.matmul(build_dmu(&cfg, random_mu(&cfg, seed)?).matrix())?,
                    };
                    out.push(mutual_coherence(&psi)?);
                }
                out.push(mutual_coherence(&f.matmul(polar_dict.matrix())?)?);
                Ok(out)
            })?;
            let mut series = Vec::new();
            for (label, samples) in labels.iter().zip(cols) {
                series.push(Series::new(label.clone(), "mutual_coherence_median", Aggregate::Median, samples.clone()));
                series.push(Series::new(label.clone(), "mutual_coherence_mean", Aggregate::Mean, samples));
            }
            Ok(GridPoint {
                label: format!("T={t}"),
                series,
            })
        })
        .collect()
}

/// Worst-case block sparsity over the `sqrt(N)` partition; for non-square
/// `N` the same bound with a real-valued `sqrt(N)`.
fn varrho(cfg: &ArrayConfig, delta: f64) -> Result<usize> {
    let n = cfg.n_antennas();
    if exact_sqrt(n).is_some() {
        return Ok(varrho_bound(cfg, delta, VarrhoMode::WorstCase)?);
    }
    let nf = n as f64;
    let v = 2.0 * std::f64::consts::SQRT_2 / (std::f64::consts::PI * delta * nf.sqrt())
        + std::f64::consts::SQRT_2 / 1.24 * (nf / (nf - 1.0)).sqrt();
    Ok(v.ceil() as usize)
}

/// One estimator column of an NMSE experiment.
#[derive(Debug, Clone)]
enum Estimator {
    BlockOmp { dict: usize, block_size: usize },
    Omp { dict: usize },
    Ls { dict: usize },
}

struct NmsePlan {
    dicts: Vec<DictSource>,
    estimators: Vec<(String, Estimator)>,
    varrho: usize,
}

fn nmse_plan(ctx: &Context<'_>) -> Result<NmsePlan> {
    let e = &ctx.cfg.experiment;
    let cfg = ctx.array;
    let mut dicts = Vec::new();
    let mut estimators = Vec::new();
    let mut dft_index = None;
    let mut dft = |dicts: &mut Vec<DictSource>| {
        *dft_index.get_or_insert_with(|| {
            dicts.push(DictSource::Fixed(build_dft(&cfg)));
            dicts.len() - 1
        })
    };
    for method in &e.methods {
        match method {
            Method::DmuBlockOmp => {
                for mu in &e.mu_list {
                    dicts.push(dmu_source(&cfg, mu)?);
                    let dict = dicts.len() - 1;
                    for &s in &e.block_sizes {
                        estimators.push((
                            format!("dmu_block_omp(mu={mu},s={s})"),
                            Estimator::BlockOmp { dict, block_size: s },
                        ));
                    }
                }
            }
            Method::PolarOmp => {
                dicts.push(DictSource::Fixed(polar(&cfg, e.polar_rings)?));
                let dict = dicts.len() - 1;
                estimators.push((format!("polar_omp(rings={})", e.polar_rings), Estimator::Omp { dict }));
            }
            Method::DftOmp => {
                let dict = dft(&mut dicts);
                estimators.push(("dft_omp".into(), Estimator::Omp { dict }));
            }
            Method::Ls => {
                let dict = dft(&mut dicts);
                estimators.push(("ls".into(), Estimator::Ls { dict }));
            }
        }
    }
    Ok(NmsePlan {
        dicts,
        estimators,
        varrho: varrho(&cfg, e.delta)?,
    })
}

/// Effective distance of the strongest path.
fn strongest_mu(spec: &ChannelSpec) -> Result<f64> {
    let p = spec
        .paths
        .iter()
        .max_by(|a, b| a.gain.norm_sqr().total_cmp(&b.gain.norm_sqr()))
        .expect("sampled channels have at least one path");
    Ok(effective_distance(p.theta, p.distance)?.mu)
}

fn nmse_trial(
    ctx: &Context<'_>,
    plan: &NmsePlan,
    t: usize,
    snr_db: f64,
    mu0_bin: Option<f64>,
    seed: u64,
) -> Result<Vec<f64>> {
    let cfg = &ctx.array;
    let e = &ctx.cfg.experiment;
    let sampler = ctx.sampler();
    let mut rng = seeded(derive_seed(seed, &[0]));
    let spec = match mu0_bin {
        None => sampler.sample(cfg, &mut rng)?,
        Some(center) => {
            let (lo, hi) = (center * (1.0 - e.mu0_bin_width), center * (1.0 + e.mu0_bin_width));
            let mut accepted = None;
            for _ in 0..MAX_REJECTIONS {
                let spec = sampler.sample(cfg, &mut rng)?;
                let mu0 = strongest_mu(&spec)?;
                if (lo..=hi).contains(&mu0) {
                    accepted = Some(spec);
                    break;
                }
            }
            accepted.ok_or_else(|| {
                SimError::config(
                    "experiment.mu0_bins",
                    format!("no channel with mu0 in [{lo}, {hi}] after {MAX_REJECTIONS} draws"),
                )
            })?
        }
    };
    let problem_seed = derive_seed(seed, &[1]);
    let pilot = e.pilot.into();

    let mut trial_dicts: Vec<Option<Dictionary>> = Vec::with_capacity(plan.dicts.len());
    for src in &plan.dicts {
        trial_dicts.push(match src {
            DictSource::Fixed(_) => None,
            DictSource::RandomMu => Some(build_dmu(cfg, random_mu(cfg, seed)?)),
        });
    }
    let dict_at = |i: usize| -> &Dictionary {
        match (&plan.dicts[i], &trial_dicts[i]) {
            (DictSource::Fixed(d), _) => d,
            (DictSource::RandomMu, Some(d)) => d,
            (DictSource::RandomMu, None) => unreachable!("random dictionaries are drawn per trial"),
        }
    };

    let mut problems = Vec::with_capacity(plan.dicts.len());
    for i in 0..plan.dicts.len() {
        problems.push(make_problem(cfg, dict_at(i), &spec, t, snr_db, pilot, problem_seed)?);
    }

    plan.estimators
        .iter()
        .map(|(_, est)| {
            let (problem, h_hat) = match *est {
                Estimator::BlockOmp { dict, block_size } => {
                    let p = &problems[dict];
                    let part = BlockPartition::new(p.sensing().cols(), block_size)?;
                    let k_max = e.k_max.unwrap_or_else(|| default_k_max(plan.varrho, t, block_size));
                    (p, block_omp(p, &part, k_max, p.default_residual_tol())?.h_hat)
                }
                Estimator::Omp { dict } => {
                    let p = &problems[dict];
                    let budget = e
                        .k_max
                        .unwrap_or_else(|| REFERENCE_BLOCK * default_k_max(plan.varrho, t, REFERENCE_BLOCK));
                    (p, omp(p, budget.min(t), p.default_residual_tol())?.h_hat)
                }
                Estimator::Ls { dict } => {
                    let p = &problems[dict];
                    (p, ls_estimate(p)?)
                }
            };
            let h = &problem.truth().expect("generated problems carry truth").h;
            Ok(nmse(h, &h_hat)?)
        })
        .collect()
}

fn nmse_grid(ctx: &Context<'_>) -> Result<Vec<GridPoint>> {
    let e = &ctx.cfg.experiment;
    let plan = nmse_plan(ctx)?;
    let mut grid: Vec<(usize, f64, Option<f64>)> = Vec::new();
    match e.kind {
        ExperimentKind::NmseVsT => {
            for &t in &e.t_list {
                for &s in &e.snr_db_list {
                    grid.push((t, s, None));
                }
            }
        }
        ExperimentKind::NmseVsMu0 => {
            for &t in &e.t_list {
                for &s in &e.snr_db_list {
                    for &m in &e.mu0_bins {
                        grid.push((t, s, Some(m)));
                    }
                }
            }
        }
        _ => {
            for &s in &e.snr_db_list {
                for &t in &e.t_list {
                    grid.push((t, s, None));
                }
            }
        }
    }
    grid.into_iter()
        .map(|(t, snr, bin)| {
            let mut key = vec![t as u64, snr.to_bits()];
            let mut label = format!("T={t};snr_db={}", fmt_num(snr));
            if let Some(m) = bin {
                key.push(m.to_bits());
                label.push_str(&format!(";mu0={}", fmt_num(m)));
            }
            let cols = ctx.trials(&key, |seed| nmse_trial(ctx, &plan, t, snr, bin, seed))?;
            Ok(GridPoint {
                label,
                series: plan
                    .estimators
                    .iter()
                    .zip(cols)
                    .map(|((name, _), samples)| Series::new(name.clone(), "nmse", Aggregate::Mean, samples))
                    .collect(),
            })
        })
        .collect()
}

fn rip_probe(ctx: &Context<'_>) -> Result<Vec<GridPoint>> {
    let e = &ctx.cfg.experiment;
    let cfg = ctx.array;
    let n = cfg.n_antennas();
    let s = e.block_sizes[0];
    let mu = e.mu_list[0];
    let source = dmu_source(&cfg, &mu)?;
    let part = BlockPartition::new(n, s)?;
    let method = format!("dmu(mu={mu},s={s},k={})", e.rip_k);
    let mut points = e
        .t_list
        .iter()
        .map(|&t| {
            let cols = ctx.trials(&[t as u64], |seed| {
                let f = draw_pilots(t, n, e.pilot.into(), &mut seeded(derive_seed(seed, &[1])));
                let mut psi = match &source {
                    DictSource::Fixed(d) => f.matmul(d.matrix())?,
                    DictSource::RandomMu => f.matmul(build_dmu(&cfg, random_mu(&cfg, seed)?).matrix())?,
                };
                psi.scale((n as f64 / t as f64).sqrt());
                let report = empirical_rip_probe(
                    &psi,
                    &part,
                    e.rip_k,
                    e.rip_samples,
                    e.rip_target_xi,
                    derive_seed(seed, &[3]),
                )?;
                Ok(vec![
                    report.xi_hat.expect("rip_samples >= 1"),
                    report.violation_rate.expect("rip_samples >= 1"),
                ])
            })?;
            let [xi, viol]: [Vec<f64>; 2] = cols.try_into().expect("two series per trial");
            Ok(GridPoint {
                label: format!("T={t}"),
                series: vec![
                    Series::new(method.clone(), "xi_hat_median", Aggregate::Median, xi),
                    Series::new(method.clone(), "violation_rate", Aggregate::Mean, viol),
                ],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if exact_sqrt(n).is_some() {
        let varrho = varrho_bound(&cfg, e.delta, VarrhoMode::WorstCase)?;
        let sc = sample_complexity(n, varrho.min(exact_sqrt(n).unwrap()), e.rip_target_xi, 1.0)?;
        points.push(GridPoint {
            label: format!("theory;xi={};kappa=1", fmt_num(e.rip_target_xi)),
            series: vec![
                Series::new("worst_case", "varrho", Aggregate::Mean, vec![varrho as f64]),
                Series::new("worst_case", "t_min", Aggregate::Mean, vec![sc.t_min as f64]),
                Series::new("worst_case", "t_min_exact_binomial", Aggregate::Mean, vec![sc.raw_exact.ceil()]),
            ],
        });
    }
    Ok(points)
}
