//! Experiment configuration.
//!
//! A config is resolved in three layers: the preset for the experiment kind,
//! then an optional TOML file (dotted sections such as `array.n_antennas`
//! or `experiment.snr_db_list`), then command-line overrides.

use std::fmt;
use std::path::Path;

use nearfield_core::coherence::thresholds;
use nearfield_core::geometry::ArrayConfig;
use nearfield_core::recovery::PilotKind;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Result, SimError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    CoherenceError,
    SparsityLevel,
    MutualCoherence,
    BlockSizeSweep,
    #[serde(rename = "nmse_vs_T")]
    NmseVsT,
    NmseVsSnr,
    NmseVsMu0,
    RipProbe,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 8] = [
        ExperimentKind::CoherenceError,
        ExperimentKind::SparsityLevel,
        ExperimentKind::MutualCoherence,
        ExperimentKind::BlockSizeSweep,
        ExperimentKind::NmseVsT,
        ExperimentKind::NmseVsSnr,
        ExperimentKind::NmseVsMu0,
        ExperimentKind::RipProbe,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ExperimentKind::CoherenceError => "coherence_error",
            ExperimentKind::SparsityLevel => "sparsity_level",
            ExperimentKind::MutualCoherence => "mutual_coherence",
            ExperimentKind::BlockSizeSweep => "block_size_sweep",
            ExperimentKind::NmseVsT => "nmse_vs_T",
            ExperimentKind::NmseVsSnr => "nmse_vs_snr",
            ExperimentKind::NmseVsMu0 => "nmse_vs_mu0",
            ExperimentKind::RipProbe => "rip_probe",
        }
    }

    pub fn is_nmse(self) -> bool {
        matches!(
            self,
            ExperimentKind::BlockSizeSweep
                | ExperimentKind::NmseVsT
                | ExperimentKind::NmseVsSnr
                | ExperimentKind::NmseVsMu0
        )
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    DmuBlockOmp,
    PolarOmp,
    DftOmp,
    Ls,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    Paper,
    Desk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pilot {
    Gaussian,
    Rademacher,
}

impl From<Pilot> for PilotKind {
    fn from(p: Pilot) -> Self {
        match p {
            Pilot::Gaussian => PilotKind::Gaussian,
            Pilot::Rademacher => PilotKind::Rademacher,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MuKeyword {
    /// Drawn per trial from `U[F_r, R]`.
    Random,
    Infinite,
}

/// Dictionary effective distance: meters, or a keyword.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MuChoice {
    Meters(f64),
    Keyword(MuKeyword),
}

impl fmt::Display for MuChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuChoice::Meters(v) => write!(f, "{v}"),
            MuChoice::Keyword(MuKeyword::Random) => f.write_str("random"),
            MuChoice::Keyword(MuKeyword::Infinite) => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArraySection {
    pub carrier_freq: f64,
    pub n_antennas: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSection {
    pub n_paths: usize,
    pub power_split_db: f64,
    /// Path distance range in meters; defaults depend on the experiment.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance_range: Option<[f64; 2]>,
    pub normalize_power: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    pub kind: ExperimentKind,
    pub methods: Vec<Method>,
    pub t_list: Vec<usize>,
    pub snr_db_list: Vec<f64>,
    pub mu_list: Vec<MuChoice>,
    pub block_sizes: Vec<usize>,
    pub n_antennas_list: Vec<usize>,
    pub mu0_bins: Vec<f64>,
    /// Relative half-width of each `mu0` bin.
    pub mu0_bin_width: f64,
    pub delta: f64,
    pub polar_rings: usize,
    pub pilot: Pilot,
    /// Block budget for block OMP; atom budget for OMP.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    pub rip_k: usize,
    pub rip_samples: usize,
    pub rip_target_xi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub trials: usize,
    pub preset: Preset,
    pub array: ArraySection,
    pub channel: ChannelSection,
    pub experiment: ExperimentSection,
}

impl ExperimentConfig {
    /// Defaults for `kind` at the given scale. `paper` runs the full grids
    /// with 10^3 trials; `desk` keeps the setup but uses fewer trials.
    pub fn preset(kind: ExperimentKind, preset: Preset) -> Self {
        use ExperimentKind::*;
        let paper = preset == Preset::Paper;
        let trials = match (preset, kind) {
            (Preset::Paper, _) => 1000,
            (Preset::Desk, MutualCoherence | NmseVsMu0) => 100,
            (Preset::Desk, _) => 200,
        };
        let n_antennas_list = match (kind, paper) {
            (CoherenceError, true) => vec![256, 512, 768, 1024, 1280, 1536, 1792, 2048, 2304, 2560],
            (CoherenceError, false) => vec![256, 1024],
            _ => vec![256, 512, 1024],
        };
        let t_list = match kind {
            MutualCoherence if paper => vec![100, 200],
            MutualCoherence | BlockSizeSweep | NmseVsMu0 => vec![100],
            NmseVsT if paper => vec![40, 60, 80, 100, 120, 140, 160],
            NmseVsT => vec![40, 80, 120],
            NmseVsSnr => vec![80],
            RipProbe => vec![32, 64, 128],
            _ => vec![],
        };
        let snr_db_list = match kind {
            BlockSizeSweep | NmseVsSnr if paper => vec![-5.0, 0.0, 5.0, 10.0, 15.0, 20.0],
            BlockSizeSweep | NmseVsSnr => vec![0.0, 5.0, 10.0],
            NmseVsT | NmseVsMu0 => vec![5.0],
            _ => vec![],
        };
        let mu_list = match kind {
            NmseVsT | NmseVsSnr => vec![
                MuChoice::Meters(20.0),
                MuChoice::Meters(50.0),
                MuChoice::Meters(80.0),
                MuChoice::Keyword(MuKeyword::Random),
            ],
            NmseVsMu0 => vec![MuChoice::Meters(20.0), MuChoice::Meters(50.0)],
            _ => vec![MuChoice::Meters(20.0)],
        };
        let methods = match kind {
            BlockSizeSweep => vec![Method::DmuBlockOmp],
            NmseVsT | NmseVsSnr | NmseVsMu0 => vec![Method::DmuBlockOmp, Method::PolarOmp],
            _ => vec![],
        };
        let block_sizes = match kind {
            BlockSizeSweep => vec![2, 4, 8, 16, 32],
            RipProbe => vec![16],
            _ => vec![4],
        };
        ExperimentConfig {
            seed: None,
            trials,
            preset,
            array: ArraySection {
                carrier_freq: 100e9,
                n_antennas: 256,
            },
            channel: ChannelSection {
                n_paths: 3,
                power_split_db: 13.0,
                distance_range: None,
                normalize_power: false,
            },
            experiment: ExperimentSection {
                kind,
                methods,
                t_list,
                snr_db_list,
                mu_list,
                block_sizes,
                n_antennas_list,
                mu0_bins: vec![6.0, 20.0, 50.0, 80.0],
                mu0_bin_width: 0.1,
                delta: 0.01,
                polar_rings: 6,
                pilot: Pilot::Gaussian,
                k_max: None,
                rip_k: 2,
                rip_samples: 200,
                rip_target_xi: 0.5,
            },
        }
    }

    /// Preset for `kind`, overlaid with the TOML text `overlay`.
    pub fn from_toml(kind: ExperimentKind, preset: Preset, overlay: &str) -> Result<Self> {
        let file: toml::Table = overlay
            .parse()
            .map_err(|e: toml::de::Error| SimError::config("<file>", e.message().to_string()))?;
        if let Some(v) = file.get("experiment").and_then(|e| e.get("kind")) {
            let named = v.as_str().unwrap_or_default();
            if named != kind.id() {
                return Err(SimError::config(
                    "experiment.kind",
                    format!("config names `{named}` but `{kind}` was requested"),
                ));
            }
        }
        let preset = match file.get("preset").and_then(|v| v.as_str()) {
            Some("paper") => Preset::Paper,
            Some("desk") => Preset::Desk,
            Some(other) => return Err(SimError::config("preset", format!("unknown preset `{other}`"))),
            None => preset,
        };
        let base = toml::Table::try_from(Self::preset(kind, preset))
            .map_err(|e| SimError::config("<preset>", e.to_string()))?;
        let merged = merge(base, file);
        serde_path_to_error::deserialize(toml::Value::Table(merged)).map_err(|e| {
            let path = e.path().to_string();
            SimError::config(path, e.into_inner().message().to_string())
        })
    }

    pub fn load(kind: ExperimentKind, preset: Preset, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| SimError::io(path, e))?;
        Self::from_toml(kind, preset, &text)
    }

    pub fn seed(&self) -> Result<u64> {
        self.seed
            .ok_or_else(|| SimError::config("seed", "a seed is required (config `seed` or --seed)"))
    }

    pub fn array_config(&self) -> Result<ArrayConfig> {
        array_config(self.array.carrier_freq, self.array.n_antennas, "array")
    }

    /// First 16 hex digits of SHA-256 over the canonical JSON form.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("config serializes");
        let digest = Sha256::digest(&canonical);
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Checks every field the selected experiment reads.
    pub fn validate(&self) -> Result<()> {
        use ExperimentKind::*;
        let e = &self.experiment;
        self.seed()?;
        if self.trials == 0 {
            return Err(SimError::config("trials", "must be at least 1"));
        }
        let cfg = self.array_config()?;
        let n = cfg.n_antennas();
        if self.channel.n_paths == 0 {
            return Err(SimError::config("channel.n_paths", "must be at least 1"));
        }
        if !self.channel.power_split_db.is_finite() {
            return Err(SimError::config("channel.power_split_db", "must be finite"));
        }
        if let Some([lo, hi]) = self.channel.distance_range {
            if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
                return Err(SimError::config(
                    "channel.distance_range",
                    "must satisfy 0 < min <= max < inf",
                ));
            }
        }
        let non_empty = |len: usize, path: &str| {
            if len == 0 {
                Err(SimError::config(path, format!("must be non-empty for {}", e.kind)))
            } else {
                Ok(())
            }
        };
        match e.kind {
            CoherenceError | SparsityLevel => {
                non_empty(e.n_antennas_list.len(), "experiment.n_antennas_list")?;
                for &m in &e.n_antennas_list {
                    array_config(self.array.carrier_freq, m, "experiment.n_antennas_list")?;
                    if e.kind == SparsityLevel {
                        thresholds(m, e.delta, 0.0)
                            .map_err(|err| SimError::config("experiment.delta", err.to_string()))?;
                    }
                }
            }
            _ => {
                non_empty(e.t_list.len(), "experiment.t_list")?;
                if e.t_list.contains(&0) {
                    return Err(SimError::config("experiment.t_list", "entries must be >= 1"));
                }
            }
        }
        if e.kind.is_nmse() {
            non_empty(e.snr_db_list.len(), "experiment.snr_db_list")?;
            if e.snr_db_list.iter().any(|s| s.is_nan() || *s == f64::NEG_INFINITY) {
                return Err(SimError::config("experiment.snr_db_list", "entries must be numbers or inf"));
            }
            non_empty(e.methods.len(), "experiment.methods")?;
            if e.methods.contains(&Method::Ls) && e.t_list.iter().any(|&t| t < n) {
                return Err(SimError::config(
                    "experiment.methods",
                    format!("ls needs every T >= N = {n}"),
                ));
            }
        }
        if e.kind == NmseVsMu0 {
            non_empty(e.mu0_bins.len(), "experiment.mu0_bins")?;
            if e.mu0_bins.iter().any(|m| !(*m > 0.0 && m.is_finite())) {
                return Err(SimError::config("experiment.mu0_bins", "entries must be positive"));
            }
            if !(e.mu0_bin_width > 0.0 && e.mu0_bin_width < 1.0) {
                return Err(SimError::config("experiment.mu0_bin_width", "must lie in (0, 1)"));
            }
        }
        let needs_mu = matches!(e.kind, MutualCoherence | RipProbe)
            || (e.kind.is_nmse() && e.methods.contains(&Method::DmuBlockOmp));
        if needs_mu {
            non_empty(e.mu_list.len(), "experiment.mu_list")?;
            for mu in &e.mu_list {
                if let MuChoice::Meters(v) = mu {
                    if v.is_nan() || *v <= 0.0 {
                        return Err(SimError::config("experiment.mu_list", "distances must be positive"));
                    }
                }
            }
        }
        let needs_blocks = e.kind == RipProbe || (e.kind.is_nmse() && e.methods.contains(&Method::DmuBlockOmp));
        if needs_blocks {
            non_empty(e.block_sizes.len(), "experiment.block_sizes")?;
            for &s in &e.block_sizes {
                if s == 0 || n % s != 0 {
                    return Err(SimError::config(
                        "experiment.block_sizes",
                        format!("block size {s} does not divide N = {n}"),
                    ));
                }
            }
        }
        if (e.kind == MutualCoherence || e.methods.contains(&Method::PolarOmp)) && e.polar_rings == 0 {
            return Err(SimError::config("experiment.polar_rings", "must be at least 1"));
        }
        if e.kind.is_nmse() || e.kind == RipProbe {
            thresholds(n, e.delta, 0.0).map_err(|err| SimError::config("experiment.delta", err.to_string()))?;
        }
        if e.k_max == Some(0) {
            return Err(SimError::config("experiment.k_max", "must be at least 1"));
        }
        if e.kind == RipProbe {
            let s = e.block_sizes[0];
            if e.rip_k == 0 || e.rip_k > n / s {
                return Err(SimError::config("experiment.rip_k", "must lie in 1..=N/block_size"));
            }
            if e.rip_samples == 0 {
                return Err(SimError::config("experiment.rip_samples", "must be at least 1"));
            }
            if !(e.rip_target_xi > 0.0 && e.rip_target_xi < 1.0) {
                return Err(SimError::config("experiment.rip_target_xi", "must lie in (0, 1)"));
            }
        }
        Ok(())
    }
}

fn array_config(freq: f64, n: usize, path: &str) -> Result<ArrayConfig> {
    ArrayConfig::half_wavelength(freq, n).map_err(|e| SimError::config(path, e.to_string()))
}

/// Recursive table merge; `overlay` wins on conflicts.
fn merge(mut base: toml::Table, overlay: toml::Table) -> toml::Table {
    for (key, value) in overlay {
        match (base.remove(&key), value) {
            (Some(toml::Value::Table(b)), toml::Value::Table(o)) => {
                base.insert(key, toml::Value::Table(merge(b, o)));
            }
            (_, v) => {
                base.insert(key, v);
            }
        }
    }
    base
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate_with_a_seed() {
        for kind in ExperimentKind::ALL {
            for preset in [Preset::Paper, Preset::Desk] {
                let mut c = ExperimentConfig::preset(kind, preset);
                assert!(matches!(c.validate(), Err(SimError::Config { ref path, .. }) if path == "seed"));
                c.seed = Some(1);
                c.validate().unwrap_or_else(|e| panic!("{kind} {preset:?}: {e}"));
            }
        }
    }

    #[test]
    fn overlay_replaces_dotted_fields() {
        let text = r#"
            seed = 42
            trials = 7
            [array]
            n_antennas = 64
            [experiment]
            snr_db_list = [1.5, inf]
            mu_list = [20.0, "random"]
        "#;
        let c = ExperimentConfig::from_toml(ExperimentKind::NmseVsSnr, Preset::Desk, text).unwrap();
        assert_eq!(c.seed, Some(42));
        assert_eq!(c.trials, 7);
        assert_eq!(c.array.n_antennas, 64);
        assert_eq!(c.array.carrier_freq, 100e9);
        assert_eq!(c.experiment.snr_db_list, vec![1.5, f64::INFINITY]);
        assert_eq!(
            c.experiment.mu_list,
            vec![MuChoice::Meters(20.0), MuChoice::Keyword(MuKeyword::Random)]
        );
        assert_eq!(c.experiment.t_list, vec![80]);
    }

    #[test]
    fn errors_carry_field_paths() {
        let bad = "[array]\nn_antennas = \"many\"\n";
        match ExperimentConfig::from_toml(ExperimentKind::NmseVsT, Preset::Desk, bad) {
            Err(SimError::Config { path, .. }) => assert_eq!(path, "array.n_antennas"),
            other => panic!("{other:?}"),
        }
        let unknown = "[experiment]\nsnr_list = [1.0]\n";
        assert!(ExperimentConfig::from_toml(ExperimentKind::NmseVsT, Preset::Desk, unknown).is_err());
        let wrong_kind = "[experiment]\nkind = \"rip_probe\"\n";
        match ExperimentConfig::from_toml(ExperimentKind::NmseVsT, Preset::Desk, wrong_kind) {
            Err(SimError::Config { path, .. }) => assert_eq!(path, "experiment.kind"),
            other => panic!("{other:?}"),
        }

        let mut c = ExperimentConfig::preset(ExperimentKind::BlockSizeSweep, Preset::Desk);
        c.seed = Some(0);
        c.experiment.block_sizes = vec![4, 3];
        match c.validate() {
            Err(SimError::Config { path, .. }) => assert_eq!(path, "experiment.block_sizes"),
            other => panic!("{other:?}"),
        }
        c.experiment.block_sizes = vec![4];
        c.experiment.snr_db_list.clear();
        match c.validate() {
            Err(SimError::Config { path, .. }) => assert_eq!(path, "experiment.snr_db_list"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ls_needs_enough_pilots() {
        let mut c = ExperimentConfig::preset(ExperimentKind::NmseVsT, Preset::Desk);
        c.seed = Some(0);
        c.experiment.methods = vec![Method::Ls];
        assert!(c.validate().is_err());
        c.experiment.t_list = vec![256, 512];
        c.validate().unwrap();
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let mut a = ExperimentConfig::preset(ExperimentKind::RipProbe, Preset::Desk);
        a.seed = Some(3);
        let b = a.clone();
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 16);
        a.trials += 1;
        assert_ne!(a.hash(), b.hash());
    }
}
