use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nearfield_core::dictionary::{build_dft, build_dmu, build_polar_baseline};
use nearfield_core::geometry::{ArrayConfig, Distance};
use nearfield_sim::config::{ExperimentConfig, ExperimentKind, Preset};
use nearfield_sim::export::write_dictionary;
use nearfield_sim::table::Format;
use nearfield_sim::{run, Result, SimError};

#[derive(Parser)]
#[command(name = "nfcs", version, about = "Near-field compressed channel estimation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form vs exact coherence error across array sizes.
    CoherenceError(RunArgs),
    /// Fraction of significant D_mu coefficients against the bound.
    SparsityLevel(RunArgs),
    /// Mutual coherence of F*D_mu vs F*polar.
    MutualCoherence(RunArgs),
    /// NMSE across block sizes and SNR.
    BlockSizeSweep(RunArgs),
    /// NMSE vs pilot length.
    #[command(name = "nmse-vs-t")]
    NmseVsT(RunArgs),
    /// NMSE vs SNR.
    NmseVsSnr(RunArgs),
    /// NMSE vs the effective distance of the strongest path.
    NmseVsMu0(RunArgs),
    /// Empirical block-RIP deviation of F*D_mu.
    RipProbe(RunArgs),
    /// Write a dictionary in the binary NFCS layout.
    ExportDictionary(ExportArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML file overriding the preset.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, value_enum, default_value = "desk")]
    preset: PresetArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetArg {
    Paper,
    Desk,
}

#[derive(Clone, Copy, ValueEnum)]
enum DictArg {
    Dmu,
    Dft,
    Polar,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long, value_enum)]
    kind: DictArg,
    /// Effective distance in meters, or `inf`.
    #[arg(long, default_value = "20")]
    mu: String,
    #[arg(long, default_value_t = 256)]
    n_antennas: usize,
    #[arg(long, default_value_t = 100e9)]
    carrier_freq: f64,
    #[arg(long, default_value_t = 6)]
    rings: usize,
    #[arg(long)]
    out: PathBuf,
}

fn run_experiment(kind: ExperimentKind, args: RunArgs) -> Result<()> {
    let preset = match args.preset {
        PresetArg::Paper => Preset::Paper,
        PresetArg::Desk => Preset::Desk,
    };
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::load(kind, preset, path)?,
        None => ExperimentConfig::preset(kind, preset),
    };
    if let Some(seed) = args.seed {
        cfg.seed = Some(seed);
    }
    if let Some(trials) = args.trials {
        cfg.trials = trials;
    }
    let format = match (args.format, &args.out) {
        (Some(FormatArg::Csv), _) => Format::Csv,
        (Some(FormatArg::Json), _) => Format::Json,
        (None, Some(p)) => Format::from_path(p),
        (None, None) => Format::Csv,
    };
    let table = run(&cfg)?;
    match &args.out {
        Some(path) => table.write(path, format),
        None => table.write_to(&mut io::stdout().lock(), format),
    }
}

fn export(args: ExportArgs) -> Result<()> {
    let cfg = ArrayConfig::half_wavelength(args.carrier_freq, args.n_antennas)?;
    let dict = match args.kind {
        DictArg::Dft => build_dft(&cfg),
        DictArg::Dmu => build_dmu(&cfg, parse_mu(&args.mu)?),
        DictArg::Polar => {
            let fb = cfg.field_boundaries();
            build_polar_baseline(&cfg, args.rings, (fb.fresnel, fb.rayleigh))?
        }
    };
    write_dictionary(Path::new(&args.out), dict.matrix())
}

fn parse_mu(text: &str) -> Result<Distance> {
    if text.eq_ignore_ascii_case("inf") {
        return Ok(Distance::Infinite);
    }
    let v: f64 = text
        .parse()
        .map_err(|_| SimError::config("mu", format!("expected meters or `inf`, got `{text}`")))?;
    Ok(Distance::new(v)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::CoherenceError(a) => run_experiment(ExperimentKind::CoherenceError, a),
        Command::SparsityLevel(a) => run_experiment(ExperimentKind::SparsityLevel, a),
        Command::MutualCoherence(a) => run_experiment(ExperimentKind::MutualCoherence, a),
        Command::BlockSizeSweep(a) => run_experiment(ExperimentKind::BlockSizeSweep, a),
        Command::NmseVsT(a) => run_experiment(ExperimentKind::NmseVsT, a),
        Command::NmseVsSnr(a) => run_experiment(ExperimentKind::NmseVsSnr, a),
        Command::NmseVsMu0(a) => run_experiment(ExperimentKind::NmseVsMu0, a),
        Command::RipProbe(a) => run_experiment(ExperimentKind::RipProbe, a),
        Command::ExportDictionary(a) => export(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
