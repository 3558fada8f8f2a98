//! Command-line arguments, the optional TOML config file and the validated
//! run configuration built from both. Flags override file values.

use std::path::{Path, PathBuf};

use bosonbudget_core::distinguishability::{g_from_jitter, DistinguishabilityParams, JitterSourceSpec};
use bosonbudget_core::noise::{DetectorModel, SourceModel};
use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::io::read_text;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Draw click patterns from a noisy device.
    Sample,
    /// Exact output distribution of a small device.
    Distribution,
    /// Distance of a noisy device from its ideal counterpart.
    Distance,
    /// Error-budget bounds, verdicts and tolerances.
    Budget,
    /// Witness, round-trip and suppression checks.
    Verify,
    /// Time the core kernels.
    Bench,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Sample => "sample",
            Command::Distribution => "distribution",
            Command::Distance => "distance",
            Command::Budget => "budget",
            Command::Verify => "verify",
            Command::Bench => "bench",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "bosonbudget", version, about = "Boson-sampling noise-budget simulator and analyzer")]
pub struct Cli {
    pub command: Command,

    /// TOML file with run parameters; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Report path (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Number of sources N.
    #[arg(long, short = 'n')]
    pub photons: Option<usize>,
    /// Number of modes M.
    #[arg(long, short = 'm')]
    pub modes: Option<usize>,
    /// Source photon-number distribution p_0,p_1,...
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub source: Option<Vec<f64>>,
    /// Detector loss probability r.
    #[arg(long)]
    pub loss: Option<f64>,
    /// Dark-count rate ν.
    #[arg(long)]
    pub dark_rate: Option<f64>,
    /// Cycle overlaps g_2,g_3,...
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub g: Option<Vec<f64>>,
    /// Average pairwise fidelity F.
    #[arg(long)]
    pub fidelity: Option<f64>,
    /// Spectral width σ_ω of a jittered Gaussian source.
    #[arg(long)]
    pub spectral_width: Option<f64>,
    /// Arrival-time jitter σ_τ.
    #[arg(long)]
    pub jitter: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Number of samples to draw.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Haar networks to average over in `distance`.
    #[arg(long)]
    pub networks: Option<usize>,
    /// Network unitary file (.json or .csv); otherwise a Haar draw.
    #[arg(long)]
    pub unitary: Option<PathBuf>,
    /// Write the unitary used to this file.
    #[arg(long)]
    pub save_unitary: Option<PathBuf>,
    /// Sample file for `verify`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Values of N for the budget scaling table.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub scaling: Option<Vec<usize>>,
    /// Matrix sizes for `bench`.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub sizes: Option<Vec<usize>>,
}

/// Keys accepted in the config file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub format: Option<Format>,
    pub photons: Option<usize>,
    pub modes: Option<usize>,
    pub source: Option<Vec<f64>>,
    pub loss: Option<f64>,
    pub dark_rate: Option<f64>,
    pub g: Option<Vec<f64>>,
    pub fidelity: Option<f64>,
    pub spectral_width: Option<f64>,
    pub jitter: Option<f64>,
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    pub samples: Option<usize>,
    pub networks: Option<usize>,
    pub unitary: Option<PathBuf>,
    pub input: Option<PathBuf>,
    pub scaling: Option<Vec<usize>>,
    pub sizes: Option<Vec<usize>>,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = read_text(path)?;
        let mut cfg: FileConfig = toml::from_str(&text).map_err(|e| CliError::parse(path, e.message()))?;
        // Relative paths inside the file are relative to the file.
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut cfg.unitary, &mut cfg.input].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }
}

/// How photon distinguishability was specified.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase", rename_all_fields = "camelCase", tag = "kind")]
pub enum DistinguishabilitySpec {
    Indistinguishable,
    Explicit { g: Vec<f64> },
    Fidelity { avg_fidelity: f64 },
    Jitter { spectral_width: f64, jitter_std: f64 },
}

/// Validated parameters of one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub photons: Option<usize>,
    pub modes: Option<usize>,
    pub source: SourceModel,
    pub detector: DetectorModel,
    pub distinguishability: DistinguishabilitySpec,
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    pub samples: Option<usize>,
    pub networks: usize,
    pub unitary: Option<PathBuf>,
    pub save_unitary: Option<PathBuf>,
    pub input: Option<PathBuf>,
    pub scaling: Vec<usize>,
    pub sizes: Vec<usize>,
}

fn finite(name: &str, x: f64) -> CliResult<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::usage(format!("--{name} must be finite, got {x}")))
    }
}

impl RunConfig {
    /// Merges flags over the config file and validates every range.
    pub fn resolve(cli: Cli) -> CliResult<Self> {
        let file = match &cli.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let source = cli.source.or(file.source).unwrap_or_else(|| vec![0.0, 1.0]);
        let loss = finite("loss", cli.loss.or(file.loss).unwrap_or(0.0))?;
        let dark_rate = finite("dark-rate", cli.dark_rate.or(file.dark_rate).unwrap_or(0.0))?;
        let g = cli.g.or(file.g);
        let fidelity = cli.fidelity.or(file.fidelity);
        let spectral_width = cli.spectral_width.or(file.spectral_width);
        let jitter = cli.jitter.or(file.jitter);
        let distinguishability = match (g, fidelity, spectral_width, jitter) {
            (None, None, None, None) => DistinguishabilitySpec::Indistinguishable,
            (Some(g), None, None, None) => DistinguishabilitySpec::Explicit { g },
            (None, Some(f), None, None) => DistinguishabilitySpec::Fidelity { avg_fidelity: finite("fidelity", f)? },
            (None, None, Some(w), Some(j)) => DistinguishabilitySpec::Jitter { spectral_width: w, jitter_std: j },
            (None, None, Some(_), None) | (None, None, None, Some(_)) => {
                return Err(CliError::usage("--spectral-width and --jitter must be given together"))
            }
            _ => return Err(CliError::usage("give at most one of --g, --fidelity or --spectral-width/--jitter")),
        };
        let cfg = RunConfig {
            command: cli.command,
            seed: cli.seed.or(file.seed),
            threads: cli.threads.or(file.threads),
            out: cli.out,
            format: cli.format.or(file.format).unwrap_or_default(),
            photons: cli.photons.or(file.photons),
            modes: cli.modes.or(file.modes),
            source: SourceModel::new(source)?,
            detector: DetectorModel::new(loss, dark_rate)?,
            distinguishability,
            epsilon: cli.epsilon.or(file.epsilon),
            delta: cli.delta.or(file.delta),
            samples: cli.samples.or(file.samples),
            networks: cli.networks.or(file.networks).unwrap_or(1),
            unitary: cli.unitary.or(file.unitary),
            save_unitary: cli.save_unitary,
            input: cli.input.or(file.input),
            scaling: cli.scaling.or(file.scaling).unwrap_or_default(),
            sizes: cli.sizes.or(file.sizes).unwrap_or_else(|| vec![8, 12, 16]),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> CliResult<()> {
        if self.threads == Some(0) {
            return Err(CliError::usage("--threads must be at least 1"));
        }
        if let (Some(n), Some(m)) = (self.photons, self.modes) {
            if n == 0 || m < n {
                return Err(CliError::usage(format!("need M >= N >= 1, got N={n}, M={m}")));
            }
        }
        if self.networks == 0 {
            return Err(CliError::usage("--networks must be at least 1"));
        }
        if self.networks > 1 && self.unitary.is_some() {
            return Err(CliError::usage("--networks averages over Haar draws and cannot be combined with --unitary"));
        }
        if self.networks > 1 && self.command != Command::Distance {
            return Err(CliError::usage("--networks only applies to distance"));
        }
        if let Some(e) = self.epsilon {
            finite("epsilon", e)?;
        }
        if let Some(d) = self.delta {
            finite("delta", d)?;
        }
        if self.sizes.iter().any(|&n| n == 0 || n > 24) {
            return Err(CliError::usage("--sizes must lie in 1..=24"));
        }
        if self.is_stochastic() && self.seed.is_none() {
            return Err(CliError::usage(format!("{} draws random numbers and needs an explicit --seed", self.command.name())));
        }
        Ok(())
    }

    /// Whether the command draws random numbers with these settings.
    pub fn is_stochastic(&self) -> bool {
        match self.command {
            Command::Sample | Command::Bench => true,
            Command::Distribution | Command::Distance | Command::Verify => self.unitary.is_none(),
            Command::Budget => false,
        }
    }

    pub fn photons(&self) -> CliResult<usize> {
        self.photons.ok_or_else(|| CliError::usage(format!("{} needs --photons", self.command.name())))
    }

    pub fn modes(&self) -> CliResult<usize> {
        self.modes.ok_or_else(|| CliError::usage(format!("{} needs --modes", self.command.name())))
    }

    pub fn require<T: Copy>(&self, value: Option<T>, flag: &str) -> CliResult<T> {
        value.ok_or_else(|| CliError::usage(format!("{} needs --{flag}", self.command.name())))
    }

    /// Overlap parameters covering cycles up to length `max_k`.
    pub fn overlaps(&self, max_k: usize) -> CliResult<DistinguishabilityParams> {
        let max_k = max_k.max(2);
        Ok(match &self.distinguishability {
            DistinguishabilitySpec::Indistinguishable => DistinguishabilityParams::indistinguishable(max_k),
            DistinguishabilitySpec::Explicit { g } => {
                if g.len() + 1 < max_k {
                    return Err(CliError::usage(format!("--g lists g_2..g_{} but N = {max_k} needs g_2..g_{max_k}", g.len() + 1)));
                }
                DistinguishabilityParams::new(g.clone(), None)?
            }
            DistinguishabilitySpec::Fidelity { avg_fidelity } => DistinguishabilityParams::from_fidelity(*avg_fidelity, max_k)?,
            DistinguishabilitySpec::Jitter { spectral_width, jitter_std } => {
                g_from_jitter(&JitterSourceSpec { spectral_width: *spectral_width, jitter_std: *jitter_std }, max_k)?
            }
        })
    }
}
