//! Command-line front end for the bosonbudget simulator.
//!
//! [`run`] executes one command and renders its report. JSON reports share
//! an envelope with a `schemaVersion` field and validate against
//! `schemas/report.schema.json`.

pub mod commands;
pub mod config;
pub mod error;
pub mod io;

use bosonbudget_core::noise::SourceModel;
use serde::Serialize;
use serde_json::Value;

use crate::commands::{execute, unitary_origin, UnitaryOrigin};
use crate::config::{Command, DistinguishabilitySpec, Format, RunConfig};
use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: &str = "1.0.0";

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Tool {
    name: &'static str,
    version: &'static str,
    parallel: bool,
    threads: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Parameters<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    photons: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    modes: Option<usize>,
    source: &'a SourceModel,
    loss: f64,
    dark_rate: f64,
    distinguishability: &'a DistinguishabilitySpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unitary: Option<UnitaryOrigin>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Report<'a> {
    schema_version: &'static str,
    command: Command,
    seed: Option<u64>,
    tool: Tool,
    parameters: Parameters<'a>,
    result: Value,
}

/// Runs the command on a pool of `cfg.threads` workers and returns the
/// rendered report.
pub fn run(cfg: &RunConfig) -> CliResult<String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| CliError::usage(format!("cannot start worker pool: {e}")))?;
    let threads = pool.current_num_threads();
    let outcome = pool.install(|| execute(cfg))?;
    match cfg.format {
        Format::Csv => Ok(outcome.csv),
        Format::Json => {
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: cfg.command,
                seed: cfg.seed,
                tool: Tool {
                    name: env!("CARGO_PKG_NAME"),
                    version: env!("CARGO_PKG_VERSION"),
                    parallel: bosonbudget_core::par::is_parallel(),
                    threads,
                },
                parameters: Parameters {
                    photons: cfg.photons,
                    modes: cfg.modes,
                    source: &cfg.source,
                    loss: cfg.detector.loss(),
                    dark_rate: cfg.detector.dark_rate(),
                    distinguishability: &cfg.distinguishability,
                    epsilon: cfg.epsilon,
                    delta: cfg.delta,
                    samples: cfg.samples,
                    unitary: unitary_origin(cfg),
                },
                result: outcome.result,
            };
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            Ok(text)
        }
    }
}

/// Runs and writes the report to `--out`, or returns it for stdout.
pub fn run_to_destination(cfg: &RunConfig) -> CliResult<Option<String>> {
    let text = run(cfg)?;
    match &cfg.out {
        Some(path) => {
            io::write_text(path, &text)?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}
