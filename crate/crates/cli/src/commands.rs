//! The six commands. Each returns a JSON result and a CSV table.

use std::time::Instant;

use bosonbudget_core::budget::{evaluate_budget, scaling_table, Tolerance};
use bosonbudget_core::distinguishability::prob_mismatch;
use bosonbudget_core::fock::enumerate_outputs;
use bosonbudget_core::ideal::{full_distribution, DistributionTable};
use bosonbudget_core::noise::{
    bound_ra, bound_ra_simple, distance_parts, output_click_distribution, DeviceConfig, DeviceSampler, DistanceParts,
};
use bosonbudget_core::numeric::RunningStats;
use bosonbudget_core::permanent::permanent_ryser;
use bosonbudget_core::random::{gaussian_matrix, haar_unitary};
use bosonbudget_core::verify::{row_norm_witness, suppression_test, unitarity_roundtrip, MAX_SUPPRESSION_N};
use bosonbudget_core::{NetworkUnitary, OccupationVector, RngStream};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Command, DistinguishabilitySpec, RunConfig};
use crate::error::{CliError, CliResult};
use crate::io::{read_samples, read_unitary, samples_to_text, write_unitary};

/// RNG stream ids, so that networks, samples and bench inputs never share
/// random numbers.
const STREAM_NETWORKS: u64 = 1;
const STREAM_SAMPLES: u64 = 2;
const STREAM_BENCH: u64 = 3;

pub struct Outcome {
    pub result: Value,
    pub csv: String,
}

/// Where the network unitary came from.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase", tag = "origin")]
pub enum UnitaryOrigin {
    Haar { modes: usize, count: usize },
    File { path: String },
}

pub fn unitary_origin(cfg: &RunConfig) -> Option<UnitaryOrigin> {
    match (cfg.command, &cfg.unitary) {
        (Command::Budget | Command::Bench, _) => None,
        (_, Some(path)) => Some(UnitaryOrigin::File { path: path.display().to_string() }),
        (_, None) => Some(UnitaryOrigin::Haar { modes: cfg.modes.unwrap_or(0), count: cfg.networks }),
    }
}

pub fn execute(cfg: &RunConfig) -> CliResult<Outcome> {
    match cfg.command {
        Command::Sample => sample(cfg),
        Command::Distribution => distribution(cfg),
        Command::Distance => distance(cfg),
        Command::Budget => budget(cfg),
        Command::Verify => verify(cfg),
        Command::Bench => bench(cfg),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

/// The network with index `k`: the unitary file, or the k-th Haar draw.
fn network(cfg: &RunConfig, k: usize) -> CliResult<NetworkUnitary> {
    let u = match &cfg.unitary {
        Some(path) => {
            let u = read_unitary(path)?;
            if let Some(m) = cfg.modes {
                if m != u.modes() {
                    return Err(CliError::usage(format!("{} holds a {}-mode unitary but --modes is {m}", path.display(), u.modes())));
                }
            }
            u
        }
        None => {
            let seed = cfg.require(cfg.seed, "seed")?;
            haar_unitary(cfg.modes()?, &mut RngStream::with_stream(seed, STREAM_NETWORKS).child(k as u64))?
        }
    };
    if k == 0 {
        if let Some(path) = &cfg.save_unitary {
            write_unitary(path, &u)?;
        }
    }
    Ok(u)
}

fn device(cfg: &RunConfig, u: NetworkUnitary) -> CliResult<DeviceConfig> {
    let n = cfg.photons()?;
    if n > u.modes() {
        return Err(CliError::usage(format!("{n} photons do not fit a {}-mode network", u.modes())));
    }
    Ok(DeviceConfig::new(u, n, cfg.source.clone(), cfg.detector)?)
}

fn indistinguishable(cfg: &RunConfig) -> bool {
    match &cfg.distinguishability {
        DistinguishabilitySpec::Indistinguishable => true,
        DistinguishabilitySpec::Explicit { g } => g.iter().all(|&x| x == 1.0),
        _ => false,
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn sample(cfg: &RunConfig) -> CliResult<Outcome> {
    if !indistinguishable(cfg) {
        return Err(CliError::usage("sample draws indistinguishable photons only; drop the distinguishability options"));
    }
    let count = cfg.require(cfg.samples, "samples")?;
    let seed = cfg.require(cfg.seed, "seed")?;
    let dev = device(cfg, network(cfg, 0)?)?;
    let samples = DeviceSampler::new(&dev)?.sample(count, &RngStream::with_stream(seed, STREAM_SAMPLES));
    let mut histogram = vec![0usize; dev.modes() + 1];
    for s in &samples {
        histogram[s.click_count()] += 1;
    }
    let patterns: Vec<String> = samples.iter().map(|s| s.to_string()).collect();
    Ok(Outcome {
        result: json!({ "count": count, "clickCountHistogram": histogram, "samples": patterns }),
        csv: samples_to_text(&samples),
    })
}

fn table_entries<T: Ord + Clone + std::fmt::Display>(table: &DistributionTable<T>) -> (Value, String) {
    let entries: Vec<Value> = table.iter().map(|(o, p)| json!({ "outcome": o.to_string(), "probability": p })).collect();
    let mut csv = String::from("outcome,probability\n");
    for (o, p) in table.iter() {
        csv.push_str(&format!("{},{p:e}\n", csv_quote(&o.to_string())));
    }
    (json!({ "totalMass": table.total_mass(), "complete": table.is_complete(), "entries": entries }), csv)
}

fn distribution(cfg: &RunConfig) -> CliResult<Outcome> {
    let dev = device(cfg, network(cfg, 0)?)?;
    let (kind, (mut result, csv)) = if dev.is_noise_free() && indistinguishable(cfg) {
        ("occupation", table_entries(&full_distribution(&dev.unitary, &dev.ideal_input())?))
    } else if dev.is_noise_free() {
        let g = cfg.overlaps(dev.photons)?;
        let n0 = dev.ideal_input();
        let outcomes: Vec<OccupationVector> = enumerate_outputs(dev.modes(), dev.photons, false)?.collect();
        let probs = outcomes.iter().map(|s| prob_mismatch(&dev.unitary, &n0, s, &g)).collect::<Result<Vec<f64>, _>>()?;
        ("occupation", table_entries(&DistributionTable::new(outcomes, probs)?))
    } else if indistinguishable(cfg) {
        ("click", table_entries(&output_click_distribution(&dev)?))
    } else {
        return Err(CliError::usage("distribution combines either source/detector noise or distinguishability, not both"));
    };
    result["kind"] = json!(kind);
    Ok(Outcome { result, csv })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct PartsSummary {
    v1: f64,
    v2: f64,
    vb: f64,
    sum: f64,
}

fn distance(cfg: &RunConfig) -> CliResult<Outcome> {
    let n = cfg.photons()?;
    let mut rows: Vec<DistanceParts> = Vec::with_capacity(cfg.networks);
    let mut modes = 0;
    for k in 0..cfg.networks {
        let dev = device(cfg, network(cfg, k)?)?;
        modes = dev.modes();
        rows.push(distance_parts(&dev)?);
    }
    let stats = |f: fn(&DistanceParts) -> f64| rows.iter().map(f).collect::<RunningStats>();
    let (v1, v2, vb, sum) = (stats(|p| p.v1), stats(|p| p.v2), stats(|p| p.vb), stats(|p| p.sum()));
    let mean = PartsSummary { v1: v1.mean(), v2: v2.mean(), vb: vb.mean(), sum: sum.mean() };
    let se = (rows.len() > 1).then(|| PartsSummary {
        v1: v1.standard_error(),
        v2: v2.standard_error(),
        vb: vb.standard_error(),
        sum: sum.standard_error(),
    });
    let bound = bound_ra(n, modes, &cfg.source, &cfg.detector)?;
    let bound_simple = bound_ra_simple(n, modes, &cfg.source, &cfg.detector)?;
    let networks: Vec<Value> = rows
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let mut v = to_value(p);
            v["index"] = json!(k);
            v["sum"] = json!(p.sum());
            v
        })
        .collect();
    let mut notes = Vec::new();
    if !indistinguishable(cfg) {
        notes.push("distance covers source and detector errors; distinguishability enters the budget command only");
    }
    let mut csv = String::from("network,v1,v2,vb,sum,n_click_mass,total_mass\n");
    for (k, p) in rows.iter().enumerate() {
        csv.push_str(&format!("{k},{:e},{:e},{:e},{:e},{:e},{:e}\n", p.v1, p.v2, p.vb, p.sum(), p.n_click_mass, p.total_mass));
    }
    Ok(Outcome {
        result: json!({
            "networks": networks,
            "mean": to_value(&mean),
            "standardError": to_value(&se),
            "boundRa": to_value(&bound),
            "boundRaSimple": bound_simple,
            "meanWithinBound": mean.sum <= bound.ra,
            "notes": notes,
        }),
        csv,
    })
}

fn budget(cfg: &RunConfig) -> CliResult<Outcome> {
    let (n, m) = (cfg.photons()?, cfg.modes()?);
    let epsilon = cfg.require(cfg.epsilon, "epsilon")?;
    let delta = cfg.require(cfg.delta, "delta")?;
    let g = cfg.overlaps(n)?;
    let report = evaluate_budget(n, m, &cfg.source, &cfg.detector, &g, epsilon, delta)?;
    let scaling = scaling_table(epsilon, delta, &cfg.scaling)?;
    let csv = if scaling.is_empty() {
        let mut csv = String::from("parameter,max_tolerable\n");
        for (name, t) in &report.max_tolerable {
            let cell = match t {
                Tolerance::Value(v) => format!("{v:e}"),
                Tolerance::Unbounded => "unbounded".to_string(),
                Tolerance::Infeasible => "infeasible".to_string(),
            };
            csv.push_str(&format!("{name},{cell}\n"));
        }
        csv
    } else {
        let mut csv = String::from("n,min_modes,modes,max_dark_rate,max_loss,max_multiphoton,max_infidelity,element_infidelity_scale\n");
        for r in &scaling {
            csv.push_str(&format!(
                "{},{},{},{:e},{:e},{:e},{:e},{:e}\n",
                r.n, r.min_modes, r.modes, r.max_dark_rate, r.max_loss, r.max_multiphoton, r.max_infidelity, r.element_infidelity_scale
            ));
        }
        csv
    };
    let mut result = to_value(&report);
    result["scaling"] = to_value(&scaling);
    result["overlaps"] = to_value(&g.values());
    Ok(Outcome { result, csv })
}

fn verify(cfg: &RunConfig) -> CliResult<Outcome> {
    let dev = device(cfg, network(cfg, 0)?)?;
    let n = dev.photons;
    let roundtrip = unitarity_roundtrip(&dev)?;
    let witness = match &cfg.input {
        Some(path) => Some(row_norm_witness(&dev.unitary, &dev.ideal_input(), &read_samples(path, dev.modes())?)?),
        None => None,
    };
    let mut notes = Vec::new();
    let suppression = if n <= MAX_SUPPRESSION_N {
        Some(suppression_test(n, &cfg.overlaps(n)?)?)
    } else {
        notes.push(format!("suppression test skipped for N > {MAX_SUPPRESSION_N}"));
        None
    };
    if witness.is_none() {
        notes.push("no --input sample file; witness skipped".to_string());
    }
    let mut csv = String::from("check,value\n");
    csv.push_str(&format!("roundtrip_probability,{roundtrip:e}\n"));
    if let Some(w) = &witness {
        let decision = to_value(&w.decision);
        csv.push_str(&format!("witness_decision,{}\n", decision.as_str().unwrap_or_default()));
        csv.push_str(&format!("witness_sample_mean,{:e}\n", w.sample_mean));
        csv.push_str(&format!("witness_standard_error,{:e}\n", w.standard_error));
    }
    if let Some(s) = &suppression {
        csv.push_str(&format!("suppression_flagged_outputs,{}\n", s.flagged_outputs));
        csv.push_str(&format!("suppression_mass,{:e}\n", s.suppressed_mass));
    }
    Ok(Outcome {
        result: json!({
            "roundtrip": { "probability": roundtrip, "noiseFree": dev.is_noise_free() },
            "witness": to_value(&witness),
            "suppression": to_value(&suppression),
            "notes": notes,
        }),
        csv,
    })
}

/// Calls per bench case; fixed per size so the report is reproducible.
fn repeats(size: usize) -> usize {
    1usize << 20usize.saturating_sub(size).min(12)
}

fn bench(cfg: &RunConfig) -> CliResult<Outcome> {
    let seed = cfg.require(cfg.seed, "seed")?;
    let rng = RngStream::with_stream(seed, STREAM_BENCH);
    let mut cases = Vec::new();
    let mut csv = String::from("kernel,size,repeats,re,im\n");
    for &size in &cfg.sizes {
        let a = gaussian_matrix(size, size, 1.0, &mut rng.child(size as u64))?;
        let reps = repeats(size);
        let start = Instant::now();
        let mut value = permanent_ryser(&a)?;
        for _ in 1..reps {
            value = std::hint::black_box(permanent_ryser(std::hint::black_box(&a))?);
        }
        let per_call = start.elapsed().as_secs_f64() / reps as f64;
        eprintln!("permanent_ryser size={size} repeats={reps} seconds_per_call={per_call:.6e}");
        csv.push_str(&format!("permanent_ryser,{size},{reps},{:e},{:e}\n", value.re, value.im));
        cases.push(json!({ "kernel": "permanent_ryser", "size": size, "repeats": reps, "value": [value.re, value.im] }));
    }
    Ok(Outcome { result: json!({ "cases": cases }), csv })
}

