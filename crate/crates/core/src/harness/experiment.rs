use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{aggregate, exponent_table, output, AggregateResult, ExponentRow, RunTrace};
use crate::algorithms::{simulate, AlgorithmSpec};
use crate::environments::RandomSpec;
use crate::error::{Error, Result};
use crate::instance::CanonicalInstance;

/// Where an experiment's instance comes from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceSource {
    /// Path to an instance JSON file, relative to the config file if not
    /// absolute.
    File(PathBuf),
    Inline(CanonicalInstance),
    Random(RandomSpec),
}

impl InstanceSource {
    pub fn resolve(&self, base: Option<&Path>) -> Result<CanonicalInstance> {
        match self {
            InstanceSource::File(p) => {
                let path = match base {
                    Some(dir) if p.is_relative() => dir.join(p),
                    _ => p.clone(),
                };
                CanonicalInstance::load(path)
            }
            InstanceSource::Inline(inst) => Ok(inst.clone()),
            InstanceSource::Random(spec) => spec.build(),
        }
    }
}

/// An experiment: every instance × algorithm × horizon × replication.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub instances: Vec<InstanceSource>,
    pub algorithms: Vec<AlgorithmSpec>,
    pub horizons: Vec<u64>,
    pub replications: u64,
    #[serde(default)]
    pub master_seed: u64,
    /// Output directory; nothing is written when absent.
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Write a per-round CSV for every run under `<output>/traces`.
    #[serde(default)]
    pub traces: bool,
    /// Worker threads; `None` uses rayon's default.
    #[serde(default)]
    pub workers: Option<usize>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::from_json(&text)?;
        if let Some(dir) = path.parent() {
            for src in &mut cfg.instances {
                if let InstanceSource::File(p) = src {
                    if p.is_relative() {
                        *p = dir.join(&*p);
                    }
                }
            }
            if let Some(out) = cfg.output.as_mut() {
                if out.is_relative() {
                    *out = dir.join(&*out);
                }
            }
        }
        Ok(cfg)
    }

    pub fn check(&self) -> Result<()> {
        if self.instances.is_empty() {
            return Err(Error::Config("no instances listed".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithms listed".into()));
        }
        if self.horizons.is_empty() {
            return Err(Error::Config("horizon list is empty".into()));
        }
        if self.horizons.contains(&0) {
            return Err(Error::Config("horizons must be positive".into()));
        }
        if self.horizons.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(
                "horizons must be strictly increasing".into(),
            ));
        }
        if self.replications == 0 {
            return Err(Error::Config("replications must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        for a in &self.algorithms {
            a.check().map_err(|e| Error::Config(e.to_string()))?;
        }
        Ok(())
    }
}

/// Anything the harness can run: an algorithm plus a stable label.
pub trait Policy: Sync {
    fn label(&self) -> String;
    fn run(
        &self,
        instance: &CanonicalInstance,
        horizon: u64,
        seed: u64,
        record: bool,
    ) -> Result<RunTrace>;
}

impl Policy for AlgorithmSpec {
    fn label(&self) -> String {
        AlgorithmSpec::label(self)
    }

    fn run(
        &self,
        instance: &CanonicalInstance,
        horizon: u64,
        seed: u64,
        record: bool,
    ) -> Result<RunTrace> {
        simulate(self, instance, horizon, seed, record).map(|(trace, _)| trace)
    }
}

/// One row of the raw CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RawRecord {
    pub algorithm: String,
    pub instance_id: String,
    pub n: usize,
    #[serde(rename = "T")]
    pub horizon: u64,
    pub rep: u64,
    pub seed: u64,
    pub final_pseudo_regret: f64,
    pub rounds_used: u64,
}

/// Replication seed: first 8 bytes (little endian) of the SHA-256 of the
/// length-prefixed fields.
pub fn derive_seed(
    master_seed: u64,
    instance_id: &str,
    algorithm_id: &str,
    horizon: u64,
    rep: u64,
) -> u64 {
    let mut h = Sha256::new();
    h.update(master_seed.to_le_bytes());
    for s in [instance_id, algorithm_id] {
        h.update((s.len() as u64).to_le_bytes());
        h.update(s.as_bytes());
    }
    h.update(horizon.to_le_bytes());
    h.update(rep.to_le_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}

/// Runs every cell and returns raw records in (instance, policy, T, rep)
/// order regardless of how many workers execute them.
#[allow(clippy::too_many_arguments)]
pub fn run_cells(
    instances: &[CanonicalInstance],
    policies: &[&dyn Policy],
    horizons: &[u64],
    replications: u64,
    master_seed: u64,
    workers: Option<usize>,
    trace_dir: Option<&Path>,
) -> Result<Vec<RawRecord>> {
    let mut jobs = Vec::new();
    for inst in instances {
        for &policy in policies {
            let label = policy.label();
            for &horizon in horizons {
                for rep in 0..replications {
                    let seed = derive_seed(master_seed, inst.id(), &label, horizon, rep);
                    jobs.push((inst, policy, label.clone(), horizon, rep, seed));
                }
            }
        }
    }
    if let Some(dir) = trace_dir {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }

    let work = || {
        jobs.par_iter()
            .map(|(inst, policy, label, horizon, rep, seed)| {
                let trace = policy.run(inst, *horizon, *seed, trace_dir.is_some())?;
                if let Some(dir) = trace_dir {
                    let name = format!("{}_{}_T{}_rep{}.csv", sanitize(label), sanitize(inst.id()), horizon, rep);
                    output::write_trace_csv(dir.join(name), &trace, inst.optimum().value)?;
                }
                Ok(RawRecord {
                    algorithm: label.clone(),
                    instance_id: inst.id().to_string(),
                    n: inst.n(),
                    horizon: *horizon,
                    rep: *rep,
                    seed: *seed,
                    final_pseudo_regret: trace.cumulative_pseudo_regret,
                    rounds_used: trace.rounds_used,
                })
            })
            .collect::<Result<Vec<_>>>()
    };

    match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::Argument(format!("cannot start {w} workers: {e}")))?
            .install(work),
        None => work(),
    }
}

fn sanitize(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' })
        .collect()
}

/// Everything an experiment produces.
#[derive(Clone, Debug)]
pub struct ExperimentOutput {
    pub raw: Vec<RawRecord>,
    pub aggregates: Vec<AggregateResult>,
    pub exponents: Vec<ExponentRow>,
}

impl ExperimentOutput {
    /// Writes `raw.csv`, `aggregate.csv` and `exponents.csv` into `dir`.
    pub fn write(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        output::write_raw_csv(dir.join("raw.csv"), &self.raw)?;
        output::write_aggregate_csv(dir.join("aggregate.csv"), &self.aggregates)?;
        output::write_exponent_csv(dir.join("exponents.csv"), &self.exponents)?;
        Ok(())
    }
}

/// Resolves instances, runs all cells, aggregates, and writes the CSVs if
/// the config names an output directory.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.check()?;
    let instances = cfg
        .instances
        .iter()
        .map(|s| s.resolve(None))
        .collect::<Result<Vec<_>>>()?;
    let policies: Vec<&dyn Policy> = cfg.algorithms.iter().map(|a| a as &dyn Policy).collect();
    let trace_dir = match (&cfg.output, cfg.traces) {
        (Some(out), true) => Some(out.join("traces")),
        _ => None,
    };
    let raw = run_cells(
        &instances,
        &policies,
        &cfg.horizons,
        cfg.replications,
        cfg.master_seed,
        cfg.workers,
        trace_dir.as_deref(),
    )?;
    let aggregates = aggregate(&raw);
    let exponents = exponent_table(&aggregates);
    let out = ExperimentOutput {
        raw,
        aggregates,
        exponents,
    };
    if let Some(dir) = &cfg.output {
        out.write(dir)?;
    }
    Ok(out)
}
