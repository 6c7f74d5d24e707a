//! The `bwmj` command line: generate, validate, run, sweep, report.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algorithms::AlgorithmSpec;
use crate::environments::{
    lower_bound_pair, random_instance, ApplicationProblem, Compiled, DistributionKind,
    FirstPriceProblem, PostedPriceProblem, RandomParams,
};
use crate::error::{Error, Result};
use crate::harness::{
    aggregate, exponent_table, format_float, read_raw_csv, run_experiment, ExperimentConfig,
    InstanceSource,
};
use crate::instance::CanonicalInstance;

#[derive(Debug, Parser)]
#[command(name = "bwmj", version, about = "Bandits with monotone jumps: instances, learners, experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Random,
    Contract,
    BayesianContract,
    PostedPrice,
    FirstPrice,
    LowerBoundPair,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a canonical instance JSON (plus a `.mapping.json` sidecar for
    /// the economic models).
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Output file. For lower-bound-pair, `_base` and `_perturbed` are
        /// inserted before the extension.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        id: Option<String>,
        /// Application problem JSON (contract, bayesian-contract, and
        /// optionally posted-price / first-price).
        #[arg(long)]
        problem: Option<PathBuf>,
        /// Number of intervals (random) or agent actions (lower-bound-pair).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.05)]
        gap_min: f64,
        #[arg(long, default_value_t = 0.2)]
        gap_max: f64,
        /// point_mass, bernoulli or discrete.
        #[arg(long, default_value = "bernoulli")]
        dist: DistributionKind,
        #[arg(long, value_delimiter = ',')]
        valuations: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        probs: Option<Vec<f64>>,
        #[arg(long)]
        valuation: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        atoms: Option<Vec<f64>>,
        /// Horizon used by lower-bound-pair.
        #[arg(long = "t")]
        horizon: Option<u64>,
        #[arg(long = "i-star")]
        i_star: Option<usize>,
    },
    /// Check an instance file; `--deep` adds a grid brute-force check of the
    /// optimum and, for lower-bound files, the closed-form utilities.
    Validate {
        file: PathBuf,
        #[arg(long)]
        deep: bool,
    },
    /// Run one algorithm on one instance and write raw and aggregate CSVs.
    Run {
        #[arg(long)]
        instance: PathBuf,
        /// rji-os, id-rji-os, uniform-grid or ucb1-grid.
        #[arg(long)]
        algorithm: String,
        #[arg(long)]
        gamma: Option<f64>,
        /// Grid size for ucb1-grid.
        #[arg(long)]
        arms: Option<usize>,
        /// One or more horizons, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        horizon: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        reps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
        /// Also write per-round trace CSVs.
        #[arg(long)]
        traces: bool,
    },
    /// Run an experiment config and write CSVs plus fitted exponents.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
        /// Overrides the config's output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute aggregates (and exponents) from a raw CSV.
    Report {
        #[arg(long)]
        raw: PathBuf,
        /// Write the aggregate CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Entry point used by the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

pub fn execute(cmd: Command) -> Result<()> {
    match cmd {
        Command::Generate {
            kind,
            out,
            id,
            problem,
            n,
            seed,
            gap_min,
            gap_max,
            dist,
            valuations,
            probs,
            valuation,
            atoms,
            horizon,
            i_star,
        } => {
            let id = id.unwrap_or_else(|| default_id(&out));
            match kind {
                Kind::Random => {
                    let n = n.ok_or_else(|| Error::Argument("random requires --n".into()))?;
                    let params = RandomParams {
                        gap_min,
                        gap_max,
                        kind: dist,
                        ..Default::default()
                    };
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let inst = random_instance(n, &mut rng, &params)?.with_id(id);
                    inst.save(&out)?;
                    println!("wrote {}", out.display());
                }
                Kind::LowerBoundPair => {
                    let need = |name: &str| Error::Argument(format!("lower-bound-pair requires --{name}"));
                    let n = n.ok_or_else(|| need("n"))?;
                    let t = horizon.ok_or_else(|| need("t"))?;
                    let i_star = i_star.ok_or_else(|| need("i-star"))?;
                    let pair = lower_bound_pair(n, t, i_star)?;
                    let params = pair.params(t);
                    for (suffix, red) in [("base", &pair.base), ("perturbed", &pair.perturbed)] {
                        let path = with_suffix(&out, suffix);
                        let inst = red.instance.clone().with_id(format!("{id}_{suffix}"));
                        inst.save(&path)?;
                        let sidecar = serde_json::json!({
                            "instance_id": inst.id(),
                            "role": suffix,
                            "map": crate::environments::ActionMap::contract_rate(),
                            "best_response_actions": red.actions.iter().map(|a| a + 1).collect::<Vec<_>>(),
                            "lower_bound": params,
                        });
                        write_json(&sidecar_path(&path), &sidecar)?;
                        println!("wrote {}", path.display());
                    }
                }
                app => {
                    let problem = load_problem(app, problem, valuations, probs, valuation, atoms)?;
                    let compiled: Compiled = problem.compile(&id)?;
                    compiled.instance.save(&out)?;
                    write_json(&sidecar_path(&out), &compiled.sidecar())?;
                    println!("wrote {}", out.display());
                }
            }
            Ok(())
        }
        Command::Validate { file, deep } => validate(&file, deep),
        Command::Run {
            instance,
            algorithm,
            gamma,
            arms,
            horizon,
            reps,
            seed,
            out,
            workers,
            traces,
        } => {
            let spec = AlgorithmSpec::from_parts(&algorithm, gamma, arms)?;
            let cfg = ExperimentConfig {
                instances: vec![InstanceSource::File(instance)],
                algorithms: vec![spec],
                horizons: horizon,
                replications: reps,
                master_seed: seed,
                output: Some(out.clone()),
                traces,
                workers,
            };
            let result = run_experiment(&cfg)?;
            for a in &result.aggregates {
                println!(
                    "{} {} T={} reps={} mean_regret={} ci95={}",
                    a.algorithm,
                    a.instance_id,
                    a.horizon,
                    a.reps,
                    format_float(a.mean_regret),
                    format_float(a.ci95)
                );
            }
            println!("wrote {}", out.display());
            Ok(())
        }
        Command::Sweep {
            config,
            workers,
            out,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if workers.is_some() {
                cfg.workers = workers;
            }
            if out.is_some() {
                cfg.output = out;
            }
            cfg.check()?;
            let result = run_experiment(&cfg)?;
            for row in &result.exponents {
                match &row.exponent {
                    Ok(s) => println!("{} {} exponent={}", row.algorithm, row.instance_id, format_float(*s)),
                    Err(e) => println!("{} {} exponent=NA ({e})", row.algorithm, row.instance_id),
                }
            }
            if let Some(dir) = &cfg.output {
                println!("wrote {}", dir.display());
            }
            Ok(())
        }
        Command::Report { raw, out } => {
            let records = read_raw_csv(&raw)?;
            let aggregates = aggregate(&records);
            match out {
                Some(path) => crate::harness::write_aggregate_csv(&path, &aggregates)?,
                None => {
                    let text = crate::harness::aggregate_csv_string(&aggregates)?;
                    std::io::stdout()
                        .write_all(text.as_bytes())
                        .map_err(|e| Error::io("<stdout>", e))?;
                }
            }
            for row in exponent_table(&aggregates) {
                if let Ok(s) = row.exponent {
                    eprintln!("{} {} exponent={}", row.algorithm, row.instance_id, format_float(s));
                }
            }
            Ok(())
        }
    }
}

fn load_problem(
    kind: Kind,
    file: Option<PathBuf>,
    valuations: Option<Vec<f64>>,
    probs: Option<Vec<f64>>,
    valuation: Option<f64>,
    atoms: Option<Vec<f64>>,
) -> Result<ApplicationProblem> {
    if let Some(path) = file {
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        let problem = ApplicationProblem::from_json(&text)?;
        let matches = matches!(
            (kind, &problem),
            (Kind::Contract, ApplicationProblem::Contract(_))
                | (Kind::BayesianContract, ApplicationProblem::BayesianContract(_))
                | (Kind::PostedPrice, ApplicationProblem::PostedPrice(_))
                | (Kind::FirstPrice, ApplicationProblem::FirstPrice(_))
        );
        if !matches {
            return Err(Error::Argument(format!(
                "problem file {} does not describe a {kind:?} problem",
                path.display()
            )));
        }
        return Ok(problem);
    }
    match kind {
        Kind::PostedPrice => match (valuations, probs) {
            (Some(valuations), Some(probs)) => {
                Ok(ApplicationProblem::PostedPrice(PostedPriceProblem { valuations, probs }))
            }
            _ => Err(Error::Argument(
                "posted-price requires --problem or --valuations and --probs".into(),
            )),
        },
        Kind::FirstPrice => match (valuation, atoms, probs) {
            (Some(valuation), Some(atoms), Some(probs)) => {
                Ok(ApplicationProblem::FirstPrice(FirstPriceProblem {
                    valuation,
                    atoms,
                    probs,
                }))
            }
            _ => Err(Error::Argument(
                "first-price requires --problem or --valuation, --atoms and --probs".into(),
            )),
        },
        _ => Err(Error::Argument(format!("{kind:?} requires --problem"))),
    }
}

fn validate(file: &Path, deep: bool) -> Result<()> {
    let inst = CanonicalInstance::load(file)?;
    let opt = inst.optimum();
    println!(
        "ok: {} n={} opt={} at {}",
        inst.id(),
        inst.n(),
        format_float(opt.value),
        format_float(opt.action)
    );
    if !deep {
        return Ok(());
    }

    let grid = 100_000;
    let mut best = (f64::NEG_INFINITY, 0.0);
    let points = (0..=grid)
        .map(|i| i as f64 / grid as f64)
        .chain(inst.breakpoints()[..inst.n()].iter().copied());
    for a in points {
        let u = inst.expected_utility(a)?;
        if u > best.0 || (u == best.0 && a < best.1) {
            best = (u, a);
        }
    }
    if (best.0 - opt.value).abs() > 1e-12 {
        return Err(Error::Argument(format!(
            "grid maximum {} at {} disagrees with optimum {}",
            best.0, best.1, opt.value
        )));
    }
    println!("ok: grid brute force agrees");

    let side = sidecar_path(file);
    if let Ok(text) = std::fs::read_to_string(&side) {
        let v: serde_json::Value = serde_json::from_str(&text)?;
        if let Some(lb) = v.get("lower_bound") {
            check_lower_bound_file(&inst, lb, v.get("role").and_then(|r| r.as_str()))?;
            println!("ok: lower-bound utilities match the closed form");
        }
    }
    Ok(())
}

fn check_lower_bound_file(
    inst: &CanonicalInstance,
    lb: &serde_json::Value,
    role: Option<&str>,
) -> Result<()> {
    let num = |k: &str| {
        lb.get(k)
            .and_then(|x| x.as_f64())
            .ok_or_else(|| Error::Argument(format!("lower_bound.{k} missing from sidecar")))
    };
    let eps = num("epsilon")?;
    let k = num("k")?;
    let i_star = num("perturbed_action")? as usize;
    let alphas: Vec<f64> = serde_json::from_value(lb["alphas"].clone())?;
    let perturbed = role == Some("perturbed");
    let bp = inst.breakpoints();
    let fail = |msg: String| Err(Error::Argument(msg));

    for (i, &alpha) in alphas.iter().enumerate().skip(1) {
        let action = i + 1;
        // Evaluate at the compiled switch point nearest to the closed form.
        let at = bp
            .iter()
            .copied()
            .find(|b| (b - alpha).abs() <= 1e-12)
            .unwrap_or(alpha);
        let u = inst.expected_utility(at)?;
        let expected = if action == 2 {
            (1.0 + eps) / k
        } else {
            1.0 / k
        };
        if perturbed && action == i_star {
            if u < (1.0 + 4.0 * eps / 3.0) / k - 1e-12 {
                return fail(format!("u'(alpha_{action}) = {u} below (1 + 4 eps/3)/k"));
            }
        } else if (u - expected).abs() > 1e-12 {
            return fail(format!("u(alpha_{action}) = {u}, expected {expected}"));
        }
    }
    Ok(())
}

fn default_id(out: &Path) -> String {
    out.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into())
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{suffix}"),
    };
    path.with_file_name(name)
}

/// `<file>.mapping.json` next to an instance file.
pub fn sidecar_path(instance: &Path) -> PathBuf {
    let mut name = instance.file_name().unwrap_or_default().to_os_string();
    name.push(".mapping.json");
    instance.with_file_name(name)
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}
