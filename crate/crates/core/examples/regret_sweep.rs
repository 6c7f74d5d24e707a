// A seeded experiment over several horizons with CSV output and fitted
// regret exponents.

use bwmj::algorithms::AlgorithmSpec;
use bwmj::environments::RandomSpec;
use bwmj::harness::{run_experiment, ExperimentConfig, ExperimentOutput, InstanceSource};

pub fn run_example() -> bwmj::Result<ExperimentOutput> {
    let out_dir = std::env::temp_dir().join("bwmj-regret-sweep");
    let cfg = ExperimentConfig {
        instances: vec![InstanceSource::Random(RandomSpec {
            n: 4,
            seed: 12,
            gap_min: 0.15,
            gap_max: 0.25,
            kind: Default::default(),
            id: None,
        })],
        algorithms: vec![AlgorithmSpec::RjiOs, AlgorithmSpec::UniformGrid],
        horizons: vec![1 << 10, 1 << 12, 1 << 14],
        replications: 5,
        master_seed: 2024,
        output: Some(out_dir.clone()),
        traces: false,
        workers: None,
    };
    let out = run_experiment(&cfg)?;
    for a in &out.aggregates {
        println!("{:>14} T={:>6} mean regret {:>9.1} ± {:.1}", a.algorithm, a.horizon, a.mean_regret, a.ci95);
    }
    for row in &out.exponents {
        match &row.exponent {
            Ok(s) => println!("{}: regret ~ T^{s:.3}", row.algorithm),
            Err(e) => println!("{}: no fit ({e})", row.algorithm),
        }
    }
    println!("CSV files in {}", out_dir.display());
    Ok(out)
}

#[allow(dead_code)]
fn main() -> bwmj::Result<()> {
    run_example().map(|_| ())
}
