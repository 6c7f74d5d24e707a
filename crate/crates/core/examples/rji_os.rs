// Full RJI-OS run with per-epoch instrumentation.

use bwmj::algorithms::{run_rji_os, RjiOsReport};
use bwmj::{BanditEnv, CanonicalInstance, LinearFactor, RewardDistribution};

pub fn run_example() -> bwmj::Result<(f64, RjiOsReport)> {
    let inst = CanonicalInstance::new(
        "three",
        vec![0.0, 0.25, 0.6, 1.0],
        vec![
            RewardDistribution::bernoulli(0.2)?,
            RewardDistribution::bernoulli(0.6)?,
            RewardDistribution::bernoulli(0.95)?,
        ],
        LinearFactor::ONE_MINUS,
    )?;
    let horizon = 1 << 20;
    let mut env = BanditEnv::new(&inst, horizon, 7, false);
    let report = run_rji_os(&mut env);
    let trace = env.finish();

    for e in &report.epochs {
        println!(
            "epoch {} delta {:.4}: {} calls, opt estimate {:.3} at {:.4}, {} -> {} intervals{}",
            e.epoch,
            e.delta,
            e.calls.len(),
            e.opt_estimate,
            e.best_action,
            e.active.len(),
            e.next_active.len(),
            if e.completed { "" } else { " (cut short)" }
        );
    }
    println!(
        "regret {:.1} over {} rounds (OPT {:.3})",
        trace.cumulative_pseudo_regret,
        trace.rounds_used,
        inst.optimum().value
    );
    Ok((trace.cumulative_pseudo_regret, report))
}

#[allow(dead_code)]
fn main() -> bwmj::Result<()> {
    run_example().map(|_| ())
}
