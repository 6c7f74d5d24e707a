// Gap-aware variant: jump capture followed by UCB1 on the captured right
// endpoints.

use bwmj::algorithms::{run_id_rji_os, IdRjiOsReport};
use bwmj::{BanditEnv, CanonicalInstance, LinearFactor, RewardDistribution};

pub fn run_example() -> bwmj::Result<IdRjiOsReport> {
    let inst = CanonicalInstance::new(
        "wide-gaps",
        vec![0.0, 0.15, 0.4, 1.0],
        vec![
            RewardDistribution::point_mass(0.1)?,
            RewardDistribution::point_mass(0.6)?,
            RewardDistribution::point_mass(1.0)?,
        ],
        LinearFactor::ONE_MINUS,
    )?;
    let horizon = 1 << 22;
    let mut env = BanditEnv::new(&inst, horizon, 0, false);
    let report = run_id_rji_os(&mut env, 1.0)?;

    println!("{} epochs, {} captured jumps", report.epochs.len(), report.jumps.len());
    match report.handoff_round {
        Some(r) => println!("UCB1 from round {r} on arms {:?}", report.arms),
        None => println!("budget ran out before UCB1"),
    }
    for arm in &report.ucb {
        println!("  arm {:.8}: {} pulls, mean {:.4}", arm.action, arm.pulls, arm.mean_estimate);
    }
    println!("regret {:.1}", env.finish().cumulative_pseudo_regret);
    Ok(report)
}

#[allow(dead_code)]
fn main() -> bwmj::Result<()> {
    run_example().map(|_| ())
}
