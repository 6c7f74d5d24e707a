// One call of the recursive jump search on a deterministic two-step
// instance, with its call log.

use bwmj::algorithms::{find_jumps, Interval, SearchLog, Triplet};
use bwmj::{BanditEnv, CanonicalInstance, LinearFactor, RewardDistribution};

pub fn run_example() -> bwmj::Result<Vec<Triplet>> {
    let inst = CanonicalInstance::new(
        "steps",
        vec![0.0, 0.3, 0.7, 1.0],
        vec![
            RewardDistribution::point_mass(0.1)?,
            RewardDistribution::point_mass(0.5)?,
            RewardDistribution::point_mass(0.9)?,
        ],
        LinearFactor::ONE_MINUS,
    )?;
    let horizon = 1 << 24;
    let mut env = BanditEnv::new(&inst, horizon, 0, false);
    let mut log = SearchLog::default();
    let triplets = find_jumps(&mut env, Interval::UNIT, 0.25, 1, &mut log)
        .map_err(|_| bwmj::Error::Argument("budget too small for one search".into()))?;

    println!("{} calls, {} rounds", log.calls.len(), env.consumed());
    for t in &triplets {
        println!(
            "  [{:.8}, {:.8}]  left {:.2}  right {:.2}",
            t.interval.lo, t.interval.hi, t.estimate_left, t.estimate_right
        );
    }
    Ok(triplets)
}

#[allow(dead_code)]
fn main() -> bwmj::Result<()> {
    run_example().map(|_| ())
}
