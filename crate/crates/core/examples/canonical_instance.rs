// Build an instance by hand, query its exact optimum and round-trip it
// through JSON.

use bwmj::{CanonicalInstance, LinearFactor, RewardDistribution};

pub fn run_example() -> bwmj::Result<CanonicalInstance> {
    let inst = CanonicalInstance::new(
        "hand-made",
        vec![0.0, 0.2, 0.45, 1.0],
        vec![
            RewardDistribution::bernoulli(0.3)?,
            RewardDistribution::point_mass(0.6)?,
            RewardDistribution::discrete(vec![0.7, 1.0], vec![0.5, 0.5])?,
        ],
        LinearFactor::ONE_MINUS,
    )?;

    let opt = inst.optimum();
    println!("OPT = {:.4} at alpha = {} (interval {})", opt.value, opt.action, opt.interval);
    for a in [0.0, 0.1, 0.2, 0.45, 0.7] {
        println!("  u({a}) = {:.4}", inst.expected_utility(a)?);
    }

    let back = CanonicalInstance::from_json(&inst.to_json())?;
    assert_eq!(back, inst);
    Ok(inst)
}

#[allow(dead_code)]
fn main() -> bwmj::Result<()> {
    run_example().map(|_| ())
}
