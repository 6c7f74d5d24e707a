// Learning a linear contract: compile a principal-agent problem and run a
// learner on it, reporting the learned rate in contract units.

use bwmj::algorithms::{simulate, AlgorithmSpec};
use bwmj::environments::{ApplicationProblem, ContractProblem};

pub fn run_example() -> bwmj::Result<f64> {
    let problem = ApplicationProblem::Contract(ContractProblem {
        rewards: vec![0.0, 0.4, 1.0],
        distributions: vec![
            vec![0.9, 0.1, 0.0],
            vec![0.3, 0.5, 0.2],
            vec![0.05, 0.25, 0.7],
        ],
        costs: vec![0.0, 0.05, 0.2],
    });
    let compiled = problem.compile("three-effort")?;
    let inst = &compiled.instance;
    println!("best-response breakpoints {:?}", inst.breakpoints());
    println!("details {}", compiled.details);

    let opt = inst.optimum();
    let rate = compiled.map.to_native(opt.action);
    println!("optimal linear contract pays {rate:.4} of the reward (utility {:.4})", opt.value);

    let (trace, _) = simulate(&AlgorithmSpec::UniformGrid, inst, 20_000, 1, false)?;
    println!("grid baseline regret over 20000 rounds: {:.1}", trace.cumulative_pseudo_regret);
    Ok(rate)
}

#[allow(dead_code)]
fn main() -> bwmj::Result<()> {
    run_example().map(|_| ())
}
