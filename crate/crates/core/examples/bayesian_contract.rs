// Two agent types sharing outcomes: the canonical instance overlays the
// types' best-response partitions.

use bwmj::environments::{bayesian_contract_to_canonical, BayesianReduction, BayesianContractProblem};

pub fn run_example() -> bwmj::Result<BayesianReduction> {
    let problem = BayesianContractProblem {
        rewards: vec![0.0, 1.0],
        type_distributions: vec![
            vec![vec![1.0, 0.0], vec![0.4, 0.6], vec![0.1, 0.9]],
            vec![vec![0.8, 0.2], vec![0.2, 0.8]],
        ],
        type_costs: vec![vec![0.0, 0.1, 0.3], vec![0.0, 0.3]],
        type_probs: vec![0.6, 0.4],
    };
    let red = bayesian_contract_to_canonical(&problem, "two-types")?;
    let inst = &red.instance;
    for (i, profile) in red.profiles.iter().enumerate() {
        println!(
            "[{:.4}, {:.4}) actions {:?} mean {:.3}",
            inst.breakpoints()[i],
            inst.breakpoints()[i + 1],
            profile.iter().map(|a| a + 1).collect::<Vec<_>>(),
            inst.mean(i)
        );
    }
    let opt = inst.optimum();
    println!("optimal rate {:.4}, utility {:.4}", opt.action, opt.value);
    Ok(red)
}

#[allow(dead_code)]
fn main() -> bwmj::Result<()> {
    run_example().map(|_| ())
}
