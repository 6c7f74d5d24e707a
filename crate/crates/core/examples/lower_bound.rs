// The hard pair of contract instances: identical except for one action,
// whose perturbation changes the optimal contract.

use bwmj::environments::{lower_bound_pair, LowerBoundPair};

pub fn run_example() -> bwmj::Result<LowerBoundPair> {
    let pair = lower_bound_pair(4, 4096, 3)?;
    println!("epsilon {:.6}, k {}", pair.epsilon, pair.k);
    println!("switch points {:?}", pair.alphas);
    for (name, red) in [("base", &pair.base), ("perturbed", &pair.perturbed)] {
        let opt = red.instance.optimum();
        println!(
            "{name}: {} intervals, OPT {:.6} at {:.6}",
            red.instance.n(),
            opt.value,
            opt.action
        );
    }
    Ok(pair)
}

#[allow(dead_code)]
fn main() -> bwmj::Result<()> {
    run_example().map(|_| ())
}
