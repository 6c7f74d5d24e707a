// Posted prices and first-price bids as canonical instances.

use bwmj::environments::{
    first_price_to_canonical, posted_price_to_canonical, FirstPriceProblem, PostedPriceProblem,
};

pub fn run_example() -> bwmj::Result<(f64, f64)> {
    let buyer = PostedPriceProblem {
        valuations: vec![0.25, 0.5, 0.8],
        probs: vec![0.2, 0.5, 0.3],
    };
    let (inst, map) = posted_price_to_canonical(&buyer, "buyer")?;
    let opt = inst.optimum();
    let price = map.to_native(opt.action);
    println!("best posted price {price:.2}, expected revenue {:.4}", opt.value);

    let auction = FirstPriceProblem {
        valuation: 0.7,
        atoms: vec![0.1, 0.35, 0.6, 0.9],
        probs: vec![0.3, 0.3, 0.2, 0.2],
    };
    let (inst, map) = first_price_to_canonical(&auction, "bidder")?;
    let opt = inst.optimum();
    let bid = map.to_native(opt.action);
    println!("best bid {bid:.2}, expected surplus {:.4}", opt.value);
    Ok((price, bid))
}

#[allow(dead_code)]
fn main() -> bwmj::Result<()> {
    run_example().map(|_| ())
}
