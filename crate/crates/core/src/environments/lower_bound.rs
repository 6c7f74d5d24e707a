use serde::Serialize;

use super::contract::{contract_to_canonical, ContractProblem, ContractReduction};
use crate::error::{Error, Result};

/// The `k` constant of the hard construction.
pub const LOWER_BOUND_K: f64 = 2.1;

/// Two contract instances that differ only in one action's outcome law.
#[derive(Clone, Debug)]
pub struct LowerBoundPair {
    pub base: ContractReduction,
    pub perturbed: ContractReduction,
    pub base_problem: ContractProblem,
    pub perturbed_problem: ContractProblem,
    /// Switch points `alpha_1 = 0, alpha_2, ..., alpha_n` from the closed form.
    pub alphas: Vec<f64>,
    pub epsilon: f64,
    pub k: f64,
    /// 1-based index of the perturbed action.
    pub perturbed_action: usize,
}

/// Parameters recorded next to generated pair files.
#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundParams {
    pub n: usize,
    pub horizon: u64,
    pub perturbed_action: usize,
    pub epsilon: f64,
    pub k: f64,
    pub alphas: Vec<f64>,
}

impl LowerBoundPair {
    pub fn params(&self, horizon: u64) -> LowerBoundParams {
        LowerBoundParams {
            n: self.alphas.len(),
            horizon,
            perturbed_action: self.perturbed_action,
            epsilon: self.epsilon,
            k: self.k,
            alphas: self.alphas.clone(),
        }
    }
}

/// Switch point of action `i` (1-based, `i >= 2`).
pub fn lower_bound_alpha(i: usize, epsilon: f64, k: f64) -> f64 {
    1.0 - 1.0 / ((0.5 + epsilon * (i as f64 - 2.0)) * k)
}

/// Two outcomes with rewards `(1, 0)`; action `i` puts mass
/// `first[i]` on the first one. Costs chain so that consecutive actions
/// tie exactly at their switch point.
fn chained_problem(first: &[f64], alphas: &[f64], epsilon: f64, k: f64) -> ContractProblem {
    let n = first.len();
    let mut costs = vec![0.0; n];
    costs[1] = (1.0 + epsilon) * (0.5 - 1.0 / k);
    for i in 2..n {
        costs[i] = costs[i - 1] + alphas[i] * (first[i] - first[i - 1]);
    }
    ContractProblem {
        rewards: vec![1.0, 0.0],
        distributions: first.iter().map(|&f| vec![f, 1.0 - f]).collect(),
        costs,
    }
}

/// Builds the base instance and the instance where action `i_star`
/// (1-based) has its first-outcome probability raised by `epsilon`.
///
/// Requires `n >= 3`, `n^3 <= T` and `2 < i_star <= n`.
pub fn lower_bound_pair(n: usize, horizon: u64, i_star: usize) -> Result<LowerBoundPair> {
    if n < 3 {
        return Err(Error::Argument(format!("n must be at least 3, got {n}")));
    }
    if (n as u128).pow(3) > horizon as u128 {
        return Err(Error::Argument(format!(
            "n = {n} exceeds T^(1/3) for T = {horizon}"
        )));
    }
    if !(i_star > 2 && i_star <= n) {
        return Err(Error::Argument(format!(
            "perturbed action must satisfy 2 < i* <= {n}, got {i_star}"
        )));
    }
    let k = LOWER_BOUND_K;
    let epsilon = (n as f64 / (16.0 * horizon as f64)).sqrt();

    let mut alphas = vec![0.0; n];
    for (i, a) in alphas.iter_mut().enumerate().skip(1) {
        *a = lower_bound_alpha(i + 1, epsilon, k);
    }
    let mut first = vec![0.0; n];
    first[1] = 0.5 + epsilon / 2.0;
    for (i, f) in first.iter_mut().enumerate().skip(2) {
        *f = 0.5 + epsilon * (i as f64 - 1.0);
    }
    let base_problem = chained_problem(&first, &alphas, epsilon, k);
    // Raising action i* by epsilon lands exactly on the formula value of
    // action i* + 1; evaluating it that way keeps the two bit-identical.
    let mut shifted = first.clone();
    shifted[i_star - 1] = 0.5 + epsilon * (i_star as f64 - 1.0);
    let perturbed_problem = chained_problem(&shifted, &alphas, epsilon, k);

    for (label, p) in [("base", &base_problem), ("perturbed", &perturbed_problem)] {
        if let Some((i, c)) = p
            .costs
            .iter()
            .enumerate()
            .find(|(_, c)| !(0.0..=1.0).contains(*c))
        {
            return Err(Error::Construction(format!(
                "{label} cost of action {} is {c}, outside [0, 1]",
                i + 1
            )));
        }
    }

    let base = contract_to_canonical(&base_problem, &format!("lb-n{n}-T{horizon}-base"))?;
    let perturbed = contract_to_canonical(
        &perturbed_problem,
        &format!("lb-n{n}-T{horizon}-i{i_star}-perturbed"),
    )?;
    Ok(LowerBoundPair {
        base,
        perturbed,
        base_problem,
        perturbed_problem,
        alphas,
        epsilon,
        k,
        perturbed_action: i_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pair_values() {
        let pair = lower_bound_pair(3, 4096, 3).unwrap();
        let eps = (3.0f64 / 65536.0).sqrt();
        assert!((pair.epsilon - eps).abs() < 1e-15);
        assert!((pair.alphas[1] - (1.0 - 1.0 / 1.05)).abs() < 1e-15);
        // Evaluate at the compiled switch points, which agree with the
        // closed form only up to rounding.
        let bp = &pair.base.breakpoints;
        for (b, a) in bp.iter().zip(&pair.alphas) {
            assert!((b - a).abs() < 1e-12);
        }
        let u = |a: f64| pair.base.instance.expected_utility(a).unwrap();
        assert!((u(bp[1]) - (1.0 + eps) / 2.1).abs() < 1e-12);
        assert!((u(bp[2]) - 1.0 / 2.1).abs() < 1e-12);
        assert!((u(bp[1]) - 0.479_413).abs() < 1e-6);
    }

    #[test]
    fn parameter_checks() {
        assert!(lower_bound_pair(2, 4096, 3).is_err());
        assert!(lower_bound_pair(3, 26, 3).is_err());
        assert!(lower_bound_pair(3, 4096, 2).is_err());
        assert!(lower_bound_pair(3, 4096, 4).is_err());
    }
}
