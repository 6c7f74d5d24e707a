use serde::Serialize;

use crate::env::BanditEnv;

/// Running statistics for one UCB1 arm.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UcbArmState {
    pub action: f64,
    pub pulls: u64,
    /// Mean realized reward `ell(action) * x`.
    pub mean_estimate: f64,
}

/// `mean + sqrt(2 ln t / pulls)`.
pub fn ucb_index(mean: f64, pulls: u64, t: u64) -> f64 {
    mean + (2.0 * (t as f64).ln() / pulls as f64).sqrt()
}

/// Runs UCB1 over `arms` until the budget is exhausted.
///
/// Each arm is played once in order, then the arm with the largest index
/// is played (ties go to the lower index). `t` counts pulls made in this
/// call only.
pub fn ucb1(env: &mut BanditEnv<'_>, arms: &[f64]) -> Vec<UcbArmState> {
    assert!(!arms.is_empty(), "ucb1 needs at least one arm");
    let ell = env.linear_factor();
    let mut state: Vec<UcbArmState> = arms
        .iter()
        .map(|&action| UcbArmState {
            action,
            pulls: 0,
            mean_estimate: 0.0,
        })
        .collect();
    let mut sums = vec![0.0; arms.len()];
    let mut t = 0u64;

    loop {
        let i = if (t as usize) < arms.len() {
            t as usize
        } else {
            let mut best = 0;
            let mut best_index = f64::NEG_INFINITY;
            for (k, arm) in state.iter().enumerate() {
                let idx = ucb_index(arm.mean_estimate, arm.pulls, t);
                if idx > best_index {
                    best = k;
                    best_index = idx;
                }
            }
            best
        };
        let arm = &mut state[i];
        let Ok(x) = env.play(arm.action) else {
            return state;
        };
        t += 1;
        sums[i] += ell.eval(arm.action) * x;
        arm.pulls += 1;
        arm.mean_estimate = sums[i] / arm.pulls as f64;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_formula() {
        let v = ucb_index(0.5, 4, 100);
        assert!((v - (0.5 + (2.0 * 100f64.ln() / 4.0).sqrt())).abs() < 1e-15);
        assert!((v - 2.017_427).abs() < 1e-5);
    }
}
