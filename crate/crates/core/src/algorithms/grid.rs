use super::{ucb1, UcbArmState};
use crate::env::BanditEnv;

/// Smallest `K` with `K^3 >= T`, i.e. `ceil(T^(1/3))` without rounding
/// trouble.
pub fn grid_size(horizon: u64) -> usize {
    let mut k = (horizon as f64).cbrt().round() as u64;
    while k.saturating_pow(3) < horizon {
        k += 1;
    }
    while k > 1 && (k - 1).pow(3) >= horizon {
        k -= 1;
    }
    k.max(1) as usize
}

/// Right endpoints of `k` equal cells: `i/k` for `i = 1..=k`.
pub fn uniform_grid(k: usize) -> Vec<f64> {
    (1..=k).map(|i| i as f64 / k as f64).collect()
}

/// UCB1 over a grid of `ceil(T^(1/3))` points.
pub fn run_uniform_grid_baseline(env: &mut BanditEnv<'_>) -> Vec<UcbArmState> {
    let k = grid_size(env.horizon());
    ucb1(env, &uniform_grid(k))
}

/// UCB1 over a grid with a caller-chosen number of points.
pub fn run_ucb1_grid(env: &mut BanditEnv<'_>, arms: usize) -> Vec<UcbArmState> {
    ucb1(env, &uniform_grid(arms))
}
