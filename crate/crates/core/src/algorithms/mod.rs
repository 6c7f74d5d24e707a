//! Learners for bandits with monotone jumps.
//!
//! - [`run_rji_os`]: recursive jump identification with optimistic shrinking.
//! - [`run_id_rji_os`]: the gap-aware variant that hands off to UCB1 once
//!   the jump threshold drops below a quarter of the known minimum gap.
//! - [`run_uniform_grid_baseline`] / [`run_ucb1_grid`]: UCB1 over a fixed grid.
//!
//! Every learner interacts with the instance only through [`BanditEnv`] and
//! runs until the budget is exhausted.

mod find_jumps;
mod grid;
mod id_rji_os;
mod rji_os;
mod shrink;
mod ucb1;

use serde::{Deserialize, Serialize};

use crate::env::BanditEnv;
use crate::error::{Error, Result};
use crate::harness::RunTrace;
use crate::instance::CanonicalInstance;

pub use find_jumps::{
    find_jumps, find_jumps_id, id_confidence, rji_confidence, sample_count, CallRecord, SearchLog,
};
pub use grid::{grid_size, run_ucb1_grid, run_uniform_grid_baseline, uniform_grid};
pub use id_rji_os::{run_id_rji_os, IdRjiOsReport};
pub use rji_os::{run_rji_os, EpochRecord, RjiOsReport};
pub use shrink::optimistic_shrink;
pub use ucb1::{ucb1, ucb_index, UcbArmState};

/// Closed action interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const UNIT: Interval = Interval { lo: 0.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, alpha: f64) -> bool {
        self.lo <= alpha && alpha <= self.hi
    }

    pub fn halves(&self) -> (Interval, Interval) {
        let mid = (self.lo + self.hi) / 2.0;
        (Interval::new(self.lo, mid), Interval::new(mid, self.hi))
    }
}

/// An interval returned by the jump search together with the estimated
/// means at its endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Triplet {
    pub interval: Interval,
    pub estimate_left: f64,
    pub estimate_right: f64,
}

/// Jump threshold of epoch `j`: exactly `2^-j`.
pub fn epoch_threshold(epoch: u32) -> f64 {
    0.5f64.powi(epoch.min(i32::MAX as u32) as i32)
}

/// Algorithm selection as it appears in configs and CSV output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id")]
pub enum AlgorithmSpec {
    #[serde(rename = "rji-os")]
    RjiOs,
    #[serde(rename = "id-rji-os")]
    IdRjiOs { gamma: f64 },
    #[serde(rename = "uniform-grid")]
    UniformGrid,
    #[serde(rename = "ucb1-grid")]
    Ucb1Grid { arms: usize },
}

/// Algorithm-specific instrumentation returned alongside a trace.
#[derive(Clone, Debug)]
pub enum Diagnostics {
    RjiOs(RjiOsReport),
    IdRjiOs(IdRjiOsReport),
    Ucb(Vec<UcbArmState>),
}

impl AlgorithmSpec {
    /// Parses a command-line id plus optional parameters.
    pub fn from_parts(id: &str, gamma: Option<f64>, arms: Option<usize>) -> Result<Self> {
        let spec = match id {
            "rji-os" => AlgorithmSpec::RjiOs,
            "id-rji-os" => AlgorithmSpec::IdRjiOs {
                gamma: gamma
                    .ok_or_else(|| Error::Argument("id-rji-os requires --gamma".into()))?,
            },
            "uniform-grid" => AlgorithmSpec::UniformGrid,
            "ucb1-grid" => AlgorithmSpec::Ucb1Grid {
                arms: arms.ok_or_else(|| Error::Argument("ucb1-grid requires --arms".into()))?,
            },
            other => return Err(Error::Argument(format!("unknown algorithm id '{other}'"))),
        };
        spec.check()?;
        Ok(spec)
    }

    pub fn check(&self) -> Result<()> {
        match *self {
            AlgorithmSpec::IdRjiOs { gamma } if !(gamma > 0.0 && gamma <= 1.0) => Err(
                Error::Argument(format!("gamma must lie in (0, 1], got {gamma}")),
            ),
            AlgorithmSpec::Ucb1Grid { arms: 0 } => {
                Err(Error::Argument("ucb1-grid needs at least one arm".into()))
            }
            _ => Ok(()),
        }
    }

    /// Stable label used in CSV output and seed derivation.
    pub fn label(&self) -> String {
        match self {
            AlgorithmSpec::RjiOs => "rji-os".into(),
            AlgorithmSpec::IdRjiOs { gamma } => format!("id-rji-os[gamma={gamma}]"),
            AlgorithmSpec::UniformGrid => "uniform-grid".into(),
            AlgorithmSpec::Ucb1Grid { arms } => format!("ucb1-grid[arms={arms}]"),
        }
    }

    /// Runs the learner against `env` until the budget is spent.
    pub fn run(&self, env: &mut BanditEnv<'_>) -> Result<Diagnostics> {
        self.check()?;
        Ok(match *self {
            AlgorithmSpec::RjiOs => Diagnostics::RjiOs(run_rji_os(env)),
            AlgorithmSpec::IdRjiOs { gamma } => Diagnostics::IdRjiOs(run_id_rji_os(env, gamma)?),
            AlgorithmSpec::UniformGrid => Diagnostics::Ucb(run_uniform_grid_baseline(env)),
            AlgorithmSpec::Ucb1Grid { arms } => Diagnostics::Ucb(run_ucb1_grid(env, arms)),
        })
    }
}

/// Runs one replication and returns its trace plus instrumentation.
pub fn simulate(
    spec: &AlgorithmSpec,
    instance: &CanonicalInstance,
    horizon: u64,
    seed: u64,
    record_rounds: bool,
) -> Result<(RunTrace, Diagnostics)> {
    if horizon == 0 {
        return Err(Error::Argument("horizon must be at least 1".into()));
    }
    let mut env = BanditEnv::new(instance, horizon, seed, record_rounds);
    let diagnostics = spec.run(&mut env)?;
    Ok((env.finish(), diagnostics))
}

/// Plays `action` until the budget runs out.
pub(crate) fn play_forever(env: &mut BanditEnv<'_>, action: f64) {
    while env.play(action).is_ok() {}
}
