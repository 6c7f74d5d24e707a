//! Simulation library for bandits with monotone jumps: stochastic bandits on
//! `[0, 1]` whose expected reward is a decreasing linear factor times a
//! step function with unknown upward jumps.
//!
//! - [`instance`]: canonical instances, exact utility and optimum oracles.
//! - [`env`]: the budgeted round-by-round environment learners talk to.
//! - [`environments`]: contract, posted-price and first-price reductions,
//!   the lower-bound pair, random instances.
//! - [`algorithms`]: the jump-identification learners and UCB1 baselines.
//! - [`harness`]: seeded replication, aggregation, exponent fits, CSV.
//! - [`cli`]: the `bwmj` command line.

pub mod algorithms;
pub mod cli;
pub mod env;
pub mod environments;
pub mod error;
pub mod harness;
pub mod instance;

pub use algorithms::{simulate, AlgorithmSpec, Diagnostics};
pub use env::BanditEnv;
pub use error::{Error, Result};
pub use harness::{pseudo_regret, RunTrace};
pub use instance::{CanonicalInstance, LinearFactor, RewardDistribution};
