//! The round-by-round environment seen by learners.
//!
//! A [`BanditEnv`] owns the budget counter and the feedback stream. Learners
//! only call [`BanditEnv::play`]; the instance itself (means, breakpoints) is
//! private to this module, so no algorithm can peek at it. Expected utilities
//! of played actions are accumulated on the side for exact pseudo-regret.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::harness::{Round, RunTrace};
use crate::instance::{CanonicalInstance, LinearFactor};

/// ChaCha stream reserved for environment feedback.
const ENVIRONMENT_STREAM: u64 = 1;

/// Feedback stream derived from a replication seed.
pub fn environment_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(ENVIRONMENT_STREAM);
    rng
}

/// Returned by [`BanditEnv::play`] once the horizon has been reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exhausted;

/// Horizon and number of interactions used so far.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoundBudget {
    horizon: u64,
    consumed: u64,
}

impl RoundBudget {
    pub fn new(horizon: u64) -> Self {
        RoundBudget {
            horizon,
            consumed: 0,
        }
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn consumed(&self) -> u64 {
        self.consumed
    }

    pub fn remaining(&self) -> u64 {
        self.horizon - self.consumed
    }

    /// Claims one round, or fails without side effects when none are left.
    pub fn try_consume(&mut self) -> Result<u64, Exhausted> {
        if self.consumed >= self.horizon {
            return Err(Exhausted);
        }
        self.consumed += 1;
        Ok(self.consumed)
    }
}

pub struct BanditEnv<'a> {
    instance: &'a CanonicalInstance,
    rng: ChaCha8Rng,
    budget: RoundBudget,
    opt: f64,
    regret: f64,
    rounds: Option<Vec<Round>>,
}

impl<'a> BanditEnv<'a> {
    /// Environment over `horizon` rounds; `record` keeps the per-round trace.
    pub fn new(instance: &'a CanonicalInstance, horizon: u64, seed: u64, record: bool) -> Self {
        let rounds = record.then(|| Vec::with_capacity(horizon.min(1 << 24) as usize));
        BanditEnv {
            instance,
            rng: environment_rng(seed),
            budget: RoundBudget::new(horizon),
            opt: instance.optimum().value,
            regret: 0.0,
            rounds,
        }
    }

    /// Plays `action` for one round and returns the observation `x`.
    pub fn play(&mut self, action: f64) -> Result<f64, Exhausted> {
        debug_assert!((0.0..=1.0).contains(&action), "action {action} outside [0, 1]");
        let t = self.budget.try_consume()?;
        let idx = self.instance.index_unchecked(action);
        let dist = &self.instance.distributions()[idx];
        let x = dist.sample(&mut self.rng);
        let u = self.instance.linear_factor().eval(action) * dist.mean();
        self.regret += self.opt - u;
        if let Some(rounds) = self.rounds.as_mut() {
            rounds.push(Round {
                t,
                action,
                observation: x,
                expected_utility: u,
            });
        }
        Ok(x)
    }

    /// The known linear factor; the only instance property learners may use.
    pub fn linear_factor(&self) -> LinearFactor {
        self.instance.linear_factor()
    }

    pub fn horizon(&self) -> u64 {
        self.budget.horizon()
    }

    pub fn consumed(&self) -> u64 {
        self.budget.consumed()
    }

    pub fn remaining(&self) -> u64 {
        self.budget.remaining()
    }

    pub fn is_exhausted(&self) -> bool {
        self.budget.remaining() == 0
    }

    pub fn finish(self) -> RunTrace {
        RunTrace {
            instance_id: self.instance.id().to_string(),
            horizon: self.budget.horizon(),
            rounds_used: self.budget.consumed(),
            cumulative_pseudo_regret: self.regret,
            rounds: self.rounds.unwrap_or_default(),
        }
    }
}
