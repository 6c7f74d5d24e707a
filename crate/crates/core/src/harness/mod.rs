//! Budgeted runs, exact pseudo-regret, seeded replication, aggregation and
//! CSV export.

mod experiment;
mod output;
mod stats;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::CanonicalInstance;

pub use experiment::{
    derive_seed, run_cells, run_experiment, ExperimentConfig, ExperimentOutput, InstanceSource,
    Policy, RawRecord,
};
pub use output::{
    aggregate_csv_string, format_float, read_raw_csv, write_aggregate_csv, write_exponent_csv, write_raw_csv,
    write_trace_csv,
};
pub use stats::{aggregate, exponent_table, fit_regret_exponent, AggregateResult, ExponentRow};

/// One environment interaction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Round {
    /// 1-based round number.
    pub t: u64,
    pub action: f64,
    pub observation: f64,
    pub expected_utility: f64,
}

/// Outcome of a single run. `rounds` is empty unless recording was on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub instance_id: String,
    pub horizon: u64,
    pub rounds_used: u64,
    pub cumulative_pseudo_regret: f64,
    pub rounds: Vec<Round>,
}

impl RunTrace {
    pub fn is_recorded(&self) -> bool {
        self.rounds.len() as u64 == self.rounds_used
    }
}

/// Recomputes `T*OPT - sum u(action_t)` from a recorded trace using the
/// instance oracle, summed round by round as `OPT - u(action_t)`.
pub fn pseudo_regret(trace: &RunTrace, instance: &CanonicalInstance) -> Result<f64> {
    if trace.instance_id != instance.id() {
        return Err(Error::Argument(format!(
            "trace belongs to instance '{}', not '{}'",
            trace.instance_id,
            instance.id()
        )));
    }
    if !trace.is_recorded() {
        return Err(Error::Argument(
            "trace has no per-round record to recompute from".into(),
        ));
    }
    let opt = instance.optimum().value;
    let mut regret = 0.0;
    for r in &trace.rounds {
        regret += opt - instance.expected_utility(r.action)?;
    }
    Ok(regret)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::BanditEnv;
    use crate::instance::{LinearFactor, RewardDistribution};

    fn three() -> CanonicalInstance {
        CanonicalInstance::new(
            "three",
            vec![0.0, 0.3, 0.7, 1.0],
            vec![
                RewardDistribution::point_mass(0.2).unwrap(),
                RewardDistribution::point_mass(0.5).unwrap(),
                RewardDistribution::point_mass(0.9).unwrap(),
            ],
            LinearFactor::ONE_MINUS,
        )
        .unwrap()
    }

    #[test]
    fn optimal_play_has_zero_regret() {
        let inst = three();
        let mut env = BanditEnv::new(&inst, 100, 0, true);
        while env.play(0.3).is_ok() {}
        let trace = env.finish();
        assert_eq!(pseudo_regret(&trace, &inst).unwrap(), 0.0);
        assert_eq!(trace.cumulative_pseudo_regret, 0.0);
    }

    #[test]
    fn constant_gap_play() {
        // u(0.4) = 0.6 * 0.5 = 0.30, OPT = 0.35.
        let inst = three();
        let mut env = BanditEnv::new(&inst, 100, 0, true);
        while env.play(0.4).is_ok() {}
        let trace = env.finish();
        assert!((pseudo_regret(&trace, &inst).unwrap() - 5.0).abs() < 1e-9);
    }

    #[test]
    fn mismatch_and_unrecorded_are_errors() {
        let inst = three();
        let mut env = BanditEnv::new(&inst, 5, 0, false);
        while env.play(0.4).is_ok() {}
        let trace = env.finish();
        assert!(pseudo_regret(&trace, &inst).is_err());
        let other = three().with_id("other");
        let mut env = BanditEnv::new(&other, 5, 0, true);
        while env.play(0.4).is_ok() {}
        assert!(pseudo_regret(&env.finish(), &inst).is_err());
    }
}
