use serde::Serialize;

use super::{
    epoch_threshold, find_jumps, find_jumps_id, optimistic_shrink, play_forever, CallRecord,
    Interval, SearchLog, Triplet,
};
use crate::env::BanditEnv;

/// Everything observed during one epoch.
///
/// Fields after `calls` are only meaningful when `completed` is true; an
/// epoch cut short by the budget keeps its calls and triplets so far.
#[derive(Clone, Debug, Serialize)]
pub struct EpochRecord {
    pub epoch: u32,
    pub delta: f64,
    pub active: Vec<Interval>,
    pub triplets: Vec<Triplet>,
    pub calls: Vec<CallRecord>,
    pub completed: bool,
    pub opt_estimate: f64,
    pub best_action: f64,
    /// No triplet endpoint had a positive optimistic value, so
    /// `best_action` is the default 0 rather than a measured maximizer.
    pub all_estimates_zero: bool,
    pub next_active: Vec<Interval>,
    /// Rounds consumed before the epoch started and when it ended.
    pub rounds_before: u64,
    pub rounds_after: u64,
}

/// Instrumentation of a run of [`run_rji_os`].
#[derive(Clone, Debug, Default, Serialize)]
pub struct RjiOsReport {
    pub epochs: Vec<EpochRecord>,
    /// Action committed to when shrinking left nothing, and the round
    /// count at which that happened.
    pub fallback: Option<(f64, u64)>,
}

impl RjiOsReport {
    pub fn completed_epochs(&self) -> impl Iterator<Item = &EpochRecord> {
        self.epochs.iter().filter(|e| e.completed)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum SearchMode {
    Plain,
    CaptureJumps,
}

/// Runs one epoch: search every active interval, estimate the optimum from
/// the triplet endpoints, shrink.
pub(crate) fn run_epoch(
    env: &mut BanditEnv<'_>,
    epoch: u32,
    active: Vec<Interval>,
    mode: SearchMode,
    jumps: &mut Vec<Interval>,
) -> EpochRecord {
    let delta = epoch_threshold(epoch);
    let horizon = env.horizon();
    let ell = env.linear_factor();
    let mut record = EpochRecord {
        epoch,
        delta,
        active,
        triplets: Vec::new(),
        calls: Vec::new(),
        completed: false,
        opt_estimate: 0.0,
        best_action: 0.0,
        all_estimates_zero: true,
        next_active: Vec::new(),
        rounds_before: env.consumed(),
        rounds_after: env.consumed(),
    };

    let mut log = SearchLog::default();
    for &iv in &record.active {
        let found = match mode {
            SearchMode::Plain => find_jumps(env, iv, delta, 1, &mut log),
            SearchMode::CaptureJumps => find_jumps_id(env, iv, delta, 1, &mut log),
        };
        match found {
            Ok(triplets) => record.triplets.extend(triplets),
            Err(_) => {
                record.calls = log.calls;
                jumps.extend(log.jumps);
                record.rounds_after = env.consumed();
                return record;
            }
        }
    }
    record.calls = log.calls;
    jumps.extend(log.jumps);

    for t in &record.triplets {
        let iv = t.interval;
        for (action, est) in [(iv.lo, t.estimate_left), (iv.hi, t.estimate_right)] {
            let value = ell.eval(action) * est;
            if value > record.opt_estimate {
                record.opt_estimate = value;
                record.best_action = action;
                record.all_estimates_zero = false;
            }
        }
    }

    record.next_active = record
        .triplets
        .iter()
        .filter_map(|t| optimistic_shrink(t, delta, record.opt_estimate, horizon, ell))
        .collect();
    record.completed = true;
    record.rounds_after = env.consumed();
    record
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum EpochsEnd {
    Exhausted,
    Fallback,
    /// `keep_going` refused the next epoch.
    Stopped,
}

/// Runs epochs while `keep_going(epoch)` holds and budget remains.
pub(crate) fn run_epochs_while(
    env: &mut BanditEnv<'_>,
    mode: SearchMode,
    keep_going: impl Fn(u32) -> bool,
    report: &mut RjiOsReport,
    jumps: &mut Vec<Interval>,
) -> EpochsEnd {
    let mut active = vec![Interval::UNIT];
    let mut epoch = 1u32;
    loop {
        if !keep_going(epoch) {
            return EpochsEnd::Stopped;
        }
        let record = run_epoch(env, epoch, active, mode, jumps);
        let completed = record.completed;
        let best = record.best_action;
        active = record.next_active.clone();
        report.epochs.push(record);
        if !completed {
            return EpochsEnd::Exhausted;
        }
        if active.is_empty() {
            report.fallback = Some((best, env.consumed()));
            play_forever(env, best);
            return EpochsEnd::Fallback;
        }
        epoch += 1;
    }
}

/// Recursive jump identification with optimistic shrinking.
///
/// Runs epochs `j = 1, 2, ...` with threshold `2^-j` until the budget is
/// exhausted. If shrinking ever leaves no interval, the epoch's best
/// action is played for the rest of the horizon.
pub fn run_rji_os(env: &mut BanditEnv<'_>) -> RjiOsReport {
    let mut report = RjiOsReport::default();
    let mut unused = Vec::new();
    run_epochs_while(env, SearchMode::Plain, |_| true, &mut report, &mut unused);
    debug_assert!(env.is_exhausted());
    report
}
