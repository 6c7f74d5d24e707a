use serde::Serialize;

use super::rji_os::{run_epochs_while, EpochsEnd, SearchMode};
use super::{epoch_threshold, ucb1, EpochRecord, Interval, RjiOsReport, UcbArmState};
use crate::env::BanditEnv;
use crate::error::{Error, Result};

/// Instrumentation of a run of [`run_id_rji_os`].
#[derive(Clone, Debug, Default, Serialize)]
pub struct IdRjiOsReport {
    pub epochs: Vec<EpochRecord>,
    pub fallback: Option<(f64, u64)>,
    /// Short intervals where a jump was detected, in discovery order.
    pub jumps: Vec<Interval>,
    /// UCB1 arm set, sorted and deduplicated; empty if UCB1 never started.
    pub arms: Vec<f64>,
    /// Rounds consumed when UCB1 took over.
    pub handoff_round: Option<u64>,
    pub ucb: Vec<UcbArmState>,
}

/// Gap-aware variant: epochs continue while `2^-j >= gamma/4`, capturing
/// short intervals that contain a jump. The first epoch below that
/// threshold hands the rest of the budget to UCB1 over `{0}` plus the right
/// endpoint of every captured interval.
pub fn run_id_rji_os(env: &mut BanditEnv<'_>, gamma: f64) -> Result<IdRjiOsReport> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::Argument(format!(
            "gamma must lie in (0, 1], got {gamma}"
        )));
    }
    let mut inner = RjiOsReport::default();
    let mut jumps = Vec::new();
    let end = run_epochs_while(
        env,
        SearchMode::CaptureJumps,
        |j| epoch_threshold(j) >= gamma / 4.0,
        &mut inner,
        &mut jumps,
    );

    let mut report = IdRjiOsReport {
        epochs: inner.epochs,
        fallback: inner.fallback,
        jumps,
        ..Default::default()
    };
    if end == EpochsEnd::Stopped {
        let mut arms = vec![0.0];
        arms.extend(report.jumps.iter().map(|iv| iv.hi));
        arms.sort_by(f64::total_cmp);
        arms.dedup();
        report.handoff_round = Some(env.consumed());
        report.ucb = ucb1(env, &arms);
        report.arms = arms;
    }
    Ok(report)
}
