use serde::Serialize;

use super::{Interval, Triplet};
use crate::env::{BanditEnv, Exhausted};

/// Failure probability used by the plain jump search: `1/T`.
pub fn rji_confidence(horizon: u64) -> f64 {
    1.0 / horizon as f64
}

/// Failure probability used by the jump-capturing search: `ln(T)/T`.
///
/// `ln T` is floored at 1 so that tiny horizons (`T < 3`, where `ln T < 1`
/// or even 0) still give a finite positive sample count.
pub fn id_confidence(horizon: u64) -> f64 {
    (horizon as f64).ln().max(1.0) / horizon as f64
}

/// Samples per endpoint: `ceil(8 / delta^2 * ln(4T / confidence))`.
pub fn sample_count(delta: f64, horizon: u64, confidence: f64) -> u64 {
    let n = 8.0 / (delta * delta) * (4.0 * horizon as f64 / confidence).ln();
    if n.is_finite() {
        (n.ceil() as u64).max(1)
    } else {
        u64::MAX
    }
}

/// One completed invocation of the jump search.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CallRecord {
    pub interval: Interval,
    pub depth: u32,
    /// `None` for short intervals, whose left estimate is pinned to 0.
    pub estimate_left: Option<f64>,
    pub estimate_right: f64,
    pub recursed: bool,
    /// Interval was appended to the jump set.
    pub captured: bool,
}

impl CallRecord {
    pub fn is_short(&self) -> bool {
        self.estimate_left.is_none()
    }
}

/// Side outputs of a search: every call made (in pre-order) and the
/// intervals captured as jumps.
#[derive(Clone, Debug, Default)]
pub struct SearchLog {
    pub calls: Vec<CallRecord>,
    pub jumps: Vec<Interval>,
}

struct Search {
    delta: f64,
    samples: u64,
    short_len: f64,
    capture: bool,
}

/// Recursive jump search over `interval` at threshold `delta`.
///
/// Returns the triplets found, or [`Exhausted`] if the budget ran out
/// part-way; in that case the partial results in `log` are kept but no
/// triplets are returned.
pub fn find_jumps(
    env: &mut BanditEnv<'_>,
    interval: Interval,
    delta: f64,
    depth: u32,
    log: &mut SearchLog,
) -> Result<Vec<Triplet>, Exhausted> {
    let horizon = env.horizon();
    let search = Search {
        delta,
        samples: sample_count(delta, horizon, rji_confidence(horizon)),
        short_len: 1.0 / horizon as f64,
        capture: false,
    };
    let mut out = Vec::new();
    search.run(env, interval, depth, &mut out, log)?;
    Ok(out)
}

/// Same control flow as [`find_jumps`] with the looser confidence
/// `ln(T)/T`; an interval of length at most `2/T` whose endpoint estimates
/// differ by at least `delta` is appended to `log.jumps` before recursing.
pub fn find_jumps_id(
    env: &mut BanditEnv<'_>,
    interval: Interval,
    delta: f64,
    depth: u32,
    log: &mut SearchLog,
) -> Result<Vec<Triplet>, Exhausted> {
    let horizon = env.horizon();
    let search = Search {
        delta,
        samples: sample_count(delta, horizon, id_confidence(horizon)),
        short_len: 1.0 / horizon as f64,
        capture: true,
    };
    let mut out = Vec::new();
    search.run(env, interval, depth, &mut out, log)?;
    Ok(out)
}

impl Search {
    fn run(
        &self,
        env: &mut BanditEnv<'_>,
        interval: Interval,
        depth: u32,
        out: &mut Vec<Triplet>,
        log: &mut SearchLog,
    ) -> Result<(), Exhausted> {
        if interval.length() <= self.short_len {
            let right = self.estimate(env, interval.hi)?;
            log.calls.push(CallRecord {
                interval,
                depth,
                estimate_left: None,
                estimate_right: right,
                recursed: false,
                captured: false,
            });
            out.push(Triplet {
                interval,
                estimate_left: 0.0,
                estimate_right: right,
            });
            return Ok(());
        }

        let left = self.estimate(env, interval.lo)?;
        let right = self.estimate(env, interval.hi)?;
        let recurse = right - left >= self.delta;
        let captured = self.capture && recurse && interval.length() <= 2.0 * self.short_len;
        if captured {
            log.jumps.push(interval);
        }
        log.calls.push(CallRecord {
            interval,
            depth,
            estimate_left: Some(left),
            estimate_right: right,
            recursed: recurse,
            captured,
        });

        if recurse {
            let (a, b) = interval.halves();
            self.run(env, a, depth + 1, out, log)?;
            self.run(env, b, depth + 1, out, log)?;
        } else {
            out.push(Triplet {
                interval,
                estimate_left: left,
                estimate_right: right,
            });
        }
        Ok(())
    }

    fn estimate(&self, env: &mut BanditEnv<'_>, action: f64) -> Result<f64, Exhausted> {
        let mut sum = 0.0;
        for _ in 0..self.samples {
            sum += env.play(action)?;
        }
        Ok((sum / self.samples as f64).clamp(0.0, 1.0))
    }
}
