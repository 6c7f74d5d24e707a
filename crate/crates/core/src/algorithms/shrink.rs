use super::{Interval, Triplet};
use crate::instance::LinearFactor;

/// Prunes the part of a triplet's interval whose optimistic utility falls
/// below `opt_estimate`. Consumes no rounds.
///
/// Short intervals (length at most `1/T`) are kept whole or dropped based
/// on their right endpoint. Longer ones are cut at the point where
/// `ell(a) * left_estimate + 2*delta + 2/T` drops below `opt_estimate`.
pub fn optimistic_shrink(
    triplet: &Triplet,
    delta: f64,
    opt_estimate: f64,
    horizon: u64,
    ell: LinearFactor,
) -> Option<Interval> {
    let inv_t = 1.0 / horizon as f64;
    let iv = triplet.interval;

    if iv.length() <= inv_t {
        let optimistic = ell.eval(iv.hi) * triplet.estimate_right + delta / 2.0 + inv_t;
        return (optimistic >= opt_estimate).then_some(iv);
    }

    let slack = 2.0 * delta + 2.0 * inv_t;
    let mu = triplet.estimate_left;
    if mu <= 0.0 {
        return (slack >= opt_estimate).then_some(iv);
    }
    let needed = (opt_estimate - slack) / mu;
    if needed <= ell.eval(iv.hi) {
        Some(iv)
    } else if needed > ell.eval(iv.lo) {
        None
    } else {
        let cut = ell.inverse(needed).clamp(iv.lo, iv.hi);
        Some(Interval::new(iv.lo, cut))
    }
}
