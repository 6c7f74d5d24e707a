use serde::{Deserialize, Serialize};

use super::contract::PROBLEM_TOL;
use super::ActionMap;
use crate::error::{Error, Result};
use crate::instance::{CanonicalInstance, LinearFactor, RewardDistribution};

/// Posted-price problem: a buyer with a finitely supported valuation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PostedPriceProblem {
    /// Strictly increasing, in `(0, 1)`.
    pub valuations: Vec<f64>,
    /// Positive, summing to 1.
    pub probs: Vec<f64>,
}

/// First-price auction against a finitely supported highest competing bid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FirstPriceProblem {
    /// Bidder's own valuation, in `(0, 1]`.
    pub valuation: f64,
    /// Sorted atoms of the highest competing bid, in `[0, 1]`.
    pub atoms: Vec<f64>,
    pub probs: Vec<f64>,
}

impl PostedPriceProblem {
    fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Construction(m));
        if self.valuations.is_empty() {
            return bad("no valuations".into());
        }
        if self.valuations.len() != self.probs.len() {
            return bad(format!(
                "{} valuations but {} probabilities",
                self.valuations.len(),
                self.probs.len()
            ));
        }
        if let Some(v) = self.valuations.iter().find(|v| !(**v > 0.0 && **v < 1.0)) {
            return bad(format!("valuation {v} outside (0, 1)"));
        }
        if self.valuations.windows(2).any(|w| w[0] >= w[1]) {
            return bad("valuations must be strictly increasing".into());
        }
        if let Some(p) = self.probs.iter().find(|p| !(**p > 0.0)) {
            return bad(format!("valuation probability {p} is not positive"));
        }
        let total: f64 = self.probs.iter().sum();
        if (total - 1.0).abs() > PROBLEM_TOL {
            return bad(format!("valuation probabilities sum to {total}"));
        }
        Ok(())
    }

    /// Probability that the buyer accepts `price`, i.e. `P(v >= price)`.
    pub fn sale_probability(&self, price: f64) -> f64 {
        self.valuations
            .iter()
            .zip(&self.probs)
            .filter(|(v, _)| **v >= price)
            .map(|(_, p)| p)
            .sum()
    }
}

impl FirstPriceProblem {
    fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Construction(m));
        if !(self.valuation > 0.0 && self.valuation <= 1.0) {
            return bad(format!("valuation {} outside (0, 1]", self.valuation));
        }
        if self.atoms.is_empty() {
            return bad("competing bid law has no atoms".into());
        }
        if self.atoms.len() != self.probs.len() {
            return bad(format!(
                "{} atoms but {} probabilities",
                self.atoms.len(),
                self.probs.len()
            ));
        }
        if let Some(m) = self.atoms.iter().find(|m| !(0.0..=1.0).contains(*m)) {
            return bad(format!("competing bid {m} outside [0, 1]"));
        }
        if self.atoms.windows(2).any(|w| w[0] >= w[1]) {
            return bad("competing bid atoms must be strictly increasing".into());
        }
        if let Some(p) = self.probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return bad(format!("negative probability {p}"));
        }
        let total: f64 = self.probs.iter().sum();
        if (total - 1.0).abs() > PROBLEM_TOL {
            return bad(format!("competing bid probabilities sum to {total}"));
        }
        Ok(())
    }

    /// Probability of winning with `bid`, i.e. `P(bid >= m)`.
    pub fn win_probability(&self, bid: f64) -> f64 {
        self.atoms
            .iter()
            .zip(&self.probs)
            .filter(|(m, _)| bid >= **m)
            .map(|(_, p)| p)
            .sum()
    }
}

/// Compiles a posted-price problem in the mirrored orientation
/// `alpha = 1 - price`.
///
/// Breakpoints are `0, 1 - v_n, ..., 1 - v_1, 1`; interval `i` sells with
/// the probability that the valuation is at least the corresponding price.
pub fn posted_price_to_canonical(
    p: &PostedPriceProblem,
    id: &str,
) -> Result<(CanonicalInstance, ActionMap)> {
    p.check()?;
    let mut breakpoints = vec![0.0];
    breakpoints.extend(p.valuations.iter().rev().map(|v| 1.0 - v));
    breakpoints.push(1.0);

    // Price 1 - alpha on the first cell exceeds every valuation.
    let mut means = vec![0.0];
    let mut acc = 0.0;
    for q in p.probs.iter().rev() {
        acc += q;
        means.push(acc);
    }
    *means.last_mut().unwrap() = 1.0;

    let distributions = means
        .into_iter()
        .map(RewardDistribution::bernoulli)
        .collect::<Result<Vec<_>>>()?;
    let instance =
        CanonicalInstance::new(id, breakpoints, distributions, LinearFactor::ONE_MINUS)?;
    Ok((instance, ActionMap::price()))
}

/// Compiles a first-price problem with bids rescaled as `bid = v * alpha`.
///
/// Intervals are the plateaus of the win probability; atoms at or above
/// the valuation are unreachable and do not create breakpoints.
pub fn first_price_to_canonical(
    p: &FirstPriceProblem,
    id: &str,
) -> Result<(CanonicalInstance, ActionMap)> {
    p.check()?;
    let v = p.valuation;
    if p.atoms.iter().all(|&m| m > v) {
        return Err(Error::Construction(format!(
            "no winnable bid: every competing bid exceeds the valuation {v}"
        )));
    }

    // Means are accumulated from the atoms directly rather than by
    // re-evaluating the win probability at `v * (m / v)`, which can round
    // just below `m` and lose the tie.
    let mut breakpoints = vec![0.0];
    let mut means = vec![p.win_probability(0.0)];
    let mut acc = means[0];
    for (&m, &q) in p.atoms.iter().zip(&p.probs) {
        if m > 0.0 && m < v && q > 0.0 {
            acc += q;
            breakpoints.push(m / v);
            means.push(acc.min(1.0));
        }
    }
    breakpoints.push(1.0);

    let distributions = means
        .into_iter()
        .map(RewardDistribution::bernoulli)
        .collect::<Result<Vec<_>>>()?;
    let instance =
        CanonicalInstance::new(id, breakpoints, distributions, LinearFactor::new(v, 0.0)?)?;
    Ok((instance, ActionMap::bid(v)))
}
