use serde::{Deserialize, Serialize};

use super::contract::{upper_envelope, ContractProblem, Line, PROBLEM_TOL};
use crate::error::{Error, Result};
use crate::instance::{CanonicalInstance, LinearFactor, RewardDistribution};

/// Contract problem with `d` agent types sharing outcomes and rewards.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BayesianContractProblem {
    pub rewards: Vec<f64>,
    /// Per type: outcome distribution of each action.
    pub type_distributions: Vec<Vec<Vec<f64>>>,
    /// Per type: cost of each action.
    pub type_costs: Vec<Vec<f64>>,
    /// Probability of each type.
    pub type_probs: Vec<f64>,
}

/// Canonical instance plus the per-cell best-response profile.
#[derive(Clone, Debug)]
pub struct BayesianReduction {
    pub instance: CanonicalInstance,
    /// For each canonical interval, the 0-based action each type plays.
    pub profiles: Vec<Vec<usize>>,
}

impl BayesianContractProblem {
    pub fn type_problem(&self, k: usize) -> ContractProblem {
        ContractProblem {
            rewards: self.rewards.clone(),
            distributions: self.type_distributions[k].clone(),
            costs: self.type_costs[k].clone(),
        }
    }

    pub fn d(&self) -> usize {
        self.type_probs.len()
    }

    fn check(&self) -> Result<()> {
        let d = self.type_probs.len();
        if d == 0 {
            return Err(Error::Construction("no agent types".into()));
        }
        if self.type_distributions.len() != d || self.type_costs.len() != d {
            return Err(Error::Construction(format!(
                "{d} type probabilities but {} distribution tables and {} cost vectors",
                self.type_distributions.len(),
                self.type_costs.len()
            )));
        }
        if self.type_probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::Construction("negative type probability".into()));
        }
        let total: f64 = self.type_probs.iter().sum();
        if (total - 1.0).abs() > PROBLEM_TOL {
            return Err(Error::Construction(format!(
                "type probabilities sum to {total}"
            )));
        }
        Ok(())
    }
}

/// Compiles a Bayesian contract problem.
///
/// Each type's best-response partition is computed on its own (ties to
/// the principal), the partitions are overlaid, and each cell gets the
/// type mixture of the best responses' outcome laws. Adjacent cells with
/// the same best-response profile are merged. Fails if the cell means are
/// not strictly increasing.
pub fn bayesian_contract_to_canonical(
    p: &BayesianContractProblem,
    id: &str,
) -> Result<BayesianReduction> {
    p.check()?;
    let type_total: f64 = p.type_probs.iter().sum();

    let mut partitions = Vec::with_capacity(p.d());
    for k in 0..p.d() {
        let tp = p.type_problem(k);
        tp.check()
            .map_err(|e| Error::Construction(format!("type {}: {e}", k + 1)))?;
        let expected = tp.expected_rewards();
        let lines: Vec<Line> = (0..tp.n())
            .map(|i| Line {
                index: i,
                reward: expected[i],
                cost: tp.costs[i],
            })
            .collect();
        // Non-implementable actions are fine here: the type simply never
        // plays them.
        let (points, winners) = envelope_allowing_unused(&lines);
        partitions.push((points, winners));
    }

    let mut cuts: Vec<f64> = partitions
        .iter()
        .flat_map(|(pts, _)| pts.iter().copied())
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut breakpoints = vec![0.0];
    let mut profiles: Vec<Vec<usize>> = Vec::new();
    for w in cuts.windows(2) {
        let profile: Vec<usize> = partitions
            .iter()
            .map(|(pts, winners)| {
                let cell = pts[..pts.len() - 1].partition_point(|&x| x <= w[0]) - 1;
                winners[cell]
            })
            .collect();
        if profiles.last() == Some(&profile) {
            *breakpoints.last_mut().unwrap() = w[1];
        } else {
            profiles.push(profile);
            breakpoints.push(w[1]);
        }
    }

    let distributions = profiles
        .iter()
        .map(|profile| {
            let mut values = Vec::new();
            let mut probs = Vec::new();
            for (k, &a) in profile.iter().enumerate() {
                let f = &p.type_distributions[k][a];
                let f_total: f64 = f.iter().sum();
                let w = p.type_probs[k] / type_total;
                values.extend_from_slice(&p.rewards);
                probs.extend(f.iter().map(|x| w * x / f_total));
            }
            RewardDistribution::discrete(values, probs)
        })
        .collect::<Result<Vec<_>>>()?;

    for (i, pair) in distributions.windows(2).enumerate() {
        if !(pair[0].mean() < pair[1].mean()) {
            return Err(Error::Construction(format!(
                "mixture means not strictly increasing between cells {} and {} ({} vs {})",
                i + 1,
                i + 2,
                pair[0].mean(),
                pair[1].mean()
            )));
        }
    }

    let instance =
        CanonicalInstance::new(id, breakpoints, distributions, LinearFactor::ONE_MINUS)?;
    Ok(BayesianReduction { instance, profiles })
}

/// Envelope where lines that never win are simply absent.
fn envelope_allowing_unused(lines: &[Line]) -> (Vec<f64>, Vec<usize>) {
    let mut active: Vec<Line> = lines.to_vec();
    loop {
        match upper_envelope(&active) {
            Ok((points, winners)) => {
                let winners = winners.iter().map(|&w| active[w].index).collect();
                return (points, winners);
            }
            Err(unused) => active.retain(|l| l.index != unused),
        }
    }
}
