use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{CanonicalInstance, LinearFactor, RewardDistribution};

/// Tolerance for probability vectors and costs read from problem files.
pub const PROBLEM_TOL: f64 = 1e-9;

/// Principal-agent problem with `m` outcomes and `n` agent actions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContractProblem {
    /// Principal's reward for each outcome.
    pub rewards: Vec<f64>,
    /// Outcome distribution of each action.
    pub distributions: Vec<Vec<f64>>,
    /// Agent's cost of each action; the first must be 0.
    pub costs: Vec<f64>,
}

/// Canonical instance plus the best-response structure behind it.
#[derive(Clone, Debug)]
pub struct ContractReduction {
    pub instance: CanonicalInstance,
    /// Best-response switch points, `0 = beta_1 < ... < beta_{n+1} = 1`.
    pub breakpoints: Vec<f64>,
    /// Original 0-based action index best-responding on each interval.
    pub actions: Vec<usize>,
    /// Expected principal reward of each action (original order).
    pub expected_rewards: Vec<f64>,
}

impl ContractProblem {
    pub fn n(&self) -> usize {
        self.distributions.len()
    }

    pub fn expected_rewards(&self) -> Vec<f64> {
        self.distributions
            .iter()
            .map(|f| f.iter().zip(&self.rewards).map(|(p, r)| p * r).sum())
            .collect()
    }

    /// Checks shapes, ranges and normalization.
    pub fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Construction(msg));
        let m = self.rewards.len();
        if m == 0 {
            return bad("contract problem has no outcomes".into());
        }
        if self.distributions.is_empty() {
            return bad("contract problem has no actions".into());
        }
        if self.costs.len() != self.distributions.len() {
            return bad(format!(
                "{} actions but {} costs",
                self.distributions.len(),
                self.costs.len()
            ));
        }
        if let Some(r) = self.rewards.iter().find(|r| !unit(**r)) {
            return bad(format!("reward {r} outside [0, 1]"));
        }
        for (i, f) in self.distributions.iter().enumerate() {
            if f.len() != m {
                return bad(format!(
                    "action {} has {} outcome probabilities, expected {m}",
                    i + 1,
                    f.len()
                ));
            }
            if f.iter().any(|p| !p.is_finite() || *p < 0.0) {
                return bad(format!("action {} has a negative probability", i + 1));
            }
            let total: f64 = f.iter().sum();
            if (total - 1.0).abs() > PROBLEM_TOL {
                return bad(format!(
                    "outcome distribution of action {} sums to {total}",
                    i + 1
                ));
            }
        }
        if let Some((i, c)) = self.costs.iter().enumerate().find(|(_, c)| !unit(**c)) {
            return bad(format!("cost {c} of action {} outside [0, 1]", i + 1));
        }
        if self.costs[0] != 0.0 {
            return bad(format!("first action must have cost 0, got {}", self.costs[0]));
        }
        Ok(())
    }
}

fn unit(x: f64) -> bool {
    x.is_finite() && (0.0..=1.0).contains(&x)
}

/// One agent action as a line `rho -> rho * reward - cost`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Line {
    pub index: usize,
    pub reward: f64,
    pub cost: f64,
}

/// Upper envelope of agent-utility lines over `[0, 1]`, ties going to the
/// line with larger reward. Returns switch points (starting at 0, ending
/// at 1) and the winning line index on each cell. Lines that never win on a
/// cell of positive width are reported by index.
pub(crate) fn upper_envelope(lines: &[Line]) -> std::result::Result<(Vec<f64>, Vec<usize>), usize> {
    // Start: best at rho = 0, i.e. lowest cost, then largest reward.
    let mut current = (0..lines.len())
        .max_by(|&a, &b| {
            let (la, lb) = (&lines[a], &lines[b]);
            (-la.cost)
                .total_cmp(&-lb.cost)
                .then(la.reward.total_cmp(&lb.reward))
                .then(b.cmp(&a))
        })
        .expect("at least one line");
    let mut points = vec![0.0];
    let mut winners = vec![current];
    let mut at = 0.0;

    loop {
        let cur = lines[current];
        let mut next: Option<(f64, usize)> = None;
        for (j, l) in lines.iter().enumerate() {
            if l.reward <= cur.reward {
                continue;
            }
            let cross = ((l.cost - cur.cost) / (l.reward - cur.reward)).max(at);
            let better = match next {
                None => true,
                Some((x, k)) => cross < x || (cross == x && l.reward > lines[k].reward),
            };
            if better {
                next = Some((cross, j));
            }
        }
        match next {
            Some((x, j)) if x < 1.0 => {
                if x <= at {
                    // Zero-width cell: the current line never really wins.
                    return Err(lines[current].index);
                }
                points.push(x);
                winners.push(j);
                current = j;
                at = x;
            }
            _ => break,
        }
    }
    points.push(1.0);
    if let Some(missing) = (0..lines.len()).find(|i| !winners.contains(i)) {
        return Err(lines[missing].index);
    }
    Ok((points, winners))
}

/// Compiles a contract problem into a canonical instance.
///
/// Intervals are the agent's best-response regions in the contract rate
/// `rho`; the reward law on each is the outcome-reward law of the best
/// response, and the linear factor is `1 - rho`. Actions with identical
/// outcome distribution and cost are merged first (keeping the lower
/// index). Fails if any remaining action is never a best response on an
/// interval of positive width.
pub fn contract_to_canonical(p: &ContractProblem, id: &str) -> Result<ContractReduction> {
    p.check()?;
    let expected = p.expected_rewards();

    let mut kept: Vec<usize> = Vec::new();
    for i in 0..p.n() {
        let dup = kept
            .iter()
            .any(|&k| p.distributions[k] == p.distributions[i] && p.costs[k] == p.costs[i]);
        if !dup {
            kept.push(i);
        }
    }
    for (a, &i) in kept.iter().enumerate() {
        for &k in &kept[..a] {
            if expected[k] == expected[i] && p.costs[k] == p.costs[i] {
                return Err(Error::Construction(format!(
                    "actions {} and {} give the agent identical utility",
                    k + 1,
                    i + 1
                )));
            }
        }
    }

    let lines: Vec<Line> = kept
        .iter()
        .map(|&i| Line {
            index: i,
            reward: expected[i],
            cost: p.costs[i],
        })
        .collect();
    let (breakpoints, winners) = upper_envelope(&lines)
        .map_err(|i| Error::Construction(format!("action {} not implementable", i + 1)))?;
    let actions: Vec<usize> = winners.iter().map(|&w| lines[w].index).collect();

    let distributions = actions
        .iter()
        .map(|&a| {
            let f = &p.distributions[a];
            let total: f64 = f.iter().sum();
            RewardDistribution::discrete(
                p.rewards.clone(),
                f.iter().map(|x| x / total).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let instance = CanonicalInstance::new(
        id,
        breakpoints.clone(),
        distributions,
        LinearFactor::ONE_MINUS,
    )?;
    Ok(ContractReduction {
        instance,
        breakpoints,
        actions,
        expected_rewards: expected,
    })
}

/// Agent's best response at `rho` by exhaustive comparison, ties going to
/// the larger expected reward and then the lower index.
pub fn best_response(p: &ContractProblem, rho: f64) -> usize {
    let expected = p.expected_rewards();
    let mut best = 0;
    for i in 1..p.n() {
        let vi = rho * expected[i] - p.costs[i];
        let vb = rho * expected[best] - p.costs[best];
        if vi > vb || (vi == vb && expected[i] > expected[best]) {
            best = i;
        }
    }
    best
}
