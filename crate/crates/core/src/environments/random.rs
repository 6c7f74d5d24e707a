use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::contract::ContractProblem;
use super::pricing::{FirstPriceProblem, PostedPriceProblem};
use crate::error::{Error, Result};
use crate::instance::{CanonicalInstance, LinearFactor, RewardDistribution};

/// Reward law family used by [`random_instance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DistributionKind {
    PointMass,
    #[default]
    Bernoulli,
    /// Two equally likely values symmetric around the mean.
    Discrete,
}

impl std::str::FromStr for DistributionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "point_mass" | "point-mass" | "point" => Ok(DistributionKind::PointMass),
            "bernoulli" => Ok(DistributionKind::Bernoulli),
            "discrete" => Ok(DistributionKind::Discrete),
            other => Err(Error::Argument(format!("unknown distribution kind '{other}'"))),
        }
    }
}

/// Parameters of [`random_instance`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomParams {
    pub gap_min: f64,
    pub gap_max: f64,
    pub kind: DistributionKind,
    pub linear_factor: LinearFactor,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            gap_min: 0.05,
            gap_max: 0.2,
            kind: DistributionKind::Bernoulli,
            linear_factor: LinearFactor::ONE_MINUS,
        }
    }
}

/// A seeded random instance, as written in experiment configs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub n: usize,
    pub seed: u64,
    #[serde(default = "default_gap_min")]
    pub gap_min: f64,
    #[serde(default = "default_gap_max")]
    pub gap_max: f64,
    #[serde(default)]
    pub kind: DistributionKind,
    #[serde(default)]
    pub id: Option<String>,
}

fn default_gap_min() -> f64 {
    RandomParams::default().gap_min
}

fn default_gap_max() -> f64 {
    RandomParams::default().gap_max
}

impl RandomSpec {
    pub fn build(&self) -> Result<CanonicalInstance> {
        let params = RandomParams {
            gap_min: self.gap_min,
            gap_max: self.gap_max,
            kind: self.kind,
            ..Default::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let inst = random_instance(self.n, &mut rng, &params)?;
        let id = self
            .id
            .clone()
            .unwrap_or_else(|| format!("random-n{}-s{}", self.n, self.seed));
        Ok(inst.with_id(id))
    }
}

/// Random valid instance with `n` intervals.
///
/// Interior breakpoints are uniform order statistics; consecutive mean
/// gaps are uniform in `[gap_min, gap_max]`, shrunk toward `gap_min` when
/// they would not fit in `[0, 1]`; the first mean is uniform in what is
/// left.
pub fn random_instance<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    params: &RandomParams,
) -> Result<CanonicalInstance> {
    if n == 0 {
        return Err(Error::Argument("n must be at least 1".into()));
    }
    let (lo, hi) = (params.gap_min, params.gap_max);
    if !(lo > 0.0 && lo <= hi) {
        return Err(Error::Argument(format!(
            "gap range [{lo}, {hi}] must satisfy 0 < min <= max"
        )));
    }
    let floor = (n - 1) as f64 * lo;
    if floor > 1.0 {
        return Err(Error::Argument(format!(
            "{} gaps of at least {lo} do not fit in [0, 1]",
            n - 1
        )));
    }

    let mut breakpoints;
    loop {
        breakpoints = vec![0.0];
        let mut inner: Vec<f64> = (1..n).map(|_| rng.gen::<f64>()).collect();
        inner.sort_by(f64::total_cmp);
        breakpoints.extend(inner);
        breakpoints.push(1.0);
        if breakpoints.windows(2).all(|w| w[0] < w[1]) {
            break;
        }
    }

    let mut gaps: Vec<f64> = (1..n).map(|_| rng.gen_range(lo..=hi)).collect();
    let total: f64 = gaps.iter().sum();
    if total > 1.0 {
        let scale = (1.0 - floor) / (total - floor);
        for g in &mut gaps {
            *g = lo + (*g - lo) * scale;
        }
    }
    let total: f64 = gaps.iter().sum();
    let mut mu = rng.gen::<f64>() * (1.0 - total).max(0.0);
    let mut means = vec![mu];
    for g in &gaps {
        mu += g;
        means.push(mu.min(1.0));
    }

    let distributions = means
        .iter()
        .map(|&m| match params.kind {
            DistributionKind::PointMass => RewardDistribution::point_mass(m),
            DistributionKind::Bernoulli => RewardDistribution::bernoulli(m),
            DistributionKind::Discrete => {
                let w = 0.5 * m.min(1.0 - m);
                RewardDistribution::discrete(vec![m - w, m + w], vec![0.5, 0.5])
            }
        })
        .collect::<Result<Vec<_>>>()?;
    CanonicalInstance::new(
        format!("random-n{n}"),
        breakpoints,
        distributions,
        params.linear_factor,
    )
}

fn probability_vector<R: Rng + ?Sized>(rng: &mut R, len: usize, floor: f64) -> Vec<f64> {
    let w: Vec<f64> = (0..len).map(|_| floor + rng.gen::<f64>()).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

/// Random contract problem in which every action is implementable.
///
/// Outcome laws are random; switch points are drawn first and costs are
/// chained so that the envelope visits actions in order of expected
/// reward. The zero-cost action comes first, the others are shuffled.
pub fn random_contract_problem<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    outcomes: usize,
) -> ContractProblem {
    assert!(n >= 1 && outcomes >= 2);
    loop {
        let rewards: Vec<f64> = (0..outcomes).map(|_| rng.gen::<f64>()).collect();
        let mut actions: Vec<(f64, Vec<f64>)> = (0..n)
            .map(|_| {
                let f = probability_vector(rng, outcomes, 0.0);
                let r = f.iter().zip(&rewards).map(|(p, r)| p * r).sum();
                (r, f)
            })
            .collect();
        actions.sort_by(|a, b| a.0.total_cmp(&b.0));
        if actions.windows(2).any(|w| w[1].0 - w[0].0 < 1e-6) {
            continue;
        }
        let mut switches: Vec<f64> = (1..n).map(|_| rng.gen_range(0.02..0.98)).collect();
        switches.sort_by(f64::total_cmp);
        if switches.windows(2).any(|w| w[1] - w[0] < 1e-6) {
            continue;
        }
        let mut costs = vec![0.0; n];
        for i in 1..n {
            costs[i] = costs[i - 1] + switches[i - 1] * (actions[i].0 - actions[i - 1].0);
        }
        let mut order: Vec<usize> = (1..n).collect();
        order.shuffle(rng);
        order.insert(0, 0);
        return ContractProblem {
            rewards,
            distributions: order.iter().map(|&i| actions[i].1.clone()).collect(),
            costs: order.iter().map(|&i| costs[i].min(1.0)).collect(),
        };
    }
}

/// Random posted-price problem with `n` valuations.
pub fn random_posted_price_problem<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PostedPriceProblem {
    loop {
        let mut valuations: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..0.99)).collect();
        valuations.sort_by(f64::total_cmp);
        if valuations.windows(2).any(|w| w[1] - w[0] < 1e-6) {
            continue;
        }
        return PostedPriceProblem {
            valuations,
            probs: probability_vector(rng, n, 0.05),
        };
    }
}

/// Random first-price problem with `n` competing-bid atoms, at least one
/// of them below the valuation.
pub fn random_first_price_problem<R: Rng + ?Sized>(rng: &mut R, n: usize) -> FirstPriceProblem {
    loop {
        let valuation = rng.gen_range(0.2..=1.0);
        let mut atoms: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        atoms[0] = rng.gen_range(0.0..valuation);
        if rng.gen_bool(0.2) {
            atoms[0] = 0.0;
        }
        atoms.sort_by(f64::total_cmp);
        if atoms.windows(2).any(|w| w[1] - w[0] < 1e-6) {
            continue;
        }
        return FirstPriceProblem {
            valuation,
            atoms,
            probs: probability_vector(rng, n, 0.05),
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let inst = random_instance(1, &mut rng, &RandomParams::default()).unwrap();
        assert_eq!(inst.n(), 1);
        assert_eq!(inst.breakpoints(), &[0.0, 1.0]);
    }

    #[test]
    fn gaps_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let params = RandomParams::default();
        for _ in 0..1000 {
            let inst = random_instance(8, &mut rng, &params).unwrap();
            for w in inst.means().windows(2) {
                assert!(w[1] - w[0] >= params.gap_min - 1e-12);
            }
        }
    }

    #[test]
    fn infeasible_gaps() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let params = RandomParams {
            gap_min: 0.3,
            gap_max: 0.4,
            ..Default::default()
        };
        assert!(random_instance(5, &mut rng, &params).is_err());
        assert!(random_instance(4, &mut rng, &params).is_ok());
    }

    #[test]
    fn spec_is_deterministic() {
        let spec = RandomSpec {
            n: 5,
            seed: 42,
            gap_min: 0.05,
            gap_max: 0.2,
            kind: DistributionKind::Discrete,
            id: None,
        };
        assert_eq!(spec.build().unwrap(), spec.build().unwrap());
    }
}
