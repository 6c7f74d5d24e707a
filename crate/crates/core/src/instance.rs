//! Canonical bandit-with-monotone-jumps instances.
//!
//! An instance partitions the action space `[0, 1]` into intervals
//! `A_i = [b_i, b_{i+1})` (the last one closed on the right). Playing an
//! action in `A_i` yields an observation drawn from the interval's reward
//! law, scaled by a known strictly decreasing linear factor. Means must be
//! strictly increasing from left to right, so the expected utility is a
//! piecewise-linear function with upward jumps at every interior breakpoint.
//!
//! Interval indices are zero-based throughout the Rust API.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numeric tolerance used by every validation check.
pub const VALIDATION_TOL: f64 = 1e-12;

/// Strictly decreasing linear map `[0, 1] -> [0, 1]`, stored by its endpoint values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearFactor {
    at_zero: f64,
    at_one: f64,
}

impl LinearFactor {
    /// The factor `1 - alpha` used by linear contracts and mirrored posted prices.
    pub const ONE_MINUS: LinearFactor = LinearFactor {
        at_zero: 1.0,
        at_one: 0.0,
    };

    pub fn new(at_zero: f64, at_one: f64) -> Result<Self> {
        let lf = LinearFactor { at_zero, at_one };
        match lf.problem() {
            None => Ok(lf),
            Some(reason) => Err(Error::Argument(reason)),
        }
    }

    pub fn at_zero(&self) -> f64 {
        self.at_zero
    }

    pub fn at_one(&self) -> f64 {
        self.at_one
    }

    /// Describes the first broken invariant, if any.
    pub fn problem(&self) -> Option<String> {
        let (a, b) = (self.at_zero, self.at_one);
        if !a.is_finite() || !b.is_finite() {
            return Some("linear factor values must be finite".into());
        }
        if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
            return Some(format!("linear factor values ({a}, {b}) must lie in [0, 1]"));
        }
        if a <= b {
            return Some(format!(
                "linear factor must be strictly decreasing (at_zero {a} <= at_one {b})"
            ));
        }
        None
    }

    /// Evaluates the factor by interpolating between the endpoint values.
    #[inline]
    pub fn eval(&self, alpha: f64) -> f64 {
        self.at_zero * (1.0 - alpha) + self.at_one * alpha
    }

    /// Action at which the factor takes `value` (may fall outside `[0, 1]`).
    #[inline]
    pub fn inverse(&self, value: f64) -> f64 {
        (self.at_zero - value) / (self.at_zero - self.at_one)
    }

    /// Absolute slope; never larger than one.
    pub fn steepness(&self) -> f64 {
        self.at_zero - self.at_one
    }
}

/// Serialized form of a reward law.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Law {
    PointMass { value: f64 },
    Bernoulli { p: f64 },
    Discrete { values: Vec<f64>, probs: Vec<f64> },
}

impl Law {
    /// Every broken invariant of the law, as human-readable strings.
    pub fn problems(&self) -> Vec<String> {
        let in_unit = |x: f64| x.is_finite() && (0.0..=1.0).contains(&x);
        let mut out = Vec::new();
        match self {
            Law::PointMass { value } => {
                if !in_unit(*value) {
                    out.push(format!("point mass {value} outside [0, 1]"));
                }
            }
            Law::Bernoulli { p } => {
                if !in_unit(*p) {
                    out.push(format!("bernoulli parameter {p} outside [0, 1]"));
                }
            }
            Law::Discrete { values, probs } => {
                if values.is_empty() {
                    out.push("discrete law has empty support".into());
                }
                if values.len() != probs.len() {
                    out.push(format!(
                        "discrete law has {} values but {} probabilities",
                        values.len(),
                        probs.len()
                    ));
                }
                if let Some(v) = values.iter().find(|v| !in_unit(**v)) {
                    out.push(format!("support value {v} outside [0, 1]"));
                }
                if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
                    out.push(format!("negative or non-finite probability {p}"));
                }
                let total: f64 = probs.iter().sum();
                if (total - 1.0).abs() > VALIDATION_TOL {
                    out.push(format!("probabilities sum to {total}, not 1"));
                }
            }
        }
        out
    }

    fn analytic_mean(&self) -> f64 {
        match self {
            Law::PointMass { value } => *value,
            Law::Bernoulli { p } => *p,
            Law::Discrete { values, probs } => {
                values.iter().zip(probs).map(|(v, p)| v * p).sum::<f64>()
            }
        }
    }
}

/// A validated reward law on `[0, 1]` with its mean cached.
///
/// The mean is an oracle quantity: learners only ever see samples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Law", into = "Law")]
pub struct RewardDistribution {
    law: Law,
    mean: f64,
    cumulative: Vec<f64>,
}

impl RewardDistribution {
    pub fn point_mass(value: f64) -> Result<Self> {
        Self::from_law(Law::PointMass { value })
    }

    pub fn bernoulli(p: f64) -> Result<Self> {
        Self::from_law(Law::Bernoulli { p })
    }

    pub fn discrete(values: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        Self::from_law(Law::Discrete { values, probs })
    }

    pub fn from_law(law: Law) -> Result<Self> {
        Self::try_from(law).map_err(Error::Argument)
    }

    pub fn law(&self) -> &Law {
        &self.law
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// True when every draw returns the same value.
    pub fn is_degenerate(&self) -> bool {
        match &self.law {
            Law::PointMass { .. } => true,
            Law::Bernoulli { p } => *p == 0.0 || *p == 1.0,
            Law::Discrete { values, probs } => {
                let mut support = values.iter().zip(probs).filter(|(_, p)| **p > 0.0);
                match support.next() {
                    Some((first, _)) => support.all(|(v, _)| v == first),
                    None => true,
                }
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match &self.law {
            Law::PointMass { value } => *value,
            Law::Bernoulli { p } => {
                if rng.gen::<f64>() < *p {
                    1.0
                } else {
                    0.0
                }
            }
            Law::Discrete { values, .. } => {
                let u: f64 = rng.gen();
                let idx = self.cumulative.partition_point(|&c| c <= u);
                values[idx.min(values.len() - 1)]
            }
        }
    }
}

impl TryFrom<Law> for RewardDistribution {
    type Error = String;

    fn try_from(law: Law) -> std::result::Result<Self, String> {
        let problems = law.problems();
        if !problems.is_empty() {
            return Err(problems.join("; "));
        }
        let mean = law.analytic_mean().clamp(0.0, 1.0);
        let cumulative = match &law {
            Law::Discrete { probs, .. } => {
                let total: f64 = probs.iter().sum();
                let mut acc = 0.0;
                probs
                    .iter()
                    .map(|p| {
                        acc += p / total;
                        acc
                    })
                    .collect()
            }
            _ => Vec::new(),
        };
        Ok(RewardDistribution {
            law,
            mean,
            cumulative,
        })
    }
}

impl From<RewardDistribution> for Law {
    fn from(d: RewardDistribution) -> Law {
        d.law
    }
}

/// One broken instance invariant.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    TooFewBreakpoints(usize),
    NonFiniteBreakpoint(usize),
    FirstBreakpointNotZero(f64),
    LastBreakpointNotOne(f64),
    BreakpointsNotIncreasing { index: usize, left: f64, right: f64 },
    DistributionCount { intervals: usize, distributions: usize },
    Distribution { index: usize, reason: String },
    MeansNotIncreasing { index: usize, left: f64, right: f64 },
    LinearFactor(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewBreakpoints(k) => {
                write!(f, "need at least 2 breakpoints, got {k}")
            }
            Violation::NonFiniteBreakpoint(i) => write!(f, "breakpoint {i} is not finite"),
            Violation::FirstBreakpointNotZero(b) => {
                write!(f, "first breakpoint must be 0 (got {b})")
            }
            Violation::LastBreakpointNotOne(b) => {
                write!(f, "last breakpoint must be 1 (got {b})")
            }
            Violation::BreakpointsNotIncreasing { index, left, right } => write!(
                f,
                "breakpoints not strictly increasing at position {index} ({left} >= {right})"
            ),
            Violation::DistributionCount {
                intervals,
                distributions,
            } => write!(
                f,
                "{intervals} intervals but {distributions} distributions"
            ),
            Violation::Distribution { index, reason } => {
                write!(f, "distribution {index}: {reason}")
            }
            Violation::MeansNotIncreasing { index, left, right } => write!(
                f,
                "means not strictly increasing between intervals {index} and {} ({left} >= {right})",
                index + 1
            ),
            Violation::LinearFactor(reason) => f.write_str(reason),
        }
    }
}

/// Unvalidated instance, exactly as stored in instance JSON files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub id: String,
    pub breakpoints: Vec<f64>,
    pub distributions: Vec<Law>,
    pub linear_factor: LinearFactor,
}

impl InstanceSpec {
    /// Reports every violated instance invariant; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let b = &self.breakpoints;
        if b.len() < 2 {
            out.push(Violation::TooFewBreakpoints(b.len()));
        }
        for (i, x) in b.iter().enumerate() {
            if !x.is_finite() {
                out.push(Violation::NonFiniteBreakpoint(i));
            }
        }
        if let Some(&first) = b.first() {
            if first.abs() > VALIDATION_TOL {
                out.push(Violation::FirstBreakpointNotZero(first));
            }
        }
        if let Some(&last) = b.last() {
            if b.len() >= 2 && (last - 1.0).abs() > VALIDATION_TOL {
                out.push(Violation::LastBreakpointNotOne(last));
            }
        }
        for (i, w) in b.windows(2).enumerate() {
            if !(w[0] < w[1]) {
                out.push(Violation::BreakpointsNotIncreasing {
                    index: i,
                    left: w[0],
                    right: w[1],
                });
            }
        }
        let intervals = b.len().saturating_sub(1);
        if intervals != self.distributions.len() {
            out.push(Violation::DistributionCount {
                intervals,
                distributions: self.distributions.len(),
            });
        }
        let mut means = Vec::with_capacity(self.distributions.len());
        for (i, law) in self.distributions.iter().enumerate() {
            let problems = law.problems();
            if problems.is_empty() {
                means.push(Some(law.analytic_mean()));
            } else {
                means.push(None);
                out.push(Violation::Distribution {
                    index: i,
                    reason: problems.join("; "),
                });
            }
        }
        for (i, w) in means.windows(2).enumerate() {
            if let (Some(l), Some(r)) = (w[0], w[1]) {
                if !(l < r) {
                    out.push(Violation::MeansNotIncreasing {
                        index: i,
                        left: l,
                        right: r,
                    });
                }
            }
        }
        if let Some(reason) = self.linear_factor.problem() {
            out.push(Violation::LinearFactor(reason));
        }
        out
    }
}

/// Optimal value of an instance and the smallest action attaining it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Optimum {
    pub value: f64,
    pub action: f64,
    pub interval: usize,
}

/// One environment step: the action, the raw observation and the realized reward.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FeedbackSample {
    pub action: f64,
    pub observation: f64,
    pub realized_reward: f64,
}

/// A validated, immutable instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "InstanceSpec", into = "InstanceSpec")]
pub struct CanonicalInstance {
    id: String,
    breakpoints: Vec<f64>,
    distributions: Vec<RewardDistribution>,
    linear_factor: LinearFactor,
}

impl TryFrom<InstanceSpec> for CanonicalInstance {
    type Error = Error;

    fn try_from(mut spec: InstanceSpec) -> Result<Self> {
        let violations = spec.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidInstance(violations));
        }
        // Endpoints within tolerance are snapped so lookups at 0 and 1 are exact.
        let last = spec.breakpoints.len() - 1;
        spec.breakpoints[0] = 0.0;
        spec.breakpoints[last] = 1.0;
        let distributions = spec
            .distributions
            .into_iter()
            .map(RewardDistribution::from_law)
            .collect::<Result<Vec<_>>>()?;
        Ok(CanonicalInstance {
            id: spec.id,
            breakpoints: spec.breakpoints,
            distributions,
            linear_factor: spec.linear_factor,
        })
    }
}

impl From<CanonicalInstance> for InstanceSpec {
    fn from(inst: CanonicalInstance) -> InstanceSpec {
        InstanceSpec {
            id: inst.id,
            breakpoints: inst.breakpoints,
            distributions: inst.distributions.into_iter().map(Law::from).collect(),
            linear_factor: inst.linear_factor,
        }
    }
}

impl CanonicalInstance {
    pub fn new(
        id: impl Into<String>,
        breakpoints: Vec<f64>,
        distributions: Vec<RewardDistribution>,
        linear_factor: LinearFactor,
    ) -> Result<Self> {
        InstanceSpec {
            id: id.into(),
            breakpoints,
            distributions: distributions.into_iter().map(Law::from).collect(),
            linear_factor,
        }
        .try_into()
    }

    /// Parses and validates an instance from JSON text.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: InstanceSpec = serde_json::from_str(text)?;
        spec.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&InstanceSpec::from(self.clone()))
            .expect("instance serialization is infallible")
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json() + "\n").map_err(|e| Error::io(path, e))
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    /// Number of intervals.
    pub fn n(&self) -> usize {
        self.distributions.len()
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn distributions(&self) -> &[RewardDistribution] {
        &self.distributions
    }

    pub fn linear_factor(&self) -> LinearFactor {
        self.linear_factor
    }

    pub fn mean(&self, interval: usize) -> f64 {
        self.distributions[interval].mean()
    }

    pub fn means(&self) -> Vec<f64> {
        self.distributions.iter().map(|d| d.mean()).collect()
    }

    /// Smallest gap between consecutive means; `None` for a single interval.
    pub fn min_gap(&self) -> Option<f64> {
        self.means()
            .windows(2)
            .map(|w| w[1] - w[0])
            .min_by(f64::total_cmp)
    }

    /// True when every interval's law is a point mass (or otherwise constant).
    pub fn is_deterministic(&self) -> bool {
        self.distributions.iter().all(|d| d.is_degenerate())
    }

    fn check_action(alpha: f64) -> Result<()> {
        if alpha.is_finite() && (0.0..=1.0).contains(&alpha) {
            Ok(())
        } else {
            Err(Error::Domain(alpha))
        }
    }

    /// Zero-based index of the interval containing `alpha`.
    pub fn interval_index(&self, alpha: f64) -> Result<usize> {
        Self::check_action(alpha)?;
        Ok(self.index_unchecked(alpha))
    }

    #[inline]
    pub(crate) fn index_unchecked(&self, alpha: f64) -> usize {
        let n = self.n();
        // breakpoints[0] == 0 <= alpha, so the count is at least one.
        self.breakpoints[..n].partition_point(|&b| b <= alpha) - 1
    }

    /// Expected utility `l(alpha) * mu_{h(alpha)}`.
    pub fn expected_utility(&self, alpha: f64) -> Result<f64> {
        Self::check_action(alpha)?;
        Ok(self.utility_unchecked(alpha))
    }

    #[inline]
    pub(crate) fn utility_unchecked(&self, alpha: f64) -> f64 {
        self.linear_factor.eval(alpha) * self.distributions[self.index_unchecked(alpha)].mean()
    }

    /// Exact optimum. Within each interval the utility decreases, so only
    /// left endpoints are candidates; ties go to the smallest breakpoint.
    pub fn optimum(&self) -> Optimum {
        let mut best = Optimum {
            value: f64::NEG_INFINITY,
            action: 0.0,
            interval: 0,
        };
        for (i, d) in self.distributions.iter().enumerate() {
            let a = self.breakpoints[i];
            let v = self.linear_factor.eval(a) * d.mean();
            if v > best.value {
                best = Optimum {
                    value: v,
                    action: a,
                    interval: i,
                };
            }
        }
        best
    }

    /// Draws one observation for `alpha` from the interval's law.
    pub fn sample_feedback<R: Rng + ?Sized>(&self, alpha: f64, rng: &mut R) -> Result<FeedbackSample> {
        Self::check_action(alpha)?;
        let x = self.distributions[self.index_unchecked(alpha)].sample(rng);
        Ok(FeedbackSample {
            action: alpha,
            observation: x,
            realized_reward: self.linear_factor.eval(alpha) * x,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn three_interval() -> CanonicalInstance {
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

    fn spec(breakpoints: Vec<f64>, means: &[f64]) -> InstanceSpec {
        InstanceSpec {
            id: "t".into(),
            breakpoints,
            distributions: means.iter().map(|&m| Law::Bernoulli { p: m }).collect(),
            linear_factor: LinearFactor::ONE_MINUS,
        }
    }

    #[test]
    fn validate_accepts_well_formed() {
        assert!(spec(vec![0.0, 0.3, 1.0], &[0.2, 0.9]).validate().is_empty());
    }

    #[test]
    fn validate_reports_equal_means() {
        let v = spec(vec![0.0, 0.3, 1.0], &[0.5, 0.5]).validate();
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().starts_with("means not strictly increasing"));
    }

    #[test]
    fn validate_reports_bad_last_breakpoint() {
        let v = spec(vec![0.0, 0.5, 0.9], &[0.2, 0.9]).validate();
        assert!(v.iter().any(|x| x.to_string().starts_with("last breakpoint must be 1")));
    }

    #[test]
    fn validate_reports_every_violation() {
        let mut s = spec(vec![0.1, 0.5, 0.4], &[0.9, 0.2, 0.3]);
        s.linear_factor = LinearFactor { at_zero: 0.2, at_one: 0.5 };
        let v = s.validate();
        assert!(v.iter().any(|x| matches!(x, Violation::FirstBreakpointNotZero(_))));
        assert!(v.iter().any(|x| matches!(x, Violation::LastBreakpointNotOne(_))));
        assert!(v.iter().any(|x| matches!(x, Violation::BreakpointsNotIncreasing { .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::DistributionCount { .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::MeansNotIncreasing { .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::LinearFactor(_))));
    }

    #[test]
    fn interval_index_conventions() {
        let inst = three_interval();
        assert_eq!(inst.interval_index(0.0).unwrap() + 1, 1);
        assert_eq!(inst.interval_index(0.3).unwrap() + 1, 2);
        assert_eq!(inst.interval_index(0.7 - 1e-12).unwrap() + 1, 2);
        assert_eq!(inst.interval_index(1.0).unwrap() + 1, 3);
        assert!(matches!(inst.interval_index(1.5), Err(Error::Domain(_))));
        assert!(matches!(inst.interval_index(-0.1), Err(Error::Domain(_))));
        assert!(inst.interval_index(f64::NAN).is_err());
    }

    #[test]
    fn expected_utility_examples() {
        let inst = three_interval();
        assert!((inst.expected_utility(0.5).unwrap() - 0.25).abs() < 1e-15);
        assert!((inst.expected_utility(0.0).unwrap() - 0.2).abs() < 1e-15);
        assert!((inst.expected_utility(0.7).unwrap() - 0.27).abs() < 1e-15);
    }

    #[test]
    fn optimum_examples() {
        let opt = three_interval().optimum();
        assert!((opt.value - 0.35).abs() < 1e-15);
        assert_eq!(opt.action, 0.3);

        let single = CanonicalInstance::new(
            "one",
            vec![0.0, 1.0],
            vec![RewardDistribution::bernoulli(0.8).unwrap()],
            LinearFactor::ONE_MINUS,
        )
        .unwrap();
        let opt = single.optimum();
        assert_eq!((opt.value, opt.action), (0.8, 0.0));
    }

    #[test]
    fn point_mass_feedback_is_constant() {
        let inst = three_interval();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let s = inst.sample_feedback(0.8, &mut rng).unwrap();
            assert_eq!(s.observation, 0.9);
            assert_eq!(s.realized_reward, inst.linear_factor().eval(0.8) * 0.9);
        }
    }

    #[test]
    fn bernoulli_empirical_mean() {
        let d = RewardDistribution::bernoulli(0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let draws = 1_000_000;
        let total: f64 = (0..draws).map(|_| d.sample(&mut rng)).sum();
        assert!((total / draws as f64 - 0.5).abs() < 0.002);
    }

    #[test]
    fn discrete_sampling_matches_mean() {
        let d = RewardDistribution::discrete(vec![0.0, 0.25, 1.0], vec![0.5, 0.3, 0.2]).unwrap();
        assert!((d.mean() - 0.275).abs() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let draws = 400_000;
        let total: f64 = (0..draws).map(|_| d.sample(&mut rng)).sum();
        assert!((total / draws as f64 - 0.275).abs() < 0.004);
    }

    #[test]
    fn same_seed_same_samples() {
        let inst = CanonicalInstance::new(
            "b",
            vec![0.0, 0.5, 1.0],
            vec![
                RewardDistribution::bernoulli(0.3).unwrap(),
                RewardDistribution::bernoulli(0.6).unwrap(),
            ],
            LinearFactor::ONE_MINUS,
        )
        .unwrap();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..1000)
                .map(|i| inst.sample_feedback(i as f64 / 1000.0, &mut rng).unwrap().observation)
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(9), draw(9));
        assert_ne!(draw(9), draw(10));
    }

    #[test]
    fn discrete_law_rejects_bad_probabilities() {
        assert!(RewardDistribution::discrete(vec![0.1, 0.2], vec![0.5, 0.6]).is_err());
        assert!(RewardDistribution::discrete(vec![0.1, 1.2], vec![0.5, 0.5]).is_err());
        assert!(RewardDistribution::discrete(vec![0.1], vec![0.5, 0.5]).is_err());
        assert!(RewardDistribution::bernoulli(-0.1).is_err());
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let inst = three_interval();
        let back = CanonicalInstance::from_json(&inst.to_json()).unwrap();
        assert_eq!(inst, back);

        let bad = r#"{"id":"x","breakpoints":[0,0.5,0.9],
            "distributions":[{"kind":"point_mass","value":0.5},{"kind":"bernoulli","p":0.5}],
            "linear_factor":{"at_zero":1,"at_one":0}}"#;
        match CanonicalInstance::from_json(bad) {
            Err(Error::InvalidInstance(v)) => assert_eq!(v.len(), 2),
            other => panic!("expected violations, got {other:?}"),
        }
    }

    #[test]
    fn linear_factor_inverse() {
        let lf = LinearFactor::new(0.9, 0.2).unwrap();
        for a in [0.0, 0.25, 0.5, 1.0] {
            assert!((lf.inverse(lf.eval(a)) - a).abs() < 1e-15);
        }
        assert!(LinearFactor::new(0.5, 0.5).is_err());
        assert!(LinearFactor::new(1.2, 0.5).is_err());
    }
}
