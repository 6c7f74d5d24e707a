//! Builders for canonical instances: the contract, posted-price and
//! first-price reductions, the hard lower-bound pair, and random instances.

mod bayesian;
mod contract;
mod lower_bound;
mod pricing;
mod random;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::instance::CanonicalInstance;

pub use bayesian::{bayesian_contract_to_canonical, BayesianContractProblem, BayesianReduction};
pub use contract::{
    best_response, contract_to_canonical, ContractProblem, ContractReduction, PROBLEM_TOL,
};
pub use lower_bound::{
    lower_bound_alpha, lower_bound_pair, LowerBoundPair, LowerBoundParams, LOWER_BOUND_K,
};
pub use pricing::{
    first_price_to_canonical, posted_price_to_canonical, FirstPriceProblem, PostedPriceProblem,
};
pub use random::{
    random_contract_problem, random_first_price_problem, random_instance,
    random_posted_price_problem, DistributionKind, RandomParams, RandomSpec,
};

/// Affine map from a canonical action to the model's own units:
/// `native = offset + scale * alpha`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ActionMap {
    pub unit: String,
    pub offset: f64,
    pub scale: f64,
}

impl ActionMap {
    pub fn contract_rate() -> Self {
        ActionMap {
            unit: "contract_rate".into(),
            offset: 0.0,
            scale: 1.0,
        }
    }

    pub fn price() -> Self {
        ActionMap {
            unit: "price".into(),
            offset: 1.0,
            scale: -1.0,
        }
    }

    pub fn bid(valuation: f64) -> Self {
        ActionMap {
            unit: "bid".into(),
            offset: 0.0,
            scale: valuation,
        }
    }

    pub fn to_native(&self, alpha: f64) -> f64 {
        self.offset + self.scale * alpha
    }

    pub fn from_native(&self, x: f64) -> f64 {
        (x - self.offset) / self.scale
    }
}

/// Any of the economic models, tagged by `kind` in JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ApplicationProblem {
    Contract(ContractProblem),
    BayesianContract(BayesianContractProblem),
    PostedPrice(PostedPriceProblem),
    FirstPrice(FirstPriceProblem),
}

/// A compiled application problem.
#[derive(Clone, Debug)]
pub struct Compiled {
    pub instance: CanonicalInstance,
    pub map: ActionMap,
    /// Model-specific extras for the mapping sidecar (best-response
    /// actions, type profiles).
    pub details: serde_json::Value,
}

impl Compiled {
    /// Sidecar content: the unit map, each breakpoint in native units, the
    /// optimum in both scales, plus the model-specific details.
    pub fn sidecar(&self) -> serde_json::Value {
        let opt = self.instance.optimum();
        serde_json::json!({
            "instance_id": self.instance.id(),
            "map": self.map,
            "breakpoints_native": self
                .instance
                .breakpoints()
                .iter()
                .map(|&a| self.map.to_native(a))
                .collect::<Vec<_>>(),
            "optimum": {
                "value": opt.value,
                "action": opt.action,
                "native_action": self.map.to_native(opt.action),
            },
            "details": self.details,
        })
    }
}

impl ApplicationProblem {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn compile(&self, id: &str) -> Result<Compiled> {
        Ok(match self {
            ApplicationProblem::Contract(p) => {
                let red = contract_to_canonical(p, id)?;
                Compiled {
                    details: serde_json::json!({
                        "best_response_actions": red.actions.iter().map(|a| a + 1).collect::<Vec<_>>(),
                        "expected_rewards": red.expected_rewards,
                    }),
                    instance: red.instance,
                    map: ActionMap::contract_rate(),
                }
            }
            ApplicationProblem::BayesianContract(p) => {
                let red = bayesian_contract_to_canonical(p, id)?;
                let profiles: Vec<Vec<usize>> = red
                    .profiles
                    .iter()
                    .map(|pr| pr.iter().map(|a| a + 1).collect())
                    .collect();
                Compiled {
                    details: serde_json::json!({ "best_response_profiles": profiles }),
                    instance: red.instance,
                    map: ActionMap::contract_rate(),
                }
            }
            ApplicationProblem::PostedPrice(p) => {
                let (instance, map) = posted_price_to_canonical(p, id)?;
                Compiled {
                    instance,
                    map,
                    details: serde_json::Value::Null,
                }
            }
            ApplicationProblem::FirstPrice(p) => {
                let (instance, map) = first_price_to_canonical(p, id)?;
                Compiled {
                    instance,
                    map,
                    details: serde_json::json!({ "valuation": p.valuation }),
                }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn problem_json_round_trip() {
        let text = r#"{"kind":"posted_price","valuations":[0.4,0.8],"probs":[0.5,0.5]}"#;
        let p = ApplicationProblem::from_json(text).unwrap();
        let c = p.compile("pp").unwrap();
        assert_eq!(c.instance.n(), 3);
        let side = c.sidecar();
        assert_eq!(side["map"]["unit"], "price");
    }

    #[test]
    fn maps_invert() {
        for m in [ActionMap::price(), ActionMap::bid(0.7), ActionMap::contract_rate()] {
            for a in [0.0, 0.25, 1.0] {
                assert!((m.from_native(m.to_native(a)) - a).abs() < 1e-15);
            }
        }
    }
}
