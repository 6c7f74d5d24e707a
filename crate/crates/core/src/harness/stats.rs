use serde::Serialize;

use super::RawRecord;
use crate::error::{Error, Result};

/// Summary of the replications of one (algorithm, instance, T) cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AggregateResult {
    pub algorithm: String,
    pub instance_id: String,
    pub n: usize,
    pub horizon: u64,
    pub reps: usize,
    pub mean_regret: f64,
    /// Sample standard deviation (0 for a single replication).
    pub std: f64,
    /// Half-width of the normal 95% interval, `1.96 * std / sqrt(reps)`.
    pub ci95: f64,
}

/// Groups raw records by cell, keeping cells in order of first appearance
/// and replications in record order.
pub fn aggregate(records: &[RawRecord]) -> Vec<AggregateResult> {
    let mut cells: Vec<(AggregateResult, Vec<f64>)> = Vec::new();
    for r in records {
        let pos = cells.iter().position(|(a, _)| {
            a.algorithm == r.algorithm && a.instance_id == r.instance_id && a.horizon == r.horizon
        });
        let values = match pos {
            Some(i) => &mut cells[i].1,
            None => {
                cells.push((
                    AggregateResult {
                        algorithm: r.algorithm.clone(),
                        instance_id: r.instance_id.clone(),
                        n: r.n,
                        horizon: r.horizon,
                        reps: 0,
                        mean_regret: 0.0,
                        std: 0.0,
                        ci95: 0.0,
                    },
                    Vec::new(),
                ));
                &mut cells.last_mut().unwrap().1
            }
        };
        values.push(r.final_pseudo_regret);
    }

    cells
        .into_iter()
        .map(|(mut a, values)| {
            let reps = values.len();
            let mean = values.iter().sum::<f64>() / reps as f64;
            let std = if reps > 1 {
                let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
                (ss / (reps - 1) as f64).sqrt()
            } else {
                0.0
            };
            a.reps = reps;
            a.mean_regret = mean;
            a.std = std;
            a.ci95 = 1.96 * std / (reps as f64).sqrt();
            a
        })
        .collect()
}

/// Least-squares slope of `ln(regret)` against `ln(T)`.
pub fn fit_regret_exponent(points: &[(u64, f64)]) -> Result<f64> {
    if points.len() < 3 {
        return Err(Error::Fit(format!(
            "need at least 3 horizons, got {}",
            points.len()
        )));
    }
    if let Some(&(t, r)) = points.iter().find(|(_, r)| !(*r > 0.0)) {
        return Err(Error::Fit(format!(
            "mean regret {r} at T={t} is not positive"
        )));
    }
    let xs: Vec<f64> = points.iter().map(|&(t, _)| (t as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, r)| r.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("all horizons are equal".into()));
    }
    Ok(sxy / sxx)
}

/// Fitted exponent per (algorithm, instance), or the reason no fit exists.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentRow {
    pub algorithm: String,
    pub instance_id: String,
    pub horizons: usize,
    pub exponent: std::result::Result<f64, String>,
}

pub fn exponent_table(aggregates: &[AggregateResult]) -> Vec<ExponentRow> {
    let mut rows: Vec<(String, String, Vec<(u64, f64)>)> = Vec::new();
    for a in aggregates {
        match rows
            .iter_mut()
            .find(|(alg, id, _)| *alg == a.algorithm && *id == a.instance_id)
        {
            Some(row) => row.2.push((a.horizon, a.mean_regret)),
            None => rows.push((
                a.algorithm.clone(),
                a.instance_id.clone(),
                vec![(a.horizon, a.mean_regret)],
            )),
        }
    }
    rows.into_iter()
        .map(|(algorithm, instance_id, points)| ExponentRow {
            algorithm,
            instance_id,
            horizons: points.len(),
            exponent: fit_regret_exponent(&points).map_err(|e| e.to_string()),
        })
        .collect()
}
