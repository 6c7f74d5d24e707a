use std::path::Path;

use super::{AggregateResult, ExponentRow, RawRecord, RunTrace};
use crate::error::{Error, Result};

/// Scientific notation with 17 significant digits; round-trips every f64.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn writer(path: &Path) -> Result<csv::Writer<std::fs::File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    csv::Writer::from_path(path).map_err(Error::from)
}

pub fn write_raw_csv(path: impl AsRef<Path>, records: &[RawRecord]) -> Result<()> {
    let mut w = writer(path.as_ref())?;
    w.write_record([
        "algorithm",
        "instance_id",
        "n",
        "T",
        "rep",
        "seed",
        "final_pseudo_regret",
        "rounds_used",
    ])?;
    for r in records {
        w.write_record([
            r.algorithm.clone(),
            r.instance_id.clone(),
            r.n.to_string(),
            r.horizon.to_string(),
            r.rep.to_string(),
            r.seed.to_string(),
            format_float(r.final_pseudo_regret),
            r.rounds_used.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io(path.as_ref(), e))
}

pub fn read_raw_csv(path: impl AsRef<Path>) -> Result<Vec<RawRecord>> {
    let mut r = csv::Reader::from_path(path.as_ref())?;
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

pub fn write_aggregate_csv(path: impl AsRef<Path>, rows: &[AggregateResult]) -> Result<()> {
    let mut w = writer(path.as_ref())?;
    aggregate_rows(&mut w, rows)?;
    w.flush().map_err(|e| Error::io(path.as_ref(), e))
}

/// The aggregate CSV as a string.
pub fn aggregate_csv_string(rows: &[AggregateResult]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    aggregate_rows(&mut w, rows)?;
    let bytes = w.into_inner().map_err(|e| Error::Argument(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn aggregate_rows<W: std::io::Write>(w: &mut csv::Writer<W>, rows: &[AggregateResult]) -> Result<()> {
    w.write_record([
        "algorithm",
        "instance_id",
        "n",
        "T",
        "reps",
        "mean_regret",
        "std",
        "ci95",
    ])?;
    for a in rows {
        w.write_record([
            a.algorithm.clone(),
            a.instance_id.clone(),
            a.n.to_string(),
            a.horizon.to_string(),
            a.reps.to_string(),
            format_float(a.mean_regret),
            format_float(a.std),
            format_float(a.ci95),
        ])?;
    }
    Ok(())
}

/// Columns: algorithm, instance_id, horizons, exponent, note. `exponent`
/// is empty and `note` holds the reason when no fit was possible.
pub fn write_exponent_csv(path: impl AsRef<Path>, rows: &[ExponentRow]) -> Result<()> {
    let mut w = writer(path.as_ref())?;
    w.write_record(["algorithm", "instance_id", "horizons", "exponent", "note"])?;
    for row in rows {
        let (exponent, note) = match &row.exponent {
            Ok(s) => (format_float(*s), String::new()),
            Err(e) => (String::new(), e.clone()),
        };
        w.write_record([
            row.algorithm.clone(),
            row.instance_id.clone(),
            row.horizons.to_string(),
            exponent,
            note,
        ])?;
    }
    w.flush().map_err(|e| Error::io(path.as_ref(), e))
}

/// Per-round CSV: t, action, observation, expected_utility, cum_regret.
pub fn write_trace_csv(path: impl AsRef<Path>, trace: &RunTrace, opt: f64) -> Result<()> {
    if !trace.is_recorded() {
        return Err(Error::Argument("trace has no per-round record".into()));
    }
    let mut w = writer(path.as_ref())?;
    w.write_record(["t", "action", "observation", "expected_utility", "cum_regret"])?;
    let mut regret = 0.0;
    for r in &trace.rounds {
        regret += opt - r.expected_utility;
        w.write_record([
            r.t.to_string(),
            format_float(r.action),
            format_float(r.observation),
            format_float(r.expected_utility),
            format_float(regret),
        ])?;
    }
    w.flush().map_err(|e| Error::io(path.as_ref(), e))
}
