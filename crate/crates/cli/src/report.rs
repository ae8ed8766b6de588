use std::io::Write;

use macroscope_core::{AllotmentStructure, TargetFunction};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

/// One (scenario, input) run. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub scenario_id: String,
    pub function: String,
    pub n: usize,
    pub k: usize,
    pub d_or_epsilon: Option<f64>,
    pub blindness: String,
    pub structure_hash: String,
    pub r: usize,
    pub input_id: u64,
    pub cost_bits: usize,
    pub bound_bits: usize,
    pub correct: bool,
    pub max_abs_error: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format `{other}`, expected csv or json")),
        }
    }
}

/// First 16 hex digits of SHA-256 over `N` and the 1-based sets in player
/// order, each set ascending: `"4|1,2|2,3|4"`.
pub fn structure_hash(structure: &AllotmentStructure) -> String {
    let mut text = structure.n().to_string();
    for set in structure.to_one_based() {
        text.push('|');
        let items: Vec<String> = set.iter().map(ToString::to_string).collect();
        text.push_str(&items.join(","));
    }
    let digest = Sha256::digest(text.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

pub fn parameter(function: &TargetFunction) -> Option<f64> {
    match function {
        TargetFunction::Constancy { d } => Some(f64::from(*d)),
        TargetFunction::Average { epsilon } => Some(*epsilon),
        _ => None,
    }
}

pub fn sort_rows(rows: &mut [ReportRow]) {
    rows.sort_by(|a, b| {
        a.scenario_id
            .cmp(&b.scenario_id)
            .then(a.input_id.cmp(&b.input_id))
    });
}

pub fn write_rows(rows: &[ReportRow], format: Format, out: impl Write) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row)
                    .map_err(|e| CliError::Report(e.to_string()))?;
            }
            w.flush().map_err(|e| CliError::Report(e.to_string()))?;
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rows)
                .map_err(|e| CliError::Report(e.to_string()))?;
            out.write_all(b"\n")
                .map_err(|e| CliError::Report(e.to_string()))?;
        }
    }
    Ok(())
}
