//! Text surface: parsing, canonical printing, and report serialization.

mod files;
mod parse;
mod print;

pub use files::{parse_ideal, parse_log_data, parse_rational_pair, TextError};
pub use parse::{parse_one_form, parse_polynomial, ParseError};
pub use print::print_canonical;

use serde::Serialize;

use crate::catalog::{ClaimRecord, ClaimStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Serialize)]
struct Row<'a> {
    id: &'a str,
    status: ClaimStatus,
    description: &'a str,
    witness: Option<&'a str>,
    elapsed_ms: Option<f64>,
}

fn millis(r: &ClaimRecord) -> f64 {
    (r.elapsed.as_secs_f64() * 1e6).round() / 1e3
}

/// Serialize records in order. Timings are left out unless `timings` is set, so output is
/// byte-identical across runs.
pub fn serialize_report(records: &[ClaimRecord], format: ReportFormat, timings: bool) -> String {
    match format {
        ReportFormat::Json => {
            if records.is_empty() {
                return "[]\n".into();
            }
            let mut out = String::from("[\n");
            for (k, r) in records.iter().enumerate() {
                let row = Row {
                    id: &r.id,
                    status: r.status,
                    description: &r.description,
                    witness: r.witness.as_deref(),
                    elapsed_ms: timings.then(|| millis(r)),
                };
                out.push_str("  ");
                out.push_str(&serde_json::to_string(&row).expect("plain data serializes"));
                out.push_str(if k + 1 < records.len() { ",\n" } else { "\n" });
            }
            out.push_str("]\n");
            out
        }
        ReportFormat::Text => {
            let id_w = records.iter().map(|r| r.id.len()).max().unwrap_or(0).max(2);
            let st_w = 12;
            let mut out = format!("{:<st_w$}  {:<id_w$}  DESCRIPTION\n", "STATUS", "ID");
            for r in records {
                out.push_str(&format!("{:<st_w$}  {:<id_w$}  {}", r.status.to_string(), r.id, r.description));
                if timings {
                    out.push_str(&format!(" [{:.3} ms]", millis(r)));
                }
                out.push('\n');
                if let Some(w) = &r.witness {
                    out.push_str(&format!("{:<st_w$}  {:<id_w$}    witness: {w}\n", "", ""));
                }
            }
            out
        }
    }
}
