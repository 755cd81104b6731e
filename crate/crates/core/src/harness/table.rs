use std::fmt::Write as _;

use serde::Serialize;

use super::config::OutputFormat;
use super::HarnessError;
use crate::hyperdense::{enumerate_scenarios, SlotOutcome};

pub const CSV_HEADER: [&str; 9] = [
    "l",
    "a1",
    "b1",
    "c",
    "alice_sends",
    "bob_sends",
    "channel",
    "delivered",
    "k",
];

/// One scenario row, with send and delivery columns given symbolically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub l: u8,
    pub a1: u8,
    pub b1: u8,
    /// Joint measurement result `C_A C_B`, `"00"` or `"11"`.
    pub c: String,
    pub alice_sends: String,
    pub bob_sends: String,
    pub channel: String,
    pub delivered: String,
    pub k: u8,
}

impl From<&SlotOutcome> for TableRow {
    fn from(s: &SlotOutcome) -> Self {
        let sends =
            |sent: Option<bool>, label: &str| if sent.is_some() { label } else { "-" }.to_string();
        let delivered: Vec<String> = s.delivered().iter().map(|b| b.label.to_string()).collect();
        TableRow {
            l: s.scenario_index.unwrap_or(0),
            a1: s.alice.first as u8,
            b1: s.bob.first as u8,
            c: if s.c.c { "11" } else { "00" }.to_string(),
            alice_sends: sends(s.a_sent, "A2"),
            bob_sends: sends(s.b_sent, "B2"),
            channel: s.channel.to_string(),
            delivered: delivered.join(","),
            k: s.k,
        }
    }
}

pub fn table_rows() -> Vec<TableRow> {
    enumerate_scenarios().iter().map(TableRow::from).collect()
}

/// Serializes the eight-row scenario table.
pub fn enumerate_table(format: OutputFormat) -> Result<String, HarnessError> {
    let rows = table_rows();
    let err = |e: &dyn std::fmt::Display| HarnessError::Output(e.to_string());
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(&rows)
            .map(|s| s + "\n")
            .map_err(|e| err(&e)),
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(vec![]);
            w.write_record(CSV_HEADER).map_err(|e| err(&e))?;
            for r in &rows {
                w.serialize(r).map_err(|e| err(&e))?;
            }
            let bytes = w.into_inner().map_err(|e| err(&e))?;
            String::from_utf8(bytes).map_err(|e| err(&e))
        }
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:>2}  {:>2}  {:>2}  {:>5}  {:>11}  {:>9}  {:<9}  {:<9}  {:>1}",
                "l", "A1", "B1", "CA CB", "Alice sends", "Bob sends", "channel", "delivered", "K"
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:>2}  {:>2}  {:>2}  {:>5}  {:>11}  {:>9}  {:<9}  {:<9}  {:>1}",
                    r.l, r.a1, r.b1, r.c, r.alice_sends, r.bob_sends, r.channel, r.delivered, r.k
                );
            }
            let total: u32 = rows.iter().map(|r| u32::from(r.k)).sum();
            let _ = writeln!(
                out,
                "sum K = {total}, E[K] = {total}/{} = {}",
                rows.len(),
                f64::from(total) / rows.len() as f64
            );
            Ok(out)
        }
    }
}
