use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use super::config::OutputFormat;
use super::HarnessError;
use crate::stats::RunStats;

/// Format-neutral campaign result.
///
/// `empirical` is the headline statistic; `breakdown` carries any further
/// named statistics (per-direction splits, the other protocols in a
/// comparison).
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub protocol: String,
    pub config: Vec<(String, Value)>,
    pub analytic: Vec<(String, f64)>,
    pub empirical: RunStats,
    pub empirical_name: String,
    pub breakdown: Vec<(String, RunStats)>,
}

fn stats_json(s: &RunStats) -> Value {
    json!({
        "n": s.n,
        "mean": s.mean,
        "variance": s.variance,
        "std_error": s.std_error,
        "ci95": [s.ci95.0, s.ci95.1],
    })
}

fn stats_rows(s: &RunStats) -> [(&'static str, String); 6] {
    [
        ("n", s.n.to_string()),
        ("mean", s.mean.to_string()),
        ("variance", s.variance.to_string()),
        ("std_error", s.std_error.to_string()),
        ("ci95_low", s.ci95.0.to_string()),
        ("ci95_high", s.ci95.1.to_string()),
    ]
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Report {
    pub fn to_json(&self) -> Value {
        let config: Map<String, Value> = self.config.iter().cloned().collect();
        let analytic: Map<String, Value> = self
            .analytic
            .iter()
            .map(|(k, v)| (k.clone(), json!(v)))
            .collect();
        let mut out = json!({
            "protocol": self.protocol,
            "config": config,
            "analytic": analytic,
            "empirical": stats_json(&self.empirical),
        });
        if !self.breakdown.is_empty() {
            let breakdown: Map<String, Value> = self
                .breakdown
                .iter()
                .map(|(k, s)| (k.clone(), stats_json(s)))
                .collect();
            out["breakdown"] = Value::Object(breakdown);
        }
        out
    }

    /// One `section,name,statistic,value` row per reported number.
    pub fn to_csv(&self) -> Result<String, HarnessError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(vec![]);
        let mut row = |section: &str, name: &str, stat: &str, value: &str| {
            w.write_record([section, name, stat, value])
                .map_err(|e| HarnessError::Output(e.to_string()))
        };
        row("section", "name", "statistic", "value")?;
        row("meta", "protocol", "value", &self.protocol)?;
        for (k, v) in &self.config {
            row("config", k, "value", &value_text(v))?;
        }
        for (k, v) in &self.analytic {
            row("analytic", k, "value", &v.to_string())?;
        }
        for (stat, v) in stats_rows(&self.empirical) {
            row("empirical", &self.empirical_name, stat, &v)?;
        }
        for (name, s) in &self.breakdown {
            for (stat, v) in stats_rows(s) {
                row("breakdown", name, stat, &v)?;
            }
        }
        let bytes = w
            .into_inner()
            .map_err(|e| HarnessError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| HarnessError::Output(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "protocol: {}", self.protocol);
        let cfg: Vec<String> = self
            .config
            .iter()
            .map(|(k, v)| format!("{k}={}", value_text(v)))
            .collect();
        let _ = writeln!(out, "config:   {}", cfg.join(" "));
        let _ = writeln!(out, "analytic:");
        for (k, v) in &self.analytic {
            let _ = writeln!(out, "  {k:<28} {v}");
        }
        let _ = writeln!(out, "empirical:");
        let mut line = |name: &str, s: &RunStats| {
            let _ = writeln!(
                out,
                "  {name:<28} mean={:.6} se={:.6} ci95=[{:.6}, {:.6}] n={}",
                s.mean, s.std_error, s.ci95.0, s.ci95.1, s.n
            );
        };
        line(&self.empirical_name, &self.empirical);
        for (name, s) in &self.breakdown {
            line(name, s);
        }
        out
    }

    pub fn render(&self, format: OutputFormat) -> Result<String, HarnessError> {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(&self.to_json())
                .map(|s| s + "\n")
                .map_err(|e| HarnessError::Output(e.to_string())),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Text => Ok(self.to_text()),
        }
    }
}
