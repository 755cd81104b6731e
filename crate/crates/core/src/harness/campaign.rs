use serde_json::{json, Value};

use super::config::{CampaignConfig, Protocol};
use super::report::Report;
use super::HarnessError;
use crate::aloha::{self, AlohaParams};
use crate::hyperdense::{self, PairSource};
use crate::rng::Seeder;
use crate::stats::RunStats;
use crate::superdense;

/// Analytic value next to its Monte Carlo estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub analytic: f64,
    pub empirical: RunStats,
}

impl Estimate {
    pub fn deviation(&self) -> f64 {
        (self.empirical.mean - self.analytic).abs()
    }
}

/// Hyperdense against its two reference protocols, at `M = 2` for Aloha.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub n_slots: u64,
    pub seed: u64,
    pub hyperdense_total: Estimate,
    pub hyperdense_to_alice: Estimate,
    pub hyperdense_to_bob: Estimate,
    /// Bits per slot; empirical side is the measured bits per use.
    pub superdense_per_slot: Estimate,
    pub aloha_m2_total: Estimate,
    pub aloha_limit: f64,
}

fn seeder(seed: u64, protocol: Protocol) -> Seeder {
    Seeder::new(seed).child(protocol.name())
}

fn scale(s: RunStats, by: f64) -> RunStats {
    RunStats {
        n: s.n,
        mean: s.mean * by,
        variance: s.variance * by * by,
        std_error: s.std_error * by,
        ci95: (s.ci95.0 * by, s.ci95.1 * by),
    }
}

/// Runs all three protocols on separately derived streams of `seed`.
pub fn compare(n_slots: u64, seed: u64, workers: usize) -> Result<ComparisonReport, HarnessError> {
    let totals = hyperdense::scenario_totals();
    let hd = hyperdense::simulate(
        n_slots,
        &seeder(seed, Protocol::Hyperdense),
        PairSource::Qubit,
        workers,
    )?;
    let sd = superdense::simulate(n_slots, &seeder(seed, Protocol::Superdense), workers)?;
    let aloha_params = AlohaParams::optimal(2)?;
    let al = aloha::simulate(
        aloha_params,
        n_slots,
        &seeder(seed, Protocol::Aloha),
        workers,
    )?;
    Ok(ComparisonReport {
        n_slots,
        seed,
        hyperdense_total: Estimate {
            analytic: totals.expected_total(),
            empirical: hd.total,
        },
        hyperdense_to_alice: Estimate {
            analytic: totals.expected_to_alice(),
            empirical: hd.to_alice,
        },
        hyperdense_to_bob: Estimate {
            analytic: totals.expected_to_bob(),
            empirical: hd.to_bob,
        },
        superdense_per_slot: Estimate {
            analytic: superdense::BITS_PER_USE,
            empirical: scale(sd, superdense::BITS_PER_USE),
        },
        aloha_m2_total: Estimate {
            analytic: aloha::max_throughput(2)?,
            empirical: al,
        },
        aloha_limit: (-1.0f64).exp(),
    })
}

impl ComparisonReport {
    pub fn to_report(&self) -> Report {
        Report {
            protocol: Protocol::Compare.name().into(),
            config: vec![
                ("slots".into(), json!(self.n_slots)),
                ("seed".into(), json!(self.seed)),
            ],
            analytic: vec![
                ("hyperdense_total".into(), self.hyperdense_total.analytic),
                (
                    "hyperdense_per_direction".into(),
                    self.hyperdense_to_bob.analytic,
                ),
                (
                    "superdense_per_slot".into(),
                    self.superdense_per_slot.analytic,
                ),
                ("aloha_m2_total".into(), self.aloha_m2_total.analytic),
                ("aloha_limit".into(), self.aloha_limit),
            ],
            empirical: self.hyperdense_total.empirical,
            empirical_name: "hyperdense_total".into(),
            breakdown: vec![
                (
                    "hyperdense_to_alice".into(),
                    self.hyperdense_to_alice.empirical,
                ),
                ("hyperdense_to_bob".into(), self.hyperdense_to_bob.empirical),
                (
                    "superdense_per_slot".into(),
                    self.superdense_per_slot.empirical,
                ),
                ("aloha_m2_total".into(), self.aloha_m2_total.empirical),
            ],
        }
    }

    /// Side-by-side table of the headline numbers.
    pub fn to_text(&self) -> String {
        let row = |name: &str, e: &Estimate| {
            format!(
                "{name:<26} {:>9} {:>12.6} {:>10.6}  [{:.6}, {:.6}]\n",
                e.analytic,
                e.empirical.mean,
                e.empirical.std_error,
                e.empirical.ci95.0,
                e.empirical.ci95.1
            )
        };
        let mut out = format!("compare: slots={} seed={}\n", self.n_slots, self.seed);
        out += &format!(
            "{:<26} {:>9} {:>12} {:>10}  {}\n",
            "bits per slot", "analytic", "empirical", "std_error", "ci95"
        );
        out += &row("hyperdense (total)", &self.hyperdense_total);
        out += &row("hyperdense (Alice -> Bob)", &self.hyperdense_to_bob);
        out += &row("hyperdense (Bob -> Alice)", &self.hyperdense_to_alice);
        out += &row("superdense", &self.superdense_per_slot);
        out += &row("slotted-Aloha (M=2)", &self.aloha_m2_total);
        out += &format!(
            "{:<26} {:>9.6}\n",
            "slotted-Aloha (M -> inf)", self.aloha_limit
        );
        out
    }
}

fn base_config(cfg: &CampaignConfig) -> Vec<(String, Value)> {
    vec![
        ("slots".into(), json!(cfg.n_slots)),
        ("seed".into(), json!(cfg.seed)),
    ]
}

/// Validates `cfg`, runs it, and returns the rendered output.
///
/// The output is a pure function of `cfg` minus its worker count.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<String, HarnessError> {
    cfg.validate()?;
    let report = match cfg.protocol {
        Protocol::Aloha => {
            let params = AlohaParams::new(cfg.users(), cfg.p())?;
            let stats = aloha::simulate(
                params,
                cfg.n_slots,
                &seeder(cfg.seed, cfg.protocol),
                cfg.workers,
            )?;
            let mut config = base_config(cfg);
            config.push(("users".into(), json!(params.users())));
            config.push(("p".into(), json!(params.p())));
            Report {
                protocol: cfg.protocol.name().into(),
                config,
                analytic: vec![
                    (
                        "success_probability".into(),
                        aloha::success_probability(params),
                    ),
                    ("total_throughput".into(), aloha::total_throughput(params)),
                    ("optimal_p".into(), aloha::optimal_p(params.users())?),
                    (
                        "max_throughput".into(),
                        aloha::max_throughput(params.users())?,
                    ),
                ],
                empirical: stats,
                empirical_name: "total_throughput".into(),
                breakdown: vec![],
            }
        }
        Protocol::Superdense => {
            let stats =
                superdense::simulate(cfg.n_slots, &seeder(cfg.seed, cfg.protocol), cfg.workers)?;
            Report {
                protocol: cfg.protocol.name().into(),
                config: base_config(cfg),
                analytic: vec![
                    ("success_rate".into(), 1.0),
                    ("bits_per_slot".into(), superdense::BITS_PER_USE),
                ],
                empirical: stats,
                empirical_name: "success_rate".into(),
                breakdown: vec![(
                    "bits_per_slot".into(),
                    scale(stats, superdense::BITS_PER_USE),
                )],
            }
        }
        Protocol::Hyperdense => {
            let run = hyperdense::simulate(
                cfg.n_slots,
                &seeder(cfg.seed, cfg.protocol),
                cfg.c_source,
                cfg.workers,
            )?;
            let totals = hyperdense::scenario_totals();
            let mut config = base_config(cfg);
            config.push(("c_source".into(), json!(cfg.c_source)));
            Report {
                protocol: cfg.protocol.name().into(),
                config,
                analytic: vec![
                    ("total".into(), totals.expected_total()),
                    ("to_alice".into(), totals.expected_to_alice()),
                    ("to_bob".into(), totals.expected_to_bob()),
                    ("c_zero".into(), 0.5),
                ],
                empirical: run.total,
                empirical_name: "total".into(),
                breakdown: vec![
                    ("to_alice".into(), run.to_alice),
                    ("to_bob".into(), run.to_bob),
                    ("c_zero".into(), run.c_zero),
                ],
            }
        }
        Protocol::Compare => {
            let cmp = compare(cfg.n_slots, cfg.seed, cfg.workers)?;
            if cfg.format == super::OutputFormat::Text {
                return Ok(cmp.to_text());
            }
            cmp.to_report()
        }
    };
    report.render(cfg.format)
}
