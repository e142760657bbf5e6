//! Long-format CSV and JSON summaries for threshold curves and SIR comparisons.
//!
//! CSV columns: `strategy,fraction,replicate,metric,value`.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::seeding::Strategy;
use crate::stats::{float_or_inf, Summary};

use super::compare::{Comparison, Histogram};
use super::curve::ThresholdCurve;
use super::sir::{Metric, SirConfig};

pub const CSV_HEADER: [&str; 5] = ["strategy", "fraction", "replicate", "metric", "value"];

pub fn write_curve_csv<W: Write>(curve: &ThresholdCurve, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for p in &curve.points {
        for (r, &tau) in p.taus.iter().enumerate() {
            w.write_record([
                p.strategy.name(),
                &p.fraction.to_string(),
                &r.to_string(),
                "tau",
                &float_or_inf::to_text(tau),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_comparison_csv<W: Write>(cmp: &Comparison, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    let fraction = cmp.immunize_fraction.to_string();
    for s in &cmp.strategies {
        for (r, rep) in s.outcome.replicates.iter().enumerate() {
            for m in Metric::ALL {
                w.write_record([s.strategy.name(), &fraction, &r.to_string(), m.name(), &rep.metric(m).to_string()])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub strategy: Strategy,
    pub fraction: f64,
    pub removed: usize,
    pub tau: Summary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSummary {
    pub generator: String,
    pub rng_seed: u64,
    pub replicates: usize,
    pub fractions: Vec<f64>,
    pub strategies: Vec<Strategy>,
    pub rows: Vec<CurveRow>,
}

impl CurveSummary {
    pub fn new(curve: &ThresholdCurve, generator: &str) -> Self {
        CurveSummary {
            generator: generator.to_string(),
            rng_seed: curve.rng_seed,
            replicates: curve.replicates,
            fractions: curve.fractions.clone(),
            strategies: curve.strategies.clone(),
            rows: curve
                .points
                .iter()
                .map(|p| CurveRow { strategy: p.strategy, fraction: p.fraction, removed: p.removed, tau: p.tau })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategySummary {
    pub strategy: Strategy,
    pub immunized: usize,
    pub degenerate: bool,
    pub peak_fraction: Summary,
    pub ever_fraction: Summary,
    pub total_suffering: Summary,
    pub duration: Summary,
    pub histograms: Vec<Histogram>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonSummary {
    pub generator: String,
    pub rng_seed: u64,
    pub config: SirConfig,
    pub immunize_fraction: f64,
    pub strategies: Vec<StrategySummary>,
}

impl ComparisonSummary {
    pub fn new(cmp: &Comparison, generator: &str) -> Self {
        ComparisonSummary {
            generator: generator.to_string(),
            rng_seed: cmp.config.rng_seed,
            config: cmp.config,
            immunize_fraction: cmp.immunize_fraction,
            strategies: cmp
                .strategies
                .iter()
                .map(|s| StrategySummary {
                    strategy: s.strategy,
                    immunized: s.immunized,
                    degenerate: s.outcome.degenerate,
                    peak_fraction: s.outcome.peak_fraction,
                    ever_fraction: s.outcome.ever_fraction,
                    total_suffering: s.outcome.total_suffering,
                    duration: s.outcome.duration,
                    histograms: s.histograms.clone(),
                })
                .collect(),
        }
    }
}
