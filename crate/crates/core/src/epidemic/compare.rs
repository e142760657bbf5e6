//! SIR ensembles under each immunization strategy.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{self, domain};
use crate::seeding::{select_seeds_with, Strategy, StrategyConfig};
use crate::stats::Z95;

use super::ceil_count;
use super::curve::MAX_FRACTION;
use super::sir::{immunization_mask, run_replicate, Metric, ReplicateOutcome, SirConfig, SirOutcome};

pub const HISTOGRAM_BINS: usize = 20;

/// Equal-width bins over `[low, high]`; the last bin is closed on the right.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub metric: Metric,
    pub low: f64,
    pub high: f64,
    pub counts: Vec<usize>,
}

impl Histogram {
    pub fn new(metric: Metric, values: &[f64], low: f64, high: f64, bins: usize) -> Self {
        let mut counts = vec![0; bins];
        let width = (high - low) / bins as f64;
        for &v in values {
            if !(low..=high).contains(&v) {
                continue;
            }
            let b = (((v - low) / width) as usize).min(bins - 1);
            counts[b] += 1;
        }
        Histogram { metric, low, high, counts }
    }

    /// Density per bin, integrating to one over the covered range.
    pub fn density(&self) -> Vec<f64> {
        let total: usize = self.counts.iter().sum();
        let width = (self.high - self.low) / self.counts.len() as f64;
        self.counts
            .iter()
            .map(|&c| if total == 0 { 0.0 } else { c as f64 / (total as f64 * width) })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyOutcome {
    pub strategy: Strategy,
    /// Nodes immunized in every replicate, `ceil(fraction * N)`.
    pub immunized: usize,
    pub outcome: SirOutcome,
    /// One histogram per fraction metric over `[0, 1]`.
    pub histograms: Vec<Histogram>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub config: SirConfig,
    pub immunize_fraction: f64,
    pub strategies: Vec<StrategyOutcome>,
}

impl Comparison {
    pub fn get(&self, strategy: Strategy) -> Option<&StrategyOutcome> {
        self.strategies.iter().find(|s| s.strategy == strategy)
    }
}

/// Runs `cfg.replicates` SIR replicates per strategy, each with its own
/// immunization draw.
///
/// Replicate `r` selects from `(cfg.rng_seed, [COMPARE_SELECT, strategy tag, r])`
/// and simulates from `(cfg.rng_seed, [COMPARE_SIR, r])`, so every strategy
/// sees the same epidemic randomness for a given replicate index.
pub fn compare_strategies(
    g: &Graph,
    cfg: &SirConfig,
    immunize_fraction: f64,
    strategies: &[Strategy],
) -> Result<Comparison> {
    cfg.validate()?;
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(0.0..=MAX_FRACTION).contains(&immunize_fraction) {
        return Err(Error::InvalidParameter(format!(
            "immunized fraction {immunize_fraction} outside [0, {MAX_FRACTION}]"
        )));
    }
    if strategies.is_empty() {
        return Err(Error::InvalidParameter("need at least one strategy".into()));
    }
    let k = ceil_count(immunize_fraction, n);

    let mut out = Vec::with_capacity(strategies.len());
    for &strategy in strategies {
        let replicates: Vec<ReplicateOutcome> = (0..cfg.replicates)
            .into_par_iter()
            .map(|r| {
                let immunized = if k == 0 {
                    Vec::new()
                } else {
                    let mut sel = rng::stream(cfg.rng_seed, &[domain::COMPARE_SELECT, strategy.tag(), r as u64]);
                    select_seeds_with(g, &StrategyConfig::new(strategy, k, cfg.rng_seed), &mut sel)?.seeds
                };
                let mask = immunization_mask(g, &immunized)?;
                let mut sim = rng::stream(cfg.rng_seed, &[domain::COMPARE_SIR, r as u64]);
                Ok(run_replicate(g, cfg, &mask, &mut sim, None))
            })
            .collect::<Result<_>>()?;
        let outcome = SirOutcome::from_replicates(replicates, k == n, Z95);
        let histograms = Metric::FRACTIONS
            .iter()
            .map(|&m| Histogram::new(m, &outcome.values(m), 0.0, 1.0, HISTOGRAM_BINS))
            .collect();
        out.push(StrategyOutcome { strategy, immunized: k, outcome, histograms });
    }
    Ok(Comparison { config: *cfg, immunize_fraction, strategies: out })
}
