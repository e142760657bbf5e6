//! Epidemic threshold of the residual network as nodes are immunized.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{self, domain};
use crate::seeding::{select_seeds_with, Strategy, StrategyConfig};
use crate::stats::{float_or_inf, Summary, Z95};

use super::ceil_count;
use super::spectral::epidemic_threshold;

/// Largest immunized fraction accepted by [`immunization_curve`].
pub const MAX_FRACTION: f64 = 0.99;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub strategy: Strategy,
    pub fraction: f64,
    /// Nodes removed per replicate, `ceil(fraction * N)`.
    pub removed: usize,
    /// Mean and 95% interval of `tau` over replicates.
    pub tau: Summary,
    /// Per-replicate thresholds; infinite when the residual has no edges.
    #[serde(with = "tau_vec")]
    pub taus: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdCurve {
    pub fractions: Vec<f64>,
    pub strategies: Vec<Strategy>,
    pub replicates: usize,
    pub rng_seed: u64,
    /// Strategy-major, then fraction order.
    pub points: Vec<CurvePoint>,
}

impl ThresholdCurve {
    pub fn point(&self, strategy: Strategy, fraction: f64) -> Option<&CurvePoint> {
        self.points.iter().find(|p| p.strategy == strategy && p.fraction == fraction)
    }
}

mod tau_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Tau(#[serde(with = "super::float_or_inf")] f64);

    pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|&x| Tau(x)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        Ok(Vec::<Tau>::deserialize(d)?.into_iter().map(|t| t.0).collect())
    }
}

/// For every strategy, fraction and replicate: selects `ceil(fraction * N)`
/// nodes, removes them and records `tau` of what remains.
///
/// Replicate `r` at fraction index `i` draws its selection from the stream
/// `(rng_seed, [CURVE, strategy tag, i, r])`. The global strategy uses the
/// default inclusion probability.
pub fn immunization_curve(
    g: &Graph,
    strategies: &[Strategy],
    fractions: &[f64],
    replicates: usize,
    rng_seed: u64,
) -> Result<ThresholdCurve> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if replicates == 0 {
        return Err(Error::InvalidParameter("replicates must be at least 1".into()));
    }
    if strategies.is_empty() || fractions.is_empty() {
        return Err(Error::InvalidParameter("need at least one strategy and one fraction".into()));
    }
    for &f in fractions {
        if !(0.0..=MAX_FRACTION).contains(&f) {
            return Err(Error::InvalidParameter(format!("immunized fraction {f} outside [0, {MAX_FRACTION}]")));
        }
    }

    let jobs: Vec<(usize, usize, usize)> = (0..strategies.len())
        .flat_map(|s| (0..fractions.len()).flat_map(move |f| (0..replicates).map(move |r| (s, f, r))))
        .collect();
    let taus: Vec<f64> = jobs
        .par_iter()
        .map(|&(si, fi, r)| {
            let strategy = strategies[si];
            let k = ceil_count(fractions[fi], n);
            if k == 0 {
                return epidemic_threshold(g);
            }
            let mut stream = rng::stream(rng_seed, &[domain::CURVE, strategy.tag(), fi as u64, r as u64]);
            let cfg = StrategyConfig::new(strategy, k, rng_seed);
            let seeds = select_seeds_with(g, &cfg, &mut stream)?;
            epidemic_threshold(&g.remove_nodes(&seeds.seeds)?)
        })
        .collect::<Result<_>>()?;

    let points = taus
        .chunks(replicates)
        .enumerate()
        .map(|(chunk, taus)| {
            let (si, fi) = (chunk / fractions.len(), chunk % fractions.len());
            CurvePoint {
                strategy: strategies[si],
                fraction: fractions[fi],
                removed: ceil_count(fractions[fi], n),
                tau: Summary::from_values(taus, Z95),
                taus: taus.to_vec(),
            }
        })
        .collect();
    Ok(ThresholdCurve { fractions: fractions.to_vec(), strategies: strategies.to_vec(), replicates, rng_seed, points })
}
