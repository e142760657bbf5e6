//! Random, local and global seed selection.
//!
//! Every round draws an initial node `r` uniformly (with replacement across
//! rounds). Then:
//!
//! * random adds `r` itself,
//! * local adds one uniformly chosen neighbor of `r`,
//! * global adds each neighbor of `r` independently with probability `p`.
//!
//! Rounds repeat until the seed set is large enough. Global can overshoot,
//! in which case `k` seeds are subsampled uniformly without replacement.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{self, domain};
use crate::stats::CompensatedSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Random,
    Local,
    Global,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Random, Strategy::Local, Strategy::Global];

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Random => "random",
            Strategy::Local => "local",
            Strategy::Global => "global",
        }
    }

    /// Stable integer tag used in stream derivation.
    pub fn tag(&self) -> u64 {
        match self {
            Strategy::Random => 0,
            Strategy::Local => 1,
            Strategy::Global => 2,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "random" | "r" => Ok(Strategy::Random),
            "local" | "l" => Ok(Strategy::Local),
            "global" | "g" => Ok(Strategy::Global),
            other => Err(Error::InvalidParameter(format!("unknown strategy {other:?}"))),
        }
    }
}

pub const DEFAULT_GLOBAL_P: f64 = 0.5;
pub const ROUNDS_PER_SEED: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyConfig {
    pub strategy: Strategy,
    pub k: usize,
    /// Inclusion probability for the global strategy. `None` means
    /// [`DEFAULT_GLOBAL_P`] for global and must be `None` otherwise.
    pub p: Option<f64>,
    pub rng_seed: u64,
    /// Defaults to `1000 * k`.
    pub max_rounds: Option<usize>,
}

impl StrategyConfig {
    pub fn new(strategy: Strategy, k: usize, rng_seed: u64) -> Self {
        StrategyConfig { strategy, k, p: None, rng_seed, max_rounds: None }
    }

    pub fn global(k: usize, p: f64, rng_seed: u64) -> Self {
        StrategyConfig { strategy: Strategy::Global, k, p: Some(p), rng_seed, max_rounds: None }
    }

    pub fn effective_p(&self) -> f64 {
        self.p.unwrap_or(DEFAULT_GLOBAL_P)
    }

    pub fn effective_max_rounds(&self) -> usize {
        self.max_rounds.unwrap_or(ROUNDS_PER_SEED.saturating_mul(self.k))
    }

    fn validate(&self, node_count: usize) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        if self.k > node_count {
            return Err(Error::TooManySeeds { k: self.k, node_count });
        }
        match (self.strategy, self.p) {
            (Strategy::Global, Some(p)) if !(p > 0.0 && p <= 1.0) => {
                Err(Error::InvalidParameter(format!("p = {p} outside (0, 1]")))
            }
            (Strategy::Random | Strategy::Local, Some(_)) => {
                Err(Error::InvalidParameter("p only applies to the global strategy".into()))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSet {
    /// Distinct node indices in ascending order.
    pub seeds: Vec<usize>,
    /// All rounds, including those discarded because `r` had no neighbors.
    pub rounds_used: usize,
    /// Rounds whose initial node had at least one neighbor.
    pub initial_draws: usize,
}

/// Selects seeds with the stream derived from `cfg.rng_seed`.
pub fn select_seeds(g: &Graph, cfg: &StrategyConfig) -> Result<SeedSet> {
    let mut rng = rng::stream(cfg.rng_seed, &[domain::SELECT]);
    select_seeds_with(g, cfg, &mut rng)
}

/// Selects seeds drawing from a caller-supplied generator; `cfg.rng_seed` is ignored.
pub fn select_seeds_with<R: Rng>(g: &Graph, cfg: &StrategyConfig, rng: &mut R) -> Result<SeedSet> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    cfg.validate(n)?;
    let k = cfg.k;
    if cfg.strategy == Strategy::Random {
        let mut seeds = index::sample(rng, n, k).into_vec();
        seeds.sort_unstable();
        return Ok(SeedSet { seeds, rounds_used: k, initial_draws: k });
    }

    let max_rounds = cfg.effective_max_rounds();
    let p = cfg.effective_p();
    let mut members = HashSet::new();
    let mut pool = Vec::new();
    let mut rounds = 0;
    let mut initial_draws = 0;
    while pool.len() < k {
        if rounds == max_rounds {
            return Err(Error::RoundsExhausted { k, found: pool.len(), rounds });
        }
        rounds += 1;
        let r = rng.random_range(0..n);
        let friends = g.neighbors(r);
        if friends.is_empty() {
            continue;
        }
        initial_draws += 1;
        match cfg.strategy {
            Strategy::Local => {
                let s = friends[rng.random_range(0..friends.len())];
                if members.insert(s) {
                    pool.push(s);
                }
            }
            Strategy::Global => {
                for &s in friends {
                    if rng.random::<f64>() < p && members.insert(s) {
                        pool.push(s);
                    }
                }
            }
            Strategy::Random => unreachable!(),
        }
    }
    let mut seeds: Vec<usize> = if pool.len() > k {
        index::sample(rng, pool.len(), k).into_iter().map(|i| pool[i]).collect()
    } else {
        pool
    };
    seeds.sort_unstable();
    Ok(SeedSet { seeds, rounds_used: rounds, initial_draws })
}

/// Monte-Carlo estimate of the expected degree of a selected node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeEstimate {
    pub mean: f64,
    pub stderr: f64,
    /// Number of selected nodes that entered the estimate.
    pub observations: u64,
}

impl DegreeEstimate {
    pub fn interval(&self, z: f64) -> (f64, f64) {
        (self.mean - z * self.stderr, self.mean + z * self.stderr)
    }

    pub fn covers(&self, value: f64, z: f64) -> bool {
        let (lo, hi) = self.interval(z);
        lo <= value && value <= hi
    }
}

/// Rounds per independently seeded batch.
const ESTIMATE_BATCH: u64 = 1 << 16;

#[derive(Default, Clone, Copy)]
struct RoundSums {
    rounds: u64,
    count: u64,
    degree: CompensatedSum,
    degree_sq: CompensatedSum,
    count_sq: CompensatedSum,
    cross: CompensatedSum,
}

impl RoundSums {
    fn record(&mut self, degree_total: f64, count: u64) {
        self.rounds += 1;
        self.count += count;
        let c = count as f64;
        self.degree.add(degree_total);
        self.degree_sq.add(degree_total * degree_total);
        self.count_sq.add(c * c);
        self.cross.add(degree_total * c);
    }

    fn merge(mut self, other: &RoundSums) -> RoundSums {
        self.rounds += other.rounds;
        self.count += other.count;
        self.degree.add(other.degree.value());
        self.degree_sq.add(other.degree_sq.value());
        self.count_sq.add(other.count_sq.value());
        self.cross.add(other.cross.value());
        self
    }
}

/// Expected degree of nodes picked by `strategy`, estimated from `replicates`
/// independent selection rounds.
///
/// Random and local rounds each produce exactly one node. A global round adds
/// every neighbor of `r` with probability `p`, so it yields a variable number
/// of nodes; all of them count, and the estimate is the ratio of summed
/// degree to number of nodes added, with a round-clustered (delta-method)
/// standard error. Counting every addition is what makes the estimate
/// independent of `p`; keeping just one node per round would reweight
/// toward low-degree initial nodes (at `p = 1` it reproduces the local
/// strategy exactly).
///
/// Rounds are split into fixed-size batches, each with its own derived
/// stream, so the result does not depend on the worker count.
pub fn estimate_expected_degree(
    g: &Graph,
    strategy: Strategy,
    p: Option<f64>,
    replicates: u64,
    rng_seed: u64,
) -> Result<DegreeEstimate> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if replicates == 0 {
        return Err(Error::InvalidParameter("replicates must be at least 1".into()));
    }
    StrategyConfig { strategy, k: 1, p, rng_seed, max_rounds: None }.validate(n)?;
    if strategy != Strategy::Random && g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let p = p.unwrap_or(DEFAULT_GLOBAL_P);
    let batches = replicates.div_ceil(ESTIMATE_BATCH);
    let partials: Vec<RoundSums> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = rng::stream(rng_seed, &[domain::ESTIMATE, strategy.tag(), b]);
            let rounds = ESTIMATE_BATCH.min(replicates - b * ESTIMATE_BATCH);
            let mut sums = RoundSums::default();
            for _ in 0..rounds {
                match strategy {
                    Strategy::Random => {
                        let r = rng.random_range(0..n);
                        sums.record(g.deg(r) as f64, 1);
                    }
                    Strategy::Local => {
                        let friends = loop {
                            let r = rng.random_range(0..n);
                            if g.deg(r) > 0 {
                                break g.neighbors(r);
                            }
                        };
                        let s = friends[rng.random_range(0..friends.len())];
                        sums.record(g.deg(s) as f64, 1);
                    }
                    Strategy::Global => {
                        let r = rng.random_range(0..n);
                        let mut total = 0.0;
                        let mut count = 0;
                        for &s in g.neighbors(r) {
                            if rng.random::<f64>() < p {
                                total += g.deg(s) as f64;
                                count += 1;
                            }
                        }
                        sums.record(total, count);
                    }
                }
            }
            sums
        })
        .collect();
    let sums = partials.iter().fold(RoundSums::default(), |acc, s| acc.merge(s));
    if sums.count == 0 {
        return Err(Error::Infeasible(format!("no node was selected in {replicates} rounds")));
    }
    let rounds = sums.rounds as f64;
    let total_count = sums.count as f64;
    let mean = sums.degree.value() / total_count;
    // sum over rounds of (Y_r - mean * C_r)^2
    let resid = sums.degree_sq.value() - 2.0 * mean * sums.cross.value() + mean * mean * sums.count_sq.value();
    let correction = if rounds > 1.0 { rounds / (rounds - 1.0) } else { 1.0 };
    let stderr = (resid.max(0.0) * correction).sqrt() / total_count;
    Ok(DegreeEstimate { mean, stderr, observations: sums.count })
}
