//! Synchronous discrete-time SIR simulation with immunized nodes.

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{self, domain};
use crate::stats::Summary;

use super::ceil_count;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SirConfig {
    /// Per-neighbor, per-period transmission probability.
    pub beta: f64,
    /// Per-period recovery probability.
    pub delta: f64,
    pub initial_infected_fraction: f64,
    pub replicates: usize,
    /// Maximum number of recorded periods per replicate.
    pub t_max: usize,
    pub rng_seed: u64,
}

impl Default for SirConfig {
    fn default() -> Self {
        SirConfig {
            beta: 0.20,
            delta: 0.15,
            initial_infected_fraction: 0.01,
            replicates: 100,
            t_max: 10_000,
            rng_seed: 0,
        }
    }
}

impl SirConfig {
    pub fn validate(&self) -> Result<()> {
        let unit = 0.0..=1.0;
        if !unit.contains(&self.beta) {
            return Err(Error::InvalidParameter(format!("beta = {} outside [0, 1]", self.beta)));
        }
        if !unit.contains(&self.delta) {
            return Err(Error::InvalidParameter(format!("delta = {} outside [0, 1]", self.delta)));
        }
        let f = self.initial_infected_fraction;
        if !(f > 0.0 && f <= 1.0) {
            return Err(Error::InvalidParameter(format!("initial infected fraction = {f} outside (0, 1]")));
        }
        if self.replicates == 0 {
            return Err(Error::InvalidParameter("replicates must be at least 1".into()));
        }
        if self.t_max == 0 {
            return Err(Error::InvalidParameter("t_max must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeState {
    Susceptible,
    Infected,
    Recovered,
    Immunized,
}

/// Compartment sizes in one period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PeriodCounts {
    pub susceptible: usize,
    pub infected: usize,
    pub recovered: usize,
    pub immunized: usize,
}

impl PeriodCounts {
    fn of(states: &[NodeState]) -> Self {
        let mut c = PeriodCounts::default();
        for s in states {
            match s {
                NodeState::Susceptible => c.susceptible += 1,
                NodeState::Infected => c.infected += 1,
                NodeState::Recovered => c.recovered += 1,
                NodeState::Immunized => c.immunized += 1,
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.susceptible + self.infected + self.recovered + self.immunized
    }
}

/// Outcome of one replicate. Fractions use the whole population `N` as
/// denominator, immunized nodes included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReplicateOutcome {
    pub peak_fraction: f64,
    pub ever_fraction: f64,
    /// `infected_node_periods / (N * duration)`.
    pub total_suffering: f64,
    /// Recorded periods `0..duration`, each with at least one infected node.
    /// Equals `t_max` when the run was cut off.
    pub duration: usize,
    /// Raw sum of infected nodes over recorded periods.
    pub infected_node_periods: u64,
}

impl ReplicateOutcome {
    const DEGENERATE: ReplicateOutcome = ReplicateOutcome {
        peak_fraction: 0.0,
        ever_fraction: 0.0,
        total_suffering: 0.0,
        duration: 0,
        infected_node_periods: 0,
    };

    pub fn metric(&self, m: Metric) -> f64 {
        match m {
            Metric::PeakFraction => self.peak_fraction,
            Metric::EverFraction => self.ever_fraction,
            Metric::TotalSuffering => self.total_suffering,
            Metric::Duration => self.duration as f64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    PeakFraction,
    EverFraction,
    TotalSuffering,
    Duration,
}

impl Metric {
    pub const ALL: [Metric; 4] = [Metric::PeakFraction, Metric::EverFraction, Metric::TotalSuffering, Metric::Duration];
    pub const FRACTIONS: [Metric; 3] = [Metric::PeakFraction, Metric::EverFraction, Metric::TotalSuffering];

    pub fn name(&self) -> &'static str {
        match self {
            Metric::PeakFraction => "peak_fraction",
            Metric::EverFraction => "ever_fraction",
            Metric::TotalSuffering => "total_suffering",
            Metric::Duration => "duration",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SirOutcome {
    pub replicates: Vec<ReplicateOutcome>,
    pub peak_fraction: Summary,
    pub ever_fraction: Summary,
    pub total_suffering: Summary,
    pub duration: Summary,
    /// Every node was immunized, so nothing could be infected.
    pub degenerate: bool,
}

impl SirOutcome {
    pub fn from_replicates(replicates: Vec<ReplicateOutcome>, degenerate: bool, z: f64) -> Self {
        let summary = |m: Metric| Summary::from_values(&replicates.iter().map(|r| r.metric(m)).collect::<Vec<_>>(), z);
        SirOutcome {
            peak_fraction: summary(Metric::PeakFraction),
            ever_fraction: summary(Metric::EverFraction),
            total_suffering: summary(Metric::TotalSuffering),
            duration: summary(Metric::Duration),
            replicates,
            degenerate,
        }
    }

    pub fn values(&self, m: Metric) -> Vec<f64> {
        self.replicates.iter().map(|r| r.metric(m)).collect()
    }

    pub fn summary(&self, m: Metric) -> &Summary {
        match m {
            Metric::PeakFraction => &self.peak_fraction,
            Metric::EverFraction => &self.ever_fraction,
            Metric::TotalSuffering => &self.total_suffering,
            Metric::Duration => &self.duration,
        }
    }
}

/// Boolean immunization mask after range checks; duplicates are harmless.
pub(crate) fn immunization_mask(g: &Graph, immunized: &[usize]) -> Result<Vec<bool>> {
    let n = g.node_count();
    let mut mask = vec![false; n];
    for &v in immunized {
        if v >= n {
            return Err(Error::NodeOutOfRange { index: v, node_count: n });
        }
        mask[v] = true;
    }
    Ok(mask)
}

/// Runs `cfg.replicates` independent replicates. Replicate `r` draws from
/// the stream `(cfg.rng_seed, [SIR, r])`.
pub fn sir_simulate(g: &Graph, cfg: &SirConfig, immunized: &[usize]) -> Result<SirOutcome> {
    cfg.validate()?;
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mask = immunization_mask(g, immunized)?;
    let degenerate = mask.iter().all(|&m| m);
    let replicates: Vec<ReplicateOutcome> = (0..cfg.replicates)
        .into_par_iter()
        .map(|r| {
            let mut rng = rng::stream(cfg.rng_seed, &[domain::SIR, r as u64]);
            run_replicate(g, cfg, &mask, &mut rng, None)
        })
        .collect();
    Ok(SirOutcome::from_replicates(replicates, degenerate, crate::stats::Z95))
}

/// Node states in each recorded period of replicate `replicate`, followed by
/// the all-clear state when the epidemic died out before `t_max`. Matches
/// the run [`sir_simulate`] performs for that replicate.
pub fn sir_trajectory(g: &Graph, cfg: &SirConfig, immunized: &[usize], replicate: usize) -> Result<Vec<Vec<NodeState>>> {
    cfg.validate()?;
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mask = immunization_mask(g, immunized)?;
    let mut rng = rng::stream(cfg.rng_seed, &[domain::SIR, replicate as u64]);
    let mut states = Vec::new();
    run_replicate(g, cfg, &mask, &mut rng, Some(&mut states));
    Ok(states)
}

/// Compartment sizes per recorded period.
pub fn period_counts(trajectory: &[Vec<NodeState>]) -> Vec<PeriodCounts> {
    trajectory.iter().map(|s| PeriodCounts::of(s)).collect()
}

/// One replicate from a caller-supplied generator.
pub fn run_replicate<R: Rng>(
    g: &Graph,
    cfg: &SirConfig,
    immune: &[bool],
    rng: &mut R,
    mut record: Option<&mut Vec<Vec<NodeState>>>,
) -> ReplicateOutcome {
    let n = g.node_count();
    let eligible: Vec<usize> = (0..n).filter(|&v| !immune[v]).collect();
    if eligible.is_empty() {
        return ReplicateOutcome::DEGENERATE;
    }
    let mut state: Vec<NodeState> = immune
        .iter()
        .map(|&m| if m { NodeState::Immunized } else { NodeState::Susceptible })
        .collect();
    let initial = ceil_count(cfg.initial_infected_fraction, eligible.len()).clamp(1, eligible.len());
    let mut infected: Vec<usize> = index::sample(rng, eligible.len(), initial).into_iter().map(|i| eligible[i]).collect();
    infected.sort_unstable();
    for &v in &infected {
        state[v] = NodeState::Infected;
    }

    // Probability of escaping infection from m infected neighbors is (1 - beta)^m.
    let escape = 1.0 - cfg.beta;
    let mut pressure = vec![0u32; n];
    let mut touched = Vec::new();
    // New infections only count once their period is recorded, which the
    // loop guarantees by stopping at t_max before a transition.
    let mut ever = infected.len();
    let mut peak = infected.len();
    let mut node_periods = 0u64;
    let mut duration = 0;

    loop {
        if let Some(rec) = record.as_deref_mut() {
            rec.push(state.clone());
        }
        duration += 1;
        node_periods += infected.len() as u64;
        peak = peak.max(infected.len());
        if duration == cfg.t_max {
            break;
        }

        for &v in &infected {
            for &w in g.neighbors(v) {
                if state[w] == NodeState::Susceptible {
                    if pressure[w] == 0 {
                        touched.push(w);
                    }
                    pressure[w] += 1;
                }
            }
        }
        touched.sort_unstable();
        let mut next_infected = Vec::new();
        for &w in &touched {
            let p = 1.0 - escape.powi(pressure[w] as i32);
            pressure[w] = 0;
            if rng.random::<f64>() < p {
                next_infected.push(w);
            }
        }
        touched.clear();
        for &v in &infected {
            if rng.random::<f64>() < cfg.delta {
                state[v] = NodeState::Recovered;
            } else {
                next_infected.push(v);
            }
        }
        for &w in &next_infected {
            if state[w] == NodeState::Susceptible {
                state[w] = NodeState::Infected;
                ever += 1;
            }
        }
        next_infected.sort_unstable();
        infected = next_infected;
        if infected.is_empty() {
            if let Some(rec) = record {
                // The all-clear state that ended the run.
                rec.push(state);
            }
            break;
        }
    }

    let nf = n as f64;
    ReplicateOutcome {
        peak_fraction: peak as f64 / nf,
        ever_fraction: ever as f64 / nf,
        total_suffering: if duration == 0 { 0.0 } else { node_periods as f64 / (nf * duration as f64) },
        duration,
        infected_node_periods: node_periods,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn cfg(beta: f64, delta: f64, fraction: f64, replicates: usize, t_max: usize) -> SirConfig {
        SirConfig { beta, delta, initial_infected_fraction: fraction, replicates, t_max, rng_seed: 11 }
    }

    #[test]
    fn defaults() {
        let c = SirConfig::default();
        assert_eq!((c.beta, c.delta, c.initial_infected_fraction, c.replicates), (0.20, 0.15, 0.01, 100));
        assert_eq!(c.t_max, 10_000);
        c.validate().unwrap();
    }

    #[test]
    fn no_transmission_keeps_initial_fraction() {
        let g = ring_lattice(100, 2);
        let out = sir_simulate(&g, &cfg(0.0, 0.3, 0.05, 20, 10_000), &[]).unwrap();
        for r in &out.replicates {
            assert_eq!(r.ever_fraction, 0.05);
            assert_eq!(r.peak_fraction, 0.05);
            assert!(r.duration >= 1);
        }
    }

    #[test]
    fn path_of_three_hand_enumeration() {
        // Middle node infected; beta = delta = 1.
        // t=0: I = {1}; t=1: I = {0, 2}, 1 recovered; t=2: all recovered.
        let g = path(3);
        let c = cfg(1.0, 1.0, 0.3, 1, 100);
        // The initial infection is uniform, so scan seeds for a middle start.
        let mut seen_middle = false;
        for seed in 0..64 {
            let c = SirConfig { rng_seed: seed, ..c };
            let traj = sir_trajectory(&g, &c, &[], 0).unwrap();
            if traj[0][1] == NodeState::Infected {
                seen_middle = true;
                assert_eq!(traj[1], vec![NodeState::Infected, NodeState::Recovered, NodeState::Infected]);
                assert_eq!(traj[2], vec![NodeState::Recovered; 3]);
                let out = sir_simulate(&g, &c, &[]).unwrap();
                let r = out.replicates[0];
                assert_eq!(r.ever_fraction, 1.0);
                assert_eq!(r.duration, 2);
                assert!((r.peak_fraction - 2.0 / 3.0).abs() < 1e-15);
                assert!((r.total_suffering - 0.5).abs() < 1e-15);
            }
        }
        assert!(seen_middle);
    }

    #[test]
    fn complete_graph_without_recovery() {
        // One infection, everyone infected at t=1, nobody recovers: the
        // infected counts are 1, 4, 4, ... over t_max periods.
        let g = complete(4);
        for t_max in [1usize, 2, 10, 50] {
            let c = cfg(1.0, 0.0, 0.25, 3, t_max);
            let out = sir_simulate(&g, &c, &[]).unwrap();
            let expected = (1.0 + 4.0 * (t_max as f64 - 1.0)) / (4.0 * t_max as f64);
            for r in &out.replicates {
                assert_eq!(r.duration, t_max);
                assert!((r.total_suffering - expected).abs() < 1e-15);
                assert_eq!(r.ever_fraction, if t_max == 1 { 0.25 } else { 1.0 });
            }
        }
    }

    #[test]
    fn immunized_nodes_never_change() {
        let g = complete(10);
        let imm = [2, 5, 7];
        let traj = sir_trajectory(&g, &cfg(0.9, 0.2, 0.5, 1, 1000), &imm, 0).unwrap();
        for period in &traj {
            for &v in &imm {
                assert_eq!(period[v], NodeState::Immunized);
            }
        }
        for c in period_counts(&traj) {
            assert_eq!(c.total(), 10);
            assert_eq!(c.immunized, 3);
        }
    }

    #[test]
    fn initial_count_rounds_up_over_eligible_nodes() {
        let g = ring_lattice(30, 2);
        let traj = sir_trajectory(&g, &cfg(0.0, 1.0, 0.01, 1, 10), &[0, 1, 2], 0).unwrap();
        assert_eq!(period_counts(&traj)[0].infected, 1);
        let traj = sir_trajectory(&g, &cfg(0.0, 1.0, 0.1, 1, 10), &[0, 1, 2], 0).unwrap();
        assert_eq!(period_counts(&traj)[0].infected, 3);
    }

    #[test]
    fn all_immunized_is_degenerate() {
        let g = star(4);
        let out = sir_simulate(&g, &cfg(0.5, 0.5, 0.5, 4, 100), &[0, 1, 2, 3]).unwrap();
        assert!(out.degenerate);
        assert!(out.replicates.iter().all(|r| *r == ReplicateOutcome::DEGENERATE));
    }

    #[test]
    fn invalid_inputs() {
        let g = star(4);
        assert!(sir_simulate(&g, &cfg(1.5, 0.1, 0.1, 1, 10), &[]).is_err());
        assert!(sir_simulate(&g, &cfg(0.1, 0.1, 0.0, 1, 10), &[]).is_err());
        assert!(sir_simulate(&g, &cfg(0.1, 0.1, 0.1, 0, 10), &[]).is_err());
        assert!(matches!(
            sir_simulate(&g, &cfg(0.1, 0.1, 0.1, 1, 10), &[9]),
            Err(Error::NodeOutOfRange { index: 9, node_count: 4 })
        ));
    }

    #[test]
    fn replicates_are_reproducible() {
        let g = ring_lattice(200, 4);
        let c = cfg(0.3, 0.2, 0.02, 16, 10_000);
        let a = sir_simulate(&g, &c, &[3, 4]).unwrap();
        let b = sir_simulate(&g, &c, &[3, 4]).unwrap();
        assert_eq!(a, b);
        assert_eq!(sir_trajectory(&g, &c, &[3, 4], 5).unwrap(), sir_trajectory(&g, &c, &[3, 4], 5).unwrap());
        let traj = sir_trajectory(&g, &c, &[3, 4], 5).unwrap();
        assert_eq!(traj.len() - 1, a.replicates[5].duration);
    }
}
