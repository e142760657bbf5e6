//! Degree-based network means and the correlations that connect them.
//!
//! * mean degree `mu_D`
//! * local mean `mu_L`: the average over nodes of the mean degree of their
//!   neighbors, i.e. the expected degree of a uniform neighbor of a uniform node
//! * global mean `mu_G = sum D^2 / sum D`: the expected degree at the end of a
//!   uniformly chosen edge
//! * inversity: Pearson correlation of `(D_i, 1 / D_j)` over ordered edges
//! * `psi`: the moment factor in `mu_L = mu_G + inversity * psi`
//!
//! Anything involving `1 / D` rejects degree-0 nodes.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::stats::{self, weighted_pearson, CompensatedSum};

/// Relative tolerance for internal two-route consistency checks.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;

/// Radicands of `psi` above this negative value are treated as rounding noise.
pub const PSI_CLAMP: f64 = -1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeMoments {
    pub kappa_minus1: f64,
    pub kappa_1: f64,
    pub kappa_2: f64,
    pub kappa_3: f64,
    #[serde(rename = "mu_D")]
    pub mu_d: f64,
    #[serde(rename = "sigma2_D")]
    pub sigma2_d: f64,
}

fn require_nonempty(g: &Graph) -> Result<()> {
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(())
}

fn require_no_isolated(g: &Graph) -> Result<()> {
    require_nonempty(g)?;
    match g.degrees().position(|d| d == 0) {
        Some(node) => Err(Error::IsolatedNode { node }),
        None => Ok(()),
    }
}

pub fn degree_moments(g: &Graph) -> Result<DegreeMoments> {
    require_no_isolated(g)?;
    let n = g.node_count() as f64;
    let mut k = [CompensatedSum::new(); 4];
    for d in g.degrees() {
        let d = d as f64;
        k[0].add(1.0 / d);
        k[1].add(d);
        k[2].add(d * d);
        k[3].add(d * d * d);
    }
    let [km1, k1, k2, k3] = k.map(|s| s.value() / n);
    Ok(DegreeMoments {
        kappa_minus1: km1,
        kappa_1: k1,
        kappa_2: k2,
        kappa_3: k3,
        mu_d: k1,
        sigma2_d: (k2 - k1 * k1).max(0.0),
    })
}

pub fn mean_degree(g: &Graph) -> Result<f64> {
    require_nonempty(g)?;
    Ok(2.0 * g.edge_count() as f64 / g.node_count() as f64)
}

/// `F_i`, the mean degree of the neighbors of each node.
pub fn friend_means(g: &Graph) -> Result<Vec<f64>> {
    require_no_isolated(g)?;
    Ok((0..g.node_count())
        .map(|i| stats::sum(g.neighbors(i).iter().map(|&j| g.deg(j) as f64)) / g.deg(i) as f64)
        .collect())
}

/// Local mean by direct summation of per-node friend means.
pub fn local_mean(g: &Graph) -> Result<f64> {
    let f = friend_means(g)?;
    Ok(stats::sum(f.iter().copied()) / g.node_count() as f64)
}

/// Local mean written as mean degree plus a nonnegative edge-imbalance term,
/// `mu_D + (1 / 2N) sum_{ordered (i,j)} (D_i - D_j)^2 / (D_i D_j)`.
pub fn local_mean_by_edges(g: &Graph) -> Result<f64> {
    require_no_isolated(g)?;
    let n = g.node_count() as f64;
    let imbalance = stats::sum(g.directed_edges().map(|(i, j)| {
        let (di, dj) = (g.deg(i) as f64, g.deg(j) as f64);
        (di - dj) * (di - dj) / (di * dj)
    }));
    Ok(mean_degree(g)? + imbalance / (2.0 * n))
}

/// Global mean `sum D^2 / sum D`.
pub fn global_mean(g: &Graph) -> Result<f64> {
    require_nonempty(g)?;
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let s1 = stats::sum(g.degrees().map(|d| d as f64));
    let s2 = stats::sum(g.degrees().map(|d| (d * d) as f64));
    let direct = s2 / s1;
    let via_moments = global_mean_from_variance(g);
    debug_assert!(
        (direct - via_moments).abs() <= IDENTITY_TOLERANCE * direct.max(1.0),
        "global mean routes disagree: {direct} vs {via_moments}"
    );
    Ok(direct)
}

/// Global mean as `mu_D + sigma^2_D / mu_D`, over all nodes including isolated ones.
pub fn global_mean_from_variance(g: &Graph) -> f64 {
    let n = g.node_count() as f64;
    let mu = stats::sum(g.degrees().map(|d| d as f64)) / n;
    let var = stats::sum(g.degrees().map(|d| (d as f64 - mu) * (d as f64 - mu))) / n;
    mu + var / mu
}

fn inversity_points(g: &Graph) -> Vec<(f64, f64, f64)> {
    g.directed_edges()
        .map(|(i, j)| (g.deg(i) as f64, 1.0 / g.deg(j) as f64, 1.0))
        .collect()
}

/// Pearson correlation between origin degree and inverse destination degree
/// over the `2|E|` ordered edges.
pub fn inversity(g: &Graph) -> Result<f64> {
    require_no_isolated(g)?;
    weighted_pearson(&inversity_points(g)).ok_or(Error::ZeroVariance { what: "inversity" })
}

/// Pearson correlation of origin and destination degrees over ordered edges.
pub fn assortativity(g: &Graph) -> Result<f64> {
    require_nonempty(g)?;
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let points: Vec<_> = g
        .directed_edges()
        .map(|(i, j)| (g.deg(i) as f64, g.deg(j) as f64, 1.0))
        .collect();
    weighted_pearson(&points).ok_or(Error::ZeroVariance { what: "assortativity" })
}

/// `sqrt((k1 k3 - k2^2) / k1 * (k_{-1} - 1 / k1))`.
pub fn psi(m: &DegreeMoments) -> Result<f64> {
    let origin_var_scaled = (m.kappa_1 * m.kappa_3 - m.kappa_2 * m.kappa_2) / m.kappa_1;
    let inverse_spread = m.kappa_minus1 - 1.0 / m.kappa_1;
    let radicand = origin_var_scaled * inverse_spread;
    // Clamp threshold is relative to the magnitude of the moments involved.
    let scale = (m.kappa_3 * m.kappa_minus1).max(1.0);
    if radicand < PSI_CLAMP * scale {
        return Err(Error::InconsistentMoments { radicand });
    }
    Ok(radicand.max(0.0).sqrt())
}

/// Local mean reconstructed from moments and inversity. Regular graphs have
/// `psi = 0`, so the result is `mu_G` there.
pub fn local_mean_from_moments(g: &Graph) -> Result<f64> {
    let m = degree_moments(g)?;
    let p = psi(&m)?;
    let mu_g = m.kappa_2 / m.kappa_1;
    if g.is_regular() {
        return Ok(mu_g);
    }
    Ok(mu_g + inversity(g)? * p)
}

/// Fraction of nodes whose friends have strictly more friends on average.
pub fn fp_fraction(g: &Graph) -> Result<f64> {
    let f = friend_means(g)?;
    let count = f.iter().enumerate().filter(|&(i, &fi)| fi > g.deg(i) as f64).count();
    Ok(count as f64 / g.node_count() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Leverage {
    pub local: f64,
    pub global: f64,
}

/// Ratios of local and global mean to mean degree.
pub fn leverage(g: &Graph) -> Result<Leverage> {
    let mu_d = mean_degree(g)?;
    Ok(Leverage { local: local_mean(g)? / mu_d, global: global_mean(g)? / mu_d })
}

/// All scalar properties of a graph, serialized flat with fixed field names.
///
/// `inversity` and `assortativity` are `null` on regular graphs, where the
/// correlations are 0/0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeansReport {
    #[serde(rename = "mu_D")]
    pub mu_d: f64,
    #[serde(rename = "mu_L")]
    pub mu_l: f64,
    #[serde(rename = "mu_G")]
    pub mu_g: f64,
    pub inversity: Option<f64>,
    pub psi: f64,
    pub assortativity: Option<f64>,
    pub leverage_local: f64,
    pub leverage_global: f64,
    pub fp_fraction: f64,
}

pub fn means_report(g: &Graph) -> Result<MeansReport> {
    let m = degree_moments(g)?;
    let mu_l = local_mean(g)?;
    let mu_g = global_mean(g)?;
    let (inv, assort) = if g.is_regular() { (None, None) } else { (Some(inversity(g)?), Some(assortativity(g)?)) };
    Ok(MeansReport {
        mu_d: m.mu_d,
        mu_l,
        mu_g,
        inversity: inv,
        psi: psi(&m)?,
        assortativity: assort,
        leverage_local: mu_l / m.mu_d,
        leverage_global: mu_g / m.mu_d,
        fp_fraction: fp_fraction(g)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoKEntry {
    pub origin_degree: usize,
    pub destination_degree: usize,
    pub multiplicity: usize,
}

/// Multiset of `(origin degree, destination degree)` over ordered edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwoKDistribution {
    pub entries: Vec<TwoKEntry>,
}

impl TwoKDistribution {
    /// Aggregated 2k distribution of `g`, sorted by degree pair.
    pub fn from_graph(g: &Graph) -> TwoKDistribution {
        let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (i, j) in g.directed_edges() {
            *counts.entry((g.deg(i), g.deg(j))).or_default() += 1;
        }
        TwoKDistribution {
            entries: counts
                .into_iter()
                .map(|((o, d), m)| TwoKEntry { origin_degree: o, destination_degree: d, multiplicity: m })
                .collect(),
        }
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Degrees and multiplicities at least 1, and the same total mass on
    /// `(x, y)` as on `(y, x)`.
    pub fn validate(&self) -> Result<()> {
        let mut balance: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for e in &self.entries {
            if e.origin_degree == 0 || e.destination_degree == 0 || e.multiplicity == 0 {
                return Err(Error::InvalidParameter(format!("2k entry {e:?} has a zero field")));
            }
            let key = (e.origin_degree.min(e.destination_degree), e.origin_degree.max(e.destination_degree));
            let sign = if e.origin_degree <= e.destination_degree { 1 } else { -1 };
            if e.origin_degree != e.destination_degree {
                *balance.entry(key).or_default() += sign * e.multiplicity as i64;
            }
        }
        if let Some((k, _)) = balance.iter().find(|(_, &v)| v != 0) {
            return Err(Error::InvalidParameter(format!("2k distribution not symmetric at {k:?}")));
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for e in &self.entries {
            w.serialize(e)?;
        }
        if self.entries.is_empty() {
            w.write_record(["origin_degree", "destination_degree", "multiplicity"])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads the format written by [`TwoKDistribution::write_csv`]; lines
    /// starting with `#` are skipped.
    pub fn read_csv<R: Read>(input: R) -> Result<TwoKDistribution> {
        let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
        let entries = r.deserialize().collect::<std::result::Result<Vec<TwoKEntry>, _>>()?;
        Ok(TwoKDistribution { entries })
    }
}

/// Inversity from a 2k distribution alone.
pub fn inversity_from_2k(d: &TwoKDistribution) -> Result<f64> {
    d.validate()?;
    let points: Vec<_> = d
        .entries
        .iter()
        .map(|e| (e.origin_degree as f64, 1.0 / e.destination_degree as f64, e.multiplicity as f64))
        .collect();
    weighted_pearson(&points).ok_or(Error::ZeroVariance { what: "inversity" })
}

pub fn assortativity_from_2k(d: &TwoKDistribution) -> Result<f64> {
    d.validate()?;
    let points: Vec<_> = d
        .entries
        .iter()
        .map(|e| (e.origin_degree as f64, e.destination_degree as f64, e.multiplicity as f64))
        .collect();
    weighted_pearson(&points).ok_or(Error::ZeroVariance { what: "assortativity" })
}
