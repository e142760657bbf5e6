//! Spectral radius of the adjacency matrix and the epidemic threshold `1 / lambda_1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub lambda1: f64,
    /// `1 / lambda1`; infinite for edgeless graphs.
    #[serde(with = "crate::stats::float_or_inf")]
    pub tau: f64,
    pub iterations: usize,
    /// `||A v - lambda1 v|| / ||v||` for the returned eigenvector estimate.
    pub residual: f64,
}

impl SpectralResult {
    fn from_lambda(lambda1: f64, iterations: usize, residual: f64) -> Self {
        let tau = if lambda1 > 0.0 { 1.0 / lambda1 } else { f64::INFINITY };
        SpectralResult { lambda1, tau, iterations, residual }
    }
}

/// Largest adjacency eigenvalue by power iteration on `A + I`.
///
/// The unit shift makes the dominant eigenvalue unique in magnitude, which
/// removes the `+lambda / -lambda` oscillation on bipartite graphs. Each
/// connected component is iterated separately and the largest value wins;
/// components whose maximum degree cannot beat the current best are
/// skipped. Iteration stops once the residual is at most
/// `tol * max(1, lambda)`.
pub fn largest_eigenvalue(g: &Graph, tol: f64, max_iter: usize) -> Result<SpectralResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol = {tol} must be positive")));
    }
    if g.edge_count() == 0 {
        return Ok(SpectralResult::from_lambda(0.0, 0, 0.0));
    }
    let mut components = g.components();
    components.retain(|c| c.len() > 1);
    // Larger maximum degree first gives the best lower bound early.
    let max_deg = |c: &Vec<usize>| c.iter().map(|&v| g.deg(v)).max().unwrap_or(0);
    components.sort_by_key(|c| std::cmp::Reverse(max_deg(c)));

    let mut best: Option<SpectralResult> = None;
    let mut total_iterations = 0;
    for comp in &components {
        let upper = max_deg(comp) as f64;
        if let Some(b) = best {
            if upper <= b.lambda1 {
                continue;
            }
        }
        let r = component_eigenvalue(g, comp, tol, max_iter)?;
        total_iterations += r.iterations;
        if best.is_none_or(|b| r.lambda1 > b.lambda1) {
            best = Some(r);
        }
    }
    let best = best.expect("graph with edges has a component with edges");
    Ok(SpectralResult { iterations: total_iterations, ..best })
}

fn component_eigenvalue(g: &Graph, comp: &[usize], tol: f64, max_iter: usize) -> Result<SpectralResult> {
    let size = comp.len();
    // Local index of each global node, only for members of `comp`.
    let mut local = std::collections::HashMap::with_capacity(size);
    for (li, &v) in comp.iter().enumerate() {
        local.insert(v, li);
    }
    let adjacency: Vec<Vec<usize>> = comp
        .iter()
        .map(|&v| g.neighbors(v).iter().map(|w| local[w]).collect())
        .collect();

    let mut v: Vec<f64> = (0..size)
        .map(|i| 1.0 + 1e-3 * (((i as u64).wrapping_mul(2_654_435_761) % 1000) as f64 / 1000.0))
        .collect();
    normalize(&mut v);
    let mut w = vec![0.0; size];
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        // w = (A + I) v
        for (i, nbrs) in adjacency.iter().enumerate() {
            w[i] = v[i] + nbrs.iter().map(|&j| v[j]).sum::<f64>();
        }
        let shifted: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        lambda = shifted - 1.0;
        // A v - lambda v = (w - v) - lambda v
        residual = v
            .iter()
            .zip(&w)
            .map(|(&vi, &wi)| {
                let r = wi - vi - lambda * vi;
                r * r
            })
            .sum::<f64>()
            .sqrt();
        if residual <= tol * lambda.max(1.0) {
            return Ok(SpectralResult::from_lambda(lambda, it, residual));
        }
        std::mem::swap(&mut v, &mut w);
        normalize(&mut v);
    }
    Err(Error::NoConvergence { estimate: lambda, residual, iterations: max_iter })
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

/// `1 / lambda_1` with default tolerances; infinite for edgeless graphs.
pub fn epidemic_threshold(g: &Graph) -> Result<f64> {
    Ok(largest_eigenvalue(g, DEFAULT_TOL, DEFAULT_MAX_ITER)?.tau)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeKind {
    DiesOut,
    Epidemic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regime {
    pub kind: RegimeKind,
    /// `beta / delta` equals `tau` exactly.
    pub boundary: bool,
    /// `delta = 0` with `beta > 0`: the reproduction ratio is infinite.
    pub infinite_ratio: bool,
}

/// Compares `beta / delta` against the threshold `tau`.
pub fn classify_regime(beta: f64, delta: f64, tau: f64) -> Result<Regime> {
    if !(0.0..=1.0).contains(&beta) || !(0.0..=1.0).contains(&delta) {
        return Err(Error::InvalidParameter(format!("beta = {beta} and delta = {delta} must lie in [0, 1]")));
    }
    if delta == 0.0 {
        if beta > 0.0 {
            return Ok(Regime { kind: RegimeKind::Epidemic, boundary: false, infinite_ratio: true });
        }
        return Err(Error::InvalidParameter("beta = delta = 0 has no defined ratio".into()));
    }
    let ratio = beta / delta;
    let kind = if ratio < tau { RegimeKind::DiesOut } else { RegimeKind::Epidemic };
    Ok(Regime { kind, boundary: ratio == tau, infinite_ratio: false })
}
