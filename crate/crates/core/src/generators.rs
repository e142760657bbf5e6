//! Random graph families and degree-preserving rewiring.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{fixtures, Graph};
use crate::rng::{self, domain};

/// Family-specific parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// Each pair joined independently with probability `p_edge`.
    ErdosRenyi { p_edge: f64 },
    /// Static scale-free model: node `i` (1-based) has weight
    /// `i^(-1 / (gamma - 1))`; `m_edges` distinct edges are drawn with
    /// endpoints proportional to weight.
    ScaleFree { gamma: f64, m_edges: usize },
    /// Watts-Strogatz ring with `k_neighbors` per node and per-edge rewiring
    /// probability `p_rewire`.
    SmallWorld { k_neighbors: usize, p_rewire: f64 },
    Star,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::ErdosRenyi { .. } => "erdos_renyi",
            Family::ScaleFree { .. } => "scale_free",
            Family::SmallWorld { .. } => "small_world",
            Family::Star => "star",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub family: Family,
    pub n: usize,
    pub rng_seed: u64,
}

impl GenSpec {
    pub fn erdos_renyi(n: usize, p_edge: f64, rng_seed: u64) -> Self {
        GenSpec { family: Family::ErdosRenyi { p_edge }, n, rng_seed }
    }

    pub fn scale_free(n: usize, gamma: f64, m_edges: usize, rng_seed: u64) -> Self {
        GenSpec { family: Family::ScaleFree { gamma, m_edges }, n, rng_seed }
    }

    pub fn small_world(n: usize, k_neighbors: usize, p_rewire: f64, rng_seed: u64) -> Self {
        GenSpec { family: Family::SmallWorld { k_neighbors, p_rewire }, n, rng_seed }
    }

    pub fn star(n: usize) -> Self {
        GenSpec { family: Family::Star, n, rng_seed: 0 }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.n < 2 {
            return bad(format!("n = {} must be at least 2", self.n));
        }
        match self.family {
            Family::ErdosRenyi { p_edge } => {
                if !(p_edge > 0.0 && p_edge <= 1.0) {
                    return bad(format!("p_edge = {p_edge} outside (0, 1]"));
                }
            }
            Family::ScaleFree { gamma, m_edges } => {
                if !(gamma > 1.0 && gamma.is_finite()) {
                    return bad(format!("gamma = {gamma} must be finite and > 1"));
                }
                if m_edges == 0 {
                    return bad("m_edges must be positive".into());
                }
                let max_edges = self.n * (self.n - 1) / 2;
                if m_edges > max_edges {
                    return Err(Error::Infeasible(format!("{m_edges} edges exceed C({}, 2) = {max_edges}", self.n)));
                }
            }
            Family::SmallWorld { k_neighbors, p_rewire } => {
                if k_neighbors < 2 || k_neighbors % 2 != 0 {
                    return bad(format!("k_neighbors = {k_neighbors} must be even and >= 2"));
                }
                if k_neighbors >= self.n {
                    return Err(Error::Infeasible(format!("k_neighbors = {k_neighbors} must be < n = {}", self.n)));
                }
                if !(0.0..=1.0).contains(&p_rewire) {
                    return bad(format!("p_rewire = {p_rewire} outside [0, 1]"));
                }
            }
            Family::Star => {}
        }
        Ok(())
    }
}

/// A generated graph with isolated nodes already pruned.
#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: Graph,
    pub pruned_isolated: usize,
}

/// Draws one graph. Identical specs give identical graphs.
pub fn generate(spec: &GenSpec) -> Result<Generated> {
    spec.validate()?;
    let mut rng = rng::stream(spec.rng_seed, &[domain::GENERATE]);
    let n = spec.n;
    let raw = match spec.family {
        Family::ErdosRenyi { p_edge } => erdos_renyi(n, p_edge, &mut rng),
        Family::ScaleFree { gamma, m_edges } => static_scale_free(n, gamma, m_edges, &mut rng)?,
        Family::SmallWorld { k_neighbors, p_rewire } => watts_strogatz(n, k_neighbors, p_rewire, &mut rng),
        Family::Star => fixtures::star(n),
    };
    let (graph, pruned_isolated) = raw.without_isolated();
    if graph.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(Generated { graph, pruned_isolated })
}

fn erdos_renyi<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Graph::from_index_edges(n, &edges).expect("indices in range").0
}

/// Rejection budget per requested edge before the model is declared infeasible.
const SCALE_FREE_DRAWS_PER_EDGE: usize = 10_000;

fn static_scale_free<R: Rng>(n: usize, gamma: f64, m: usize, rng: &mut R) -> Result<Graph> {
    let alpha = 1.0 / (gamma - 1.0);
    let mut cumulative = Vec::with_capacity(n);
    let mut total = 0.0;
    for i in 1..=n {
        total += (i as f64).powf(-alpha);
        cumulative.push(total);
    }
    let pick = |rng: &mut R| -> usize {
        let u = rng.random::<f64>() * total;
        cumulative.partition_point(|&c| c <= u).min(n - 1)
    };
    let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    let budget = m.saturating_mul(SCALE_FREE_DRAWS_PER_EDGE);
    let mut draws = 0;
    while edges.len() < m {
        if draws == budget {
            return Err(Error::Infeasible(format!(
                "static scale-free model placed {} of {m} edges in {budget} draws (gamma = {gamma})",
                edges.len()
            )));
        }
        draws += 1;
        let (a, b) = (pick(rng), pick(rng));
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        if seen.insert(key) {
            edges.push(key);
        }
    }
    Ok(Graph::from_index_edges(n, &edges)?.0)
}

fn watts_strogatz<R: Rng>(n: usize, k: usize, p: f64, rng: &mut R) -> Graph {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for i in 0..n {
        for j in 1..=k / 2 {
            let t = (i + j) % n;
            adj[i].insert(t);
            adj[t].insert(i);
        }
    }
    for j in 1..=k / 2 {
        for i in 0..n {
            let t = (i + j) % n;
            if !adj[i].contains(&t) || rng.random::<f64>() >= p {
                continue;
            }
            if adj[i].len() >= n - 1 {
                continue;
            }
            let new_t = loop {
                let c = rng.random_range(0..n);
                if c != i && !adj[i].contains(&c) {
                    break c;
                }
            };
            adj[i].remove(&t);
            adj[t].remove(&i);
            adj[i].insert(new_t);
            adj[new_t].insert(i);
        }
    }
    let edges: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
        .collect();
    Graph::from_index_edges(n, &edges).expect("indices in range").0
}

/// Replace edges `(a, b)` and `(c, d)` by `(a, d)` and `(b, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RewireMove {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl RewireMove {
    /// The move that undoes this one.
    pub fn inverse(&self) -> RewireMove {
        RewireMove { a: self.a, b: self.d, c: self.c, d: self.b }
    }

    /// Distinct nodes, old edges present and new edges absent.
    pub fn is_applicable(&self, g: &Graph) -> bool {
        self.check(g).is_ok()
    }

    fn check(&self, g: &Graph) -> Result<()> {
        let RewireMove { a, b, c, d } = *self;
        let nodes = [a, b, c, d];
        if let Some(&bad) = nodes.iter().find(|&&v| v >= g.node_count()) {
            return Err(Error::NodeOutOfRange { index: bad, node_count: g.node_count() });
        }
        for x in 0..4 {
            for y in x + 1..4 {
                if nodes[x] == nodes[y] {
                    return Err(Error::RewirePrecondition(format!("nodes not distinct: {self:?}")));
                }
            }
        }
        if !g.has_edge(a, b) || !g.has_edge(c, d) {
            return Err(Error::RewirePrecondition(format!("edges ({a},{b}) and ({c},{d}) must exist")));
        }
        if g.has_edge(a, d) || g.has_edge(b, c) {
            return Err(Error::RewirePrecondition(format!("edges ({a},{d}) and ({b},{c}) must be absent")));
        }
        Ok(())
    }

    /// `D_b < D_d` and `D_a < D_c`: the ordering under which the move
    /// strictly raises the local mean.
    pub fn satisfies_ordering(&self, g: &Graph) -> bool {
        g.deg(self.b) < g.deg(self.d) && g.deg(self.a) < g.deg(self.c)
    }

    /// Exact change in local mean if the move is applied.
    pub fn local_mean_increment(&self, g: &Graph) -> f64 {
        let [da, db, dc, dd] = [self.a, self.b, self.c, self.d].map(|v| g.deg(v) as f64);
        ((dd - db) * (1.0 / da - 1.0 / dc) + (dc - da) * (1.0 / db - 1.0 / dd)) / g.node_count() as f64
    }
}

pub fn rewire(g: &Graph, mv: &RewireMove) -> Result<Graph> {
    mv.check(g)?;
    let RewireMove { a, b, c, d } = *mv;
    let removed = [(a.min(b), a.max(b)), (c.min(d), c.max(d))];
    let mut edges: Vec<(usize, usize)> = g.edges().filter(|e| !removed.contains(e)).collect();
    edges.push((a, d));
    edges.push((b, c));
    let (out, _) = Graph::from_index_edges(g.node_count(), &edges)?;
    Ok(out.with_labels_of(g))
}

/// Edge-pair counts up to this size are scanned exhaustively instead of sampled.
const EXHAUSTIVE_PAIR_LIMIT: usize = 1 << 20;

/// Up to `max_moves` distinct applicable moves that satisfy the ordering
/// condition. Small graphs are scanned exhaustively, larger ones sampled.
pub fn find_rewire_moves<R: Rng>(g: &Graph, rng: &mut R, max_moves: usize) -> Vec<RewireMove> {
    if max_moves == 0 {
        return Vec::new();
    }
    let directed: Vec<(usize, usize)> = g.directed_edges().collect();
    let m = directed.len();
    let is_good = |mv: &RewireMove| mv.is_applicable(g) && mv.satisfies_ordering(g);
    if m.saturating_mul(m) <= EXHAUSTIVE_PAIR_LIMIT {
        let mut all: Vec<RewireMove> = directed
            .iter()
            .flat_map(|&(a, b)| directed.iter().map(move |&(c, d)| RewireMove { a, b, c, d }))
            .filter(is_good)
            .collect();
        all.shuffle(rng);
        all.truncate(max_moves);
        return all;
    }
    let mut found = BTreeSet::new();
    let mut out = Vec::new();
    let budget = max_moves.saturating_mul(200).max(10_000);
    for _ in 0..budget {
        let (a, b) = directed[rng.random_range(0..m)];
        let (c, d) = directed[rng.random_range(0..m)];
        let mv = RewireMove { a, b, c, d };
        if is_good(&mv) && found.insert(mv) {
            out.push(mv);
            if out.len() == max_moves {
                break;
            }
        }
    }
    out
}

/// Erdős–Gallai test.
pub fn is_graphical(sequence: &[usize]) -> bool {
    let mut d: Vec<usize> = sequence.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let n = d.len();
    let total: usize = d.iter().sum();
    if !total.is_multiple_of(2) || d.first().is_some_and(|&x| x >= n) {
        return false;
    }
    let mut prefix = 0;
    for k in 1..=n {
        prefix += d[k - 1];
        let tail: usize = d[k..].iter().map(|&x| x.min(k)).sum();
        if prefix > k * (k - 1) + tail {
            return false;
        }
    }
    true
}

/// Havel–Hakimi realization; node `i` gets degree `sequence[i]`.
pub fn realize_degree_sequence(sequence: &[usize]) -> Result<Graph> {
    if sequence.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !is_graphical(sequence) {
        return Err(Error::NonGraphical);
    }
    let mut remaining: Vec<(usize, usize)> = sequence.iter().copied().enumerate().map(|(i, d)| (d, i)).collect();
    let mut edges = Vec::new();
    loop {
        remaining.sort_unstable_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        let (d, v) = remaining[0];
        if d == 0 {
            break;
        }
        remaining[0].0 = 0;
        for slot in remaining.iter_mut().skip(1).take(d) {
            if slot.0 == 0 {
                return Err(Error::NonGraphical);
            }
            slot.0 -= 1;
            edges.push((v, slot.1));
        }
    }
    Ok(Graph::from_index_edges(sequence.len(), &edges)?.0)
}

/// Candidate moves sampled per hill-climb step.
pub const HILL_CLIMB_SAMPLE: usize = 256;

#[derive(Debug, Clone)]
pub struct HillClimb {
    pub graph: Graph,
    pub steps: usize,
    /// True when an exhaustive scan found no local-mean-increasing swap.
    pub converged: bool,
}

/// Local-mean gain of replacing `(a, b), (c, d)` by `(a, d), (b, c)`,
/// without any ordering requirement.
fn swap_gain(g: &Graph, mv: &RewireMove) -> f64 {
    let f = |x: usize, y: usize| {
        let (dx, dy) = (g.deg(x) as f64, g.deg(y) as f64);
        dx / dy + dy / dx
    };
    (f(mv.a, mv.d) + f(mv.b, mv.c) - f(mv.a, mv.b) - f(mv.c, mv.d)) / g.node_count() as f64
}

fn best_exhaustive_swap(g: &Graph) -> Option<(RewireMove, f64)> {
    let directed: Vec<(usize, usize)> = g.directed_edges().collect();
    let mut best: Option<(RewireMove, f64)> = None;
    for &(a, b) in &directed {
        for &(c, d) in &directed {
            let mv = RewireMove { a, b, c, d };
            if !mv.is_applicable(g) {
                continue;
            }
            let gain = swap_gain(g, &mv);
            if gain > 1e-12 && best.is_none_or(|(_, bg)| gain > bg) {
                best = Some((mv, gain));
            }
        }
    }
    best
}

/// Realizes `degree_sequence` and climbs toward maximal local mean with
/// degree-preserving double-edge swaps.
///
/// Each step samples [`HILL_CLIMB_SAMPLE`] candidate swaps and applies the one
/// with the largest gain. When a sample contains no improving swap, all edge
/// pairs are scanned; the climb stops when that scan also comes back empty or
/// `budget` steps have been taken.
pub fn maximize_local_mean<R: Rng>(degree_sequence: &[usize], budget: usize, rng: &mut R) -> Result<HillClimb> {
    let mut g = realize_degree_sequence(degree_sequence)?;
    let mut steps = 0;
    while steps < budget {
        let directed: Vec<(usize, usize)> = g.directed_edges().collect();
        if directed.len() < 4 {
            return Ok(HillClimb { graph: g, steps, converged: true });
        }
        let mut best: Option<(RewireMove, f64)> = None;
        for _ in 0..HILL_CLIMB_SAMPLE {
            let (a, b) = directed[rng.random_range(0..directed.len())];
            let (c, d) = directed[rng.random_range(0..directed.len())];
            let mv = RewireMove { a, b, c, d };
            if !mv.is_applicable(&g) {
                continue;
            }
            let gain = swap_gain(&g, &mv);
            if gain > 1e-12 && best.is_none_or(|(_, bg)| gain > bg) {
                best = Some((mv, gain));
            }
        }
        let chosen = match best {
            Some(b) => b,
            None => match best_exhaustive_swap(&g) {
                Some(b) => b,
                None => return Ok(HillClimb { graph: g, steps, converged: true }),
            },
        };
        g = rewire(&g, &chosen.0)?;
        steps += 1;
    }
    let converged = best_exhaustive_swap(&g).is_none();
    Ok(HillClimb { graph: g, steps, converged })
}
