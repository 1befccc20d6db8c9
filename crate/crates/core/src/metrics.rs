//! Clustering, path-length and degree-distribution statistics.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::sampling::RngSeed;

/// Graphs up to this many nodes get exact all-pairs path lengths under [`AsplPolicy::Auto`].
pub const AUTO_EXACT_LIMIT: usize = 20_000;
/// BFS sources used under [`AsplPolicy::Auto`] above [`AUTO_EXACT_LIMIT`].
pub const AUTO_SAMPLED_SOURCES: usize = 1_000;

/// How the average shortest path length is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AsplMode {
    /// BFS from every node.
    Exact,
    /// BFS from `sources` distinct nodes drawn with `seed`.
    Sampled { sources: usize, seed: u64 },
}

impl fmt::Display for AsplMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AsplMode::Exact => f.write_str("exact"),
            AsplMode::Sampled { sources, .. } => write!(f, "sampled:{sources}"),
        }
    }
}

/// User-facing choice of [`AsplMode`]; the sampling seed is supplied later.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AsplPolicy {
    #[default]
    Auto,
    Exact,
    Sampled(usize),
}

impl AsplPolicy {
    pub fn resolve(self, node_count: usize, seed: u64) -> AsplMode {
        match self {
            AsplPolicy::Exact => AsplMode::Exact,
            AsplPolicy::Sampled(sources) => AsplMode::Sampled { sources, seed },
            AsplPolicy::Auto if node_count <= AUTO_EXACT_LIMIT => AsplMode::Exact,
            AsplPolicy::Auto => AsplMode::Sampled {
                sources: AUTO_SAMPLED_SOURCES,
                seed,
            },
        }
    }
}

impl fmt::Display for AsplPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AsplPolicy::Auto => f.write_str("auto"),
            AsplPolicy::Exact => f.write_str("exact"),
            AsplPolicy::Sampled(k) => write!(f, "sampled:{k}"),
        }
    }
}

impl FromStr for AsplPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "auto" => Ok(AsplPolicy::Auto),
            "exact" => Ok(AsplPolicy::Exact),
            other => {
                let k = other
                    .strip_prefix("sampled:")
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k > 0)
                    .ok_or_else(|| {
                        Error::invalid(format!(
                            "aspl mode {s:?}: expected exact, auto or sampled:<k> with k >= 1"
                        ))
                    })?;
                Ok(AsplPolicy::Sampled(k))
            }
        }
    }
}

/// One row of measurements for a graph.
#[derive(Clone, Debug, PartialEq)]
pub struct NetworkMetrics {
    pub node_count: usize,
    pub edge_count: usize,
    pub avg_local_clustering: f64,
    pub transitivity: f64,
    pub avg_shortest_path: f64,
    /// Log-log least-squares slope of the degree distribution; `None` with fewer than two distinct degrees.
    pub gamma: Option<f64>,
    pub max_degree: usize,
    pub aspl_mode: AsplMode,
}

fn ensure_nonempty(g: &Graph) -> Result<()> {
    if g.is_empty() {
        Err(Error::invalid("graph has no nodes"))
    } else {
        Ok(())
    }
}

/// Fraction of neighbor pairs of `v` that are adjacent; 0 when `deg(v) < 2`.
pub fn local_clustering(g: &Graph, v: NodeId) -> Result<f64> {
    g.check_node(v)?;
    let ns = g.neighbors(v);
    let k = ns.len();
    if k < 2 {
        return Ok(0.0);
    }
    let mut mark = vec![false; g.node_count()];
    for &u in ns {
        mark[u.index()] = true;
    }
    // Each adjacent neighbor pair is seen from both ends.
    let twice_links: usize = ns
        .iter()
        .map(|&u| g.neighbors(u).iter().filter(|w| mark[w.index()]).count())
        .sum();
    Ok(twice_links as f64 / (k * (k - 1)) as f64)
}

/// Number of triangles through every node.
///
/// Edges are oriented from lower to higher `(degree, id)` rank, so each
/// triangle is found once from its lowest-ranked corner and hub
/// neighborhoods are never scanned in full.
pub fn triangles_per_node(g: &Graph) -> Vec<u64> {
    let n = g.node_count();
    let rank_lt = |a: NodeId, b: NodeId| (g.degree(a), a) < (g.degree(b), b);

    let mut offsets = Vec::with_capacity(n + 1);
    let mut targets = Vec::with_capacity(g.edge_count());
    offsets.push(0);
    for u in g.nodes() {
        targets.extend(g.neighbors(u).iter().copied().filter(|&w| rank_lt(u, w)));
        offsets.push(targets.len());
    }
    let out = |u: usize| &targets[offsets[u]..offsets[u + 1]];

    let mut tri = vec![0u64; n];
    let mut mark = vec![u32::MAX; n];
    for u in 0..n {
        let outs = out(u);
        for &w in outs {
            mark[w.index()] = u as u32;
        }
        for &v in outs {
            for &w in out(v.index()) {
                if mark[w.index()] == u as u32 {
                    tri[u] += 1;
                    tri[v.index()] += 1;
                    tri[w.index()] += 1;
                }
            }
        }
    }
    tri
}

fn pairs(k: usize) -> f64 {
    (k as f64) * (k as f64 - 1.0) / 2.0
}

/// Mean of [`local_clustering`] over all nodes.
pub fn average_local_clustering(g: &Graph) -> Result<f64> {
    ensure_nonempty(g)?;
    Ok(clustering_from_triangles(g, &triangles_per_node(g)).0)
}

/// `3 * triangles / connected triples`; 0 when there are no triples.
pub fn transitivity(g: &Graph) -> Result<f64> {
    ensure_nonempty(g)?;
    Ok(clustering_from_triangles(g, &triangles_per_node(g)).1)
}

fn clustering_from_triangles(g: &Graph, tri: &[u64]) -> (f64, f64) {
    let mut local_sum = 0.0;
    let mut triples = 0.0;
    for v in g.nodes() {
        let p = pairs(g.degree(v));
        if p > 0.0 {
            local_sum += tri[v.index()] as f64 / p;
            triples += p;
        }
    }
    // Every triangle is counted at each of its three corners.
    let closed: u64 = tri.iter().sum();
    let transitivity = if triples > 0.0 {
        closed as f64 / triples
    } else {
        0.0
    };
    (local_sum / g.node_count() as f64, transitivity)
}

/// Source lanes per bit-parallel BFS word group.
const LANE_WORDS: usize = 4;
const BATCH: usize = 64 * LANE_WORDS;
type Lanes = [u64; LANE_WORDS];

/// Sum of hop distances from each source to every node, plus the number of
/// `(source, node)` pairs left unreached.
///
/// Runs a bottom-up BFS for up to 256 sources at once: every node keeps one
/// bit per source in `visited` and `frontier`, and each level ORs the
/// neighbors' frontier bits together.
fn distance_sums(g: &Graph, sources: &[NodeId]) -> (u64, u64) {
    sources
        .par_chunks(BATCH)
        .map(|batch| batch_distance_sum(g, batch))
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

fn batch_distance_sum(g: &Graph, batch: &[NodeId]) -> (u64, u64) {
    let n = g.node_count();
    let mut full: Lanes = [0; LANE_WORDS];
    for i in 0..batch.len() {
        full[i / 64] |= 1 << (i % 64);
    }
    let mut visited: Vec<Lanes> = vec![[0; LANE_WORDS]; n];
    let mut frontier: Vec<Lanes> = vec![[0; LANE_WORDS]; n];
    let mut next: Vec<Lanes> = vec![[0; LANE_WORDS]; n];
    for (i, s) in batch.iter().enumerate() {
        visited[s.index()][i / 64] |= 1 << (i % 64);
        frontier[s.index()][i / 64] |= 1 << (i % 64);
    }

    let mut total = 0u64;
    let mut level = 0u64;
    loop {
        level += 1;
        let mut reached = 0u64;
        for v in 0..n {
            let seen = visited[v];
            if seen == full {
                next[v] = [0; LANE_WORDS];
                continue;
            }
            let mut acc: Lanes = [0; LANE_WORDS];
            for &u in g.neighbors(NodeId::from(v)) {
                let f = &frontier[u.index()];
                for w in 0..LANE_WORDS {
                    acc[w] |= f[w];
                }
            }
            let mut fresh: Lanes = [0; LANE_WORDS];
            for w in 0..LANE_WORDS {
                fresh[w] = acc[w] & !seen[w];
                reached += u64::from(fresh[w].count_ones());
                visited[v][w] = seen[w] | fresh[w];
            }
            next[v] = fresh;
        }
        if reached == 0 {
            break;
        }
        total += reached * level;
        std::mem::swap(&mut frontier, &mut next);
    }

    let unreached = visited
        .iter()
        .map(|seen| {
            (0..LANE_WORDS)
                .map(|w| u64::from((full[w] & !seen[w]).count_ones()))
                .sum::<u64>()
        })
        .sum();
    (total, unreached)
}

/// Mean hop distance between node pairs of a connected graph.
///
/// Exact mode averages over all unordered pairs. Sampled mode averages the
/// distances from `sources` distinct uniform nodes to every other node, an
/// unbiased estimate of the pair mean.
pub fn average_shortest_path(g: &Graph, mode: AsplMode) -> Result<f64> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::invalid(
            "average shortest path needs at least 2 nodes",
        ));
    }
    g.ensure_connected()?;
    let sources: Vec<NodeId> = match mode {
        AsplMode::Exact => g.nodes().collect(),
        AsplMode::Sampled { sources, seed } => {
            if sources == 0 {
                return Err(Error::invalid("sampled ASPL needs at least one source"));
            }
            let mut rng = RngSeed(seed).rng();
            let mut picked: Vec<NodeId> = rand::seq::index::sample(&mut rng, n, sources.min(n))
                .into_iter()
                .map(NodeId::from)
                .collect();
            picked.sort_unstable();
            picked
        }
    };
    let (total, unreached) = distance_sums(g, &sources);
    debug_assert_eq!(unreached, 0);
    Ok(total as f64 / (sources.len() as f64 * (n - 1) as f64))
}

/// Node counts per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHistogram {
    node_count: u64,
    /// `(degree, count)` for degrees >= 1 with a nonzero count, ascending.
    counts: Vec<(usize, u64)>,
}

impl DegreeHistogram {
    pub fn from_graph(g: &Graph) -> Self {
        let mut by_degree = vec![0u64; g.max_degree() + 1];
        for v in g.nodes() {
            by_degree[g.degree(v)] += 1;
        }
        Self::from_counts(by_degree.into_iter().enumerate())
    }

    /// Builds from `(degree, count)` pairs; degree-0 counts only add to the total.
    pub fn from_counts<I>(counts: I) -> Self
    where
        I: IntoIterator<Item = (usize, u64)>,
    {
        let mut merged = std::collections::BTreeMap::new();
        let mut node_count = 0;
        for (k, c) in counts {
            node_count += c;
            if k > 0 && c > 0 {
                *merged.entry(k).or_insert(0) += c;
            }
        }
        DegreeHistogram {
            node_count,
            counts: merged.into_iter().collect(),
        }
    }

    pub fn node_count(&self) -> u64 {
        self.node_count
    }

    pub fn counts(&self) -> &[(usize, u64)] {
        &self.counts
    }

    /// `(k, P(k))` for every listed degree.
    pub fn entries(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        let total = self.node_count as f64;
        self.counts.iter().map(move |&(k, c)| (k, c as f64 / total))
    }
}

/// Ordinary least-squares slope of `ln P(k)` against `ln k`.
pub fn fit_power_law(hist: &DegreeHistogram) -> Result<f64> {
    let points: Vec<(f64, f64)> = hist
        .entries()
        .map(|(k, p)| ((k as f64).ln(), p.ln()))
        .collect();
    if points.len() < 2 {
        return Err(Error::invalid(format!(
            "power-law fit needs at least 2 distinct degrees, got {}",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (sxy, sxx) = points.iter().fold((0.0, 0.0), |(sxy, sxx), &(x, y)| {
        let dx = x - mean_x;
        (sxy + dx * (y - mean_y), sxx + dx * dx)
    });
    Ok(sxy / sxx)
}

/// All reported statistics of a connected graph with at least 3 nodes.
pub fn measure(g: &Graph, aspl: AsplMode) -> Result<NetworkMetrics> {
    if g.node_count() < 3 {
        return Err(Error::invalid(format!(
            "measuring needs at least 3 nodes, got {}",
            g.node_count()
        )));
    }
    g.ensure_connected()?;
    let (avg_local_clustering, transitivity) = clustering_from_triangles(g, &triangles_per_node(g));
    let hist = DegreeHistogram::from_graph(g);
    let gamma = (hist.counts().len() >= 2)
        .then(|| fit_power_law(&hist))
        .transpose()?;
    Ok(NetworkMetrics {
        node_count: g.node_count(),
        edge_count: g.edge_count(),
        avg_local_clustering,
        transitivity,
        avg_shortest_path: average_shortest_path(g, aspl)?,
        gamma,
        max_degree: g.max_degree(),
        aspl_mode: aspl,
    })
}
