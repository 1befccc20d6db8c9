//! Random-walk growth with distance-biased shortcut edges.
//!
//! Each iteration starts a walk at a uniform node, marks the start and the
//! endpoint of every walk phase, attaches a fresh node to the distinct marked
//! nodes and (unless running the no-shortcut baseline) joins a uniform node `s`
//! to a node `t` found at a sampled hop distance from `s`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::sampling::{self, DistanceDistribution, DistanceModel, RngSeed};

/// How the starting graph is obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InitialGraphSpec {
    Cycle(usize),
    Complete(usize),
    File(PathBuf),
}

impl Default for InitialGraphSpec {
    fn default() -> Self {
        InitialGraphSpec::Cycle(10)
    }
}

impl InitialGraphSpec {
    /// Materializes the graph; it must be connected with at least 3 nodes.
    pub fn build(&self) -> Result<Graph> {
        let g = match self {
            InitialGraphSpec::Cycle(n) => Graph::cycle(*n)?,
            InitialGraphSpec::Complete(n) => Graph::complete(*n),
            InitialGraphSpec::File(path) => Graph::read_edge_list(path)?,
        };
        if g.node_count() < 3 {
            return Err(Error::invalid(format!(
                "initial graph {self} needs at least 3 nodes, has {}",
                g.node_count()
            )));
        }
        if !g.is_connected() {
            return Err(Error::invalid(format!(
                "initial graph {self} is disconnected ({} unreachable pairs)",
                g.unreachable_pairs()
            )));
        }
        Ok(g)
    }
}

impl fmt::Display for InitialGraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialGraphSpec::Cycle(n) => write!(f, "cycle:{n}"),
            InitialGraphSpec::Complete(n) => write!(f, "complete:{n}"),
            InitialGraphSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl FromStr for InitialGraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("initial graph {s:?}: expected kind:arg")))?;
        let size = || {
            arg.trim()
                .parse::<usize>()
                .map_err(|_| Error::invalid(format!("initial graph {s:?}: bad size {arg:?}")))
        };
        match kind.trim() {
            "cycle" => Ok(InitialGraphSpec::Cycle(size()?)),
            "complete" => Ok(InitialGraphSpec::Complete(size()?)),
            "file" if !arg.is_empty() => Ok(InitialGraphSpec::File(PathBuf::from(arg))),
            _ => Err(Error::invalid(format!(
                "initial graph {s:?}: expected cycle:<n>, complete:<n> or file:<path>"
            ))),
        }
    }
}

/// Configuration of one generation run.
#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub initial: InitialGraphSpec,
    /// Number of growth iterations (one new node each).
    pub nodes_to_add: usize,
    /// Walk marks per iteration, i.e. the upper bound on the new node's walk edges.
    pub marks_per_walk: usize,
    /// Probability that a walk phase is one step long instead of two.
    pub p1: f64,
    /// `false` disables the shortcut step (the plain random-walk baseline).
    pub special_edges: bool,
    pub distance: DistanceModel,
    pub seed: RngSeed,
}

impl GenParams {
    pub fn new(nodes_to_add: usize, marks_per_walk: usize, p1: f64) -> Self {
        GenParams {
            initial: InitialGraphSpec::default(),
            nodes_to_add,
            marks_per_walk,
            p1,
            special_edges: true,
            distance: DistanceModel::default(),
            seed: RngSeed::default(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = RngSeed(seed);
        self
    }

    pub fn with_special_edges(mut self, on: bool) -> Self {
        self.special_edges = on;
        self
    }

    pub fn with_initial(mut self, initial: InitialGraphSpec) -> Self {
        self.initial = initial;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes_to_add == 0 {
            return Err(Error::invalid("N (nodes to add) must be at least 1"));
        }
        if self.nodes_to_add > u32::MAX as usize / 2 {
            return Err(Error::invalid(format!(
                "N = {} is too large",
                self.nodes_to_add
            )));
        }
        if self.marks_per_walk == 0 {
            return Err(Error::invalid("m (marks per walk) must be at least 1"));
        }
        sampling::check_p1(self.p1)?;
        self.distance.validate()
    }
}

/// What happened during one growth iteration.
#[derive(Clone, Debug)]
pub struct IterationEvent<'a> {
    pub iteration: usize,
    pub start: NodeId,
    /// Distinct marked nodes in marking order.
    pub marked: &'a [NodeId],
    pub new_node: NodeId,
    /// Upper end of the shortcut-distance support; `None` for the baseline.
    pub d_max_est: Option<usize>,
    pub sampled_distance: Option<usize>,
    pub shortcut: Option<(NodeId, NodeId)>,
}

/// Random walk from `start`: marks `start` and then the endpoint of each of
/// `marks - 1` phases of one or two uniform steps. Returns the distinct marks.
pub fn run_random_walk<R: Rng + ?Sized>(
    g: &Graph,
    start: NodeId,
    p1: f64,
    marks: usize,
    rng: &mut R,
) -> Result<Vec<NodeId>> {
    g.check_node(start)?;
    sampling::check_p1(p1)?;
    if marks == 0 {
        return Err(Error::invalid("m (marks per walk) must be at least 1"));
    }
    if marks > 1 && g.degree(start) == 0 {
        return Err(Error::invalid(format!("walk start {start} is isolated")));
    }
    let mut marked = Vec::with_capacity(marks);
    walk_into(g, start, p1, marks, rng, &mut marked);
    Ok(marked)
}

#[inline]
fn walk_into<R: Rng + ?Sized>(
    g: &Graph,
    start: NodeId,
    p1: f64,
    marks: usize,
    rng: &mut R,
    marked: &mut Vec<NodeId>,
) {
    marked.clear();
    marked.push(start);
    let mut current = start;
    for _ in 1..marks {
        for _ in 0..sampling::step_length(p1, rng) {
            let ns = g.neighbors(current);
            current = ns[rng.random_range(0..ns.len())];
        }
        if !marked.contains(&current) {
            marked.push(current);
        }
    }
}

/// Reusable level-synchronous BFS that stops at a requested depth.
///
/// Switches between top-down expansion and bottom-up parent search per level
/// (direction-optimizing BFS): once the frontier's adjacency outweighs the
/// unexplored part of the graph, every unvisited node instead looks for a
/// neighbor on the frontier and stops at the first hit.
#[derive(Debug, Default)]
pub struct RingSearch {
    /// `epoch << 32 | level` for nodes visited in the current search.
    visit: Vec<u64>,
    epoch: u32,
    frontier: Vec<NodeId>,
    next: Vec<NodeId>,
}

/// Go bottom-up when frontier adjacency exceeds `1/ALPHA` of the unexplored adjacency.
/// Tuned on grown graphs, whose rings saturate within a few levels.
const ALPHA: usize = 2;
/// Return to top-down when the frontier holds fewer than `1/BETA` of all nodes.
const BETA: usize = 24;

impl RingSearch {
    pub fn new() -> Self {
        Self::default()
    }

    /// Nodes at exactly `d` hops from `s`. When that ring is empty, the
    /// farthest non-empty ring at distance at least 2 is returned instead;
    /// the result is empty only when every node is within one hop of `s`.
    pub fn ring(&mut self, g: &Graph, s: NodeId, d: usize) -> &[NodeId] {
        let n = g.node_count();
        if self.visit.len() < n {
            self.visit.resize(n, 0);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.visit.iter_mut().for_each(|x| *x = 0);
            self.epoch = 1;
        }
        let epoch = u64::from(self.epoch);
        let tag = |level: usize| (epoch << 32) | level as u64;
        let visit = &mut self.visit;

        self.frontier.clear();
        self.frontier.push(s);
        visit[s.index()] = tag(0);
        let mut frontier_entries = g.degree(s);
        let mut unexplored_entries = 2 * g.edge_count() - frontier_entries;
        let mut bottom_up = false;
        let mut depth = 0;
        while depth < d {
            if !bottom_up && frontier_entries * ALPHA > unexplored_entries {
                bottom_up = true;
            } else if bottom_up && self.frontier.len() * BETA < n {
                bottom_up = false;
            }

            self.next.clear();
            let reached = tag(depth + 1);
            if bottom_up {
                let parent = tag(depth);
                for v in 0..n {
                    if visit[v] >> 32 == epoch {
                        continue;
                    }
                    if g.neighbors(NodeId::from(v))
                        .iter()
                        .any(|u| visit[u.index()] == parent)
                    {
                        visit[v] = reached;
                        self.next.push(NodeId::from(v));
                    }
                }
            } else {
                for &u in &self.frontier {
                    for &w in g.neighbors(u) {
                        let slot = &mut visit[w.index()];
                        if *slot >> 32 != epoch {
                            *slot = reached;
                            self.next.push(w);
                        }
                    }
                }
            }
            if self.next.is_empty() {
                break;
            }
            frontier_entries = self.next.iter().map(|&v| g.degree(v)).sum();
            unexplored_entries = unexplored_entries.saturating_sub(frontier_entries);
            std::mem::swap(&mut self.frontier, &mut self.next);
            depth += 1;
        }
        if depth >= 2 {
            &self.frontier
        } else {
            &[]
        }
    }

    /// A uniform node from [`RingSearch::ring`].
    pub fn pick<R: Rng + ?Sized>(
        &mut self,
        g: &Graph,
        s: NodeId,
        d: usize,
        rng: &mut R,
    ) -> Option<NodeId> {
        let ring = self.ring(g, s, d);
        if ring.is_empty() {
            None
        } else {
            Some(ring[rng.random_range(0..ring.len())])
        }
    }
}

/// Uniform node at distance `d` from `s`, falling back to the farthest ring at distance >= 2.
pub fn find_node_at_distance<R: Rng + ?Sized>(
    g: &Graph,
    s: NodeId,
    d: usize,
    rng: &mut R,
) -> Result<Option<NodeId>> {
    g.check_node(s)?;
    Ok(RingSearch::new().pick(g, s, d, rng))
}

/// Samples `d` from `dist` and a uniform source `s`, then links `s` to a node
/// `d` hops away. Returns the new edge, or `None` when `s` has no node at
/// distance 2 or more.
pub fn add_shortcut_edge<R: Rng + ?Sized>(
    g: &mut Graph,
    dist: &DistanceDistribution,
    rng: &mut R,
) -> Result<Option<(NodeId, NodeId)>> {
    if g.node_count() < 3 {
        return Err(Error::invalid("shortcut edges need at least 3 nodes"));
    }
    let mut search = RingSearch::new();
    Ok(shortcut_step(g, dist, rng, &mut search).1)
}

fn shortcut_step<R: Rng + ?Sized>(
    g: &mut Graph,
    dist: &DistanceDistribution,
    rng: &mut R,
    search: &mut RingSearch,
) -> (usize, Option<(NodeId, NodeId)>) {
    let d = dist.sample(rng);
    let s = NodeId::from(rng.random_range(0..g.node_count()));
    let edge = search.pick(g, s, d, rng).map(|t| {
        // t is at least two hops from s, so the edge is new.
        g.insert_unchecked(s, t);
        (s, t)
    });
    (d, edge)
}

/// Grows a graph according to `params`.
pub fn generate(params: &GenParams) -> Result<Graph> {
    generate_with_observer(params, |_| {})
}

/// [`generate`], reporting every iteration to `observer`.
pub fn generate_with_observer<F>(params: &GenParams, mut observer: F) -> Result<Graph>
where
    F: FnMut(&IterationEvent<'_>),
{
    params.validate()?;
    let mut g = params.initial.build()?;
    let mut rng = params.seed.rng();
    let mut search = RingSearch::new();
    let mut marked = Vec::with_capacity(params.marks_per_walk);
    let mut dist: Option<DistanceDistribution> = None;

    for iteration in 0..params.nodes_to_add {
        // The shortcut support is sized from the graph as it stands when the iteration begins.
        let d_max_est = if params.special_edges {
            let bound = sampling::support_upper_bound(
                g.node_count(),
                g.edge_count(),
                params.distance.epsilon,
            )?;
            if dist.as_ref().map(DistanceDistribution::d_max_est) != Some(bound) {
                dist = Some(DistanceDistribution::with_support(
                    bound,
                    params.distance.beta,
                )?);
            }
            Some(bound)
        } else {
            None
        };

        let start = NodeId::from(rng.random_range(0..g.node_count()));
        walk_into(
            &g,
            start,
            params.p1,
            params.marks_per_walk,
            &mut rng,
            &mut marked,
        );

        let new_node = g.add_node();
        for &u in &marked {
            g.insert_unchecked(new_node, u);
        }

        let (sampled_distance, shortcut) = match &dist {
            Some(dist) if params.special_edges => {
                let (d, edge) = shortcut_step(&mut g, dist, &mut rng, &mut search);
                (Some(d), edge)
            }
            _ => (None, None),
        };

        observer(&IterationEvent {
            iteration,
            start,
            marked: &marked,
            new_node,
            d_max_est,
            sampled_distance,
            shortcut,
        });
    }
    Ok(g)
}
