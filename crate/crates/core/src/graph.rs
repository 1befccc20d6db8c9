//! Undirected simple graph stored as indexable adjacency lists.
//!
//! Neighbor lists are plain vectors so a random walk can pick a uniform
//! neighbor in O(1). Nodes are never removed; ids stay dense.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Dense node identifier, `0..node_count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for NodeId {
    fn from(i: usize) -> Self {
        NodeId(i as u32)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// `n` isolated nodes.
    pub fn with_nodes(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// The cycle C_n (`n >= 3`).
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!(
                "cycle needs at least 3 nodes, got {n}"
            )));
        }
        let mut g = Graph::with_nodes(n);
        for i in 0..n {
            g.insert_unchecked(NodeId::from(i), NodeId::from((i + 1) % n));
        }
        Ok(g)
    }

    /// The complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::with_nodes(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.insert_unchecked(NodeId::from(i), NodeId::from(j));
            }
        }
        g
    }

    /// Builds a graph on `n` nodes from an edge list; self-loops and duplicates are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::with_nodes(n);
        for (u, v) in edges {
            g.add_edge(NodeId::from(u), NodeId::from(v))?;
        }
        Ok(g)
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn add_node(&mut self) -> NodeId {
        let id = NodeId::from(self.adjacency.len());
        self.adjacency.push(Vec::new());
        id
    }

    /// Inserts the undirected edge `{u, v}`.
    ///
    /// Returns `Ok(false)` and leaves the graph untouched for self-loops and
    /// edges that already exist.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> Result<bool> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v || self.contains_edge(u, v) {
            return Ok(false);
        }
        self.insert_unchecked(u, v);
        Ok(true)
    }

    #[inline]
    pub(crate) fn insert_unchecked(&mut self, u: NodeId, v: NodeId) {
        self.adjacency[u.index()].push(v);
        self.adjacency[v.index()].push(u);
        self.edge_count += 1;
    }

    pub fn contains_node(&self, v: NodeId) -> bool {
        v.index() < self.adjacency.len()
    }

    pub(crate) fn check_node(&self, v: NodeId) -> Result<()> {
        if self.contains_node(v) {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "node {v} out of range (graph has {} nodes)",
                self.node_count()
            )))
        }
    }

    /// Membership test scanning the shorter of the two neighbor lists.
    pub fn contains_edge(&self, u: NodeId, v: NodeId) -> bool {
        let (Some(nu), Some(nv)) = (self.adjacency.get(u.index()), self.adjacency.get(v.index()))
        else {
            return false;
        };
        if nu.len() <= nv.len() {
            nu.contains(&v)
        } else {
            nv.contains(&u)
        }
    }

    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v.index()]
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v.index()].len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.adjacency.len()).map(NodeId::from)
    }

    /// Every edge once, as `(u, v)` with `u < v`, ordered by `u` then insertion order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, ns)| {
            let u = NodeId::from(u);
            ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v))
        })
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `2|E| / |V|`.
    pub fn average_degree(&self) -> Result<f64> {
        if self.is_empty() {
            return Err(Error::invalid("average degree of an empty graph"));
        }
        Ok(2.0 * self.edge_count as f64 / self.node_count() as f64)
    }

    /// Hop distances from `source`, optionally truncated at `depth_limit`.
    pub fn bfs_distances(
        &self,
        source: NodeId,
        depth_limit: Option<usize>,
    ) -> Result<HashMap<NodeId, usize>> {
        self.check_node(source)?;
        let limit = depth_limit.unwrap_or(usize::MAX);
        let mut dist = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(source, 0);
        queue.push_back((source, 0usize));
        while let Some((u, du)) = queue.pop_front() {
            if du == limit {
                continue;
            }
            for &w in self.neighbors(u) {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(du + 1);
                    queue.push_back((w, du + 1));
                }
            }
        }
        Ok(dist)
    }

    /// Sizes of the connected components, in order of their smallest node.
    pub fn component_sizes(&self) -> Vec<usize> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut stack = Vec::new();
        let mut sizes = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            stack.push(root);
            let mut size = 0;
            while let Some(u) = stack.pop() {
                size += 1;
                for &w in &self.adjacency[u] {
                    if !seen[w.index()] {
                        seen[w.index()] = true;
                        stack.push(w.index());
                    }
                }
            }
            sizes.push(size);
        }
        sizes
    }

    /// Number of unordered node pairs with no path between them.
    pub fn unreachable_pairs(&self) -> u64 {
        let n = self.node_count() as u64;
        let within: u64 = self
            .component_sizes()
            .into_iter()
            .map(|s| (s as u64) * (s as u64 - 1) / 2)
            .sum();
        n * n.saturating_sub(1) / 2 - within
    }

    pub fn is_connected(&self) -> bool {
        self.component_sizes().len() <= 1
    }

    /// Fails with [`Error::Disconnected`] unless the graph is connected.
    pub fn ensure_connected(&self) -> Result<()> {
        match self.unreachable_pairs() {
            0 => Ok(()),
            unreachable_pairs => Err(Error::Disconnected { unreachable_pairs }),
        }
    }

    /// Reads the whitespace-separated edge-list format (`u v` per line, `#` comments).
    pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Self::parse_edge_list(BufReader::new(file), path)
    }

    pub fn parse_edge_list<R: BufRead>(reader: R, origin: &Path) -> Result<Self> {
        let parse_err = |line: usize, message: String| Error::Parse {
            path: origin.to_path_buf(),
            line,
            message,
        };
        let mut edges = Vec::new();
        let mut max_id: Option<usize> = None;
        for (idx, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::io(origin, e))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let mut next_id = || -> Result<usize> {
                let tok = fields
                    .next()
                    .ok_or_else(|| parse_err(idx + 1, "expected two node ids".into()))?;
                let id: u32 = tok
                    .parse()
                    .map_err(|_| parse_err(idx + 1, format!("bad node id {tok:?}")))?;
                Ok(id as usize)
            };
            let u = next_id()?;
            let v = next_id()?;
            if fields.next().is_some() {
                return Err(parse_err(idx + 1, "expected exactly two node ids".into()));
            }
            max_id = Some(max_id.unwrap_or(0).max(u).max(v));
            edges.push((u, v));
        }
        let n = max_id.map_or(0, |m| m + 1);
        Graph::from_edges(n, edges)
    }

    pub fn write_edge_list(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        self.write_edge_list_to(&mut out)
            .and_then(|_| out.flush())
            .map_err(|e| Error::io(path, e))
    }

    pub fn write_edge_list_to<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }
}
