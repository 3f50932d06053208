//! Simple undirected graphs over dense node ids and the raw topologies the
//! broadcast schemes are built on.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

pub type NodeId = u32;

/// Hard limits on the size of constructed graphs.
///
/// Every constructor in this crate checks its output size against a cap
/// before allocating; exceeding it is an error, never a truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeCap {
    pub max_nodes: usize,
    pub max_edges: usize,
}

impl SizeCap {
    pub const DEFAULT_MAX_NODES: usize = 1 << 20;
    pub const DEFAULT_MAX_EDGES: usize = 1 << 26;

    pub fn check_nodes(&self, requested: u128) -> Result<()> {
        if requested > self.max_nodes as u128 {
            return Err(Error::TooLarge {
                what: "nodes",
                requested,
                cap: self.max_nodes as u128,
            });
        }
        Ok(())
    }

    pub fn check_edges(&self, requested: u128) -> Result<()> {
        if requested > self.max_edges as u128 {
            return Err(Error::TooLarge {
                what: "edges",
                requested,
                cap: self.max_edges as u128,
            });
        }
        Ok(())
    }
}

impl Default for SizeCap {
    fn default() -> Self {
        SizeCap {
            max_nodes: Self::DEFAULT_MAX_NODES,
            max_edges: Self::DEFAULT_MAX_EDGES,
        }
    }
}

/// Fixed-width bit-string labels, one per node.
///
/// Bit positions are numbered from 1 at the leftmost (most significant)
/// character, so flipping "dimension 1" flips the first character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    width: u32,
    values: Vec<u64>,
}

impl Labels {
    pub const MAX_WIDTH: u32 = 63;

    pub fn new(width: u32, values: Vec<u64>) -> Result<Self> {
        if width > Self::MAX_WIDTH {
            return Err(Error::InvalidGraph(format!(
                "label width {width} exceeds {}",
                Self::MAX_WIDTH
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v >> width != 0) {
            return Err(Error::InvalidGraph(format!(
                "label value {v} does not fit in {width} bits"
            )));
        }
        let mut sorted = values.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("labels are not pairwise distinct".into()));
        }
        Ok(Labels { width, values })
    }

    /// Parses labels written as strings of '0' and '1'.
    pub fn parse<S: AsRef<str>>(strings: &[S]) -> Result<Self> {
        let width = strings.first().map_or(0, |s| s.as_ref().len());
        let mut values = Vec::with_capacity(strings.len());
        for s in strings {
            let s = s.as_ref();
            if s.len() != width {
                return Err(Error::InvalidGraph(format!(
                    "label {s:?} has length {} but expected {width}",
                    s.len()
                )));
            }
            let mut v = 0u64;
            for c in s.chars() {
                v = match c {
                    '0' => v << 1,
                    '1' => (v << 1) | 1,
                    _ => return Err(Error::InvalidGraph(format!("label {s:?} is not a bit string"))),
                };
            }
            values.push(v);
        }
        Labels::new(width as u32, values)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, node: NodeId) -> u64 {
        self.values[node as usize]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// The label of `node` with dimension `dim` (1-based, leftmost first) flipped.
    pub fn flip(&self, node: NodeId, dim: u32) -> u64 {
        flip_dimension(self.values[node as usize], self.width, dim)
    }

    pub fn render(&self, node: NodeId) -> String {
        render_bits(self.values[node as usize], self.width)
    }

    pub fn render_all(&self) -> Vec<String> {
        (0..self.values.len() as NodeId).map(|v| self.render(v)).collect()
    }
}

pub(crate) fn flip_dimension(value: u64, width: u32, dim: u32) -> u64 {
    debug_assert!(dim >= 1 && dim <= width);
    value ^ (1 << (width - dim))
}

pub(crate) fn render_bits(value: u64, width: u32) -> String {
    (0..width)
        .rev()
        .map(|i| if value >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// A simple undirected graph on nodes `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(NodeId, NodeId)>,
    adjacency: Vec<Vec<NodeId>>,
    labels: Option<Labels>,
}

impl Graph {
    /// Builds a graph from an edge list. Pairs may be given in either
    /// orientation; self-loops, duplicates and out-of-range ids are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one node".into()));
        }
        if n > NodeId::MAX as usize {
            return Err(Error::TooLarge {
                what: "nodes",
                requested: n as u128,
                cap: NodeId::MAX as u128,
            });
        }
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{u},{v}}} references a node outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at node {u}")));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge {{{},{}}}",
                w[0].0, w[0].1
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: normalized,
            adjacency,
            labels: None,
        })
    }

    /// Attaches bit-string labels; every edge must join labels at Hamming
    /// distance one.
    pub fn with_labels(mut self, labels: Labels) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} nodes",
                labels.len(),
                self.n
            )));
        }
        for &(u, v) in &self.edges {
            if (labels.value(u) ^ labels.value(v)).count_ones() != 1 {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{u},{v}}} joins labels {} and {} which do not differ in exactly one bit",
                    labels.render(u),
                    labels.render(v)
                )));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        0..self.n as NodeId
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        (u as usize) < self.n && self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        (v as usize) < self.n
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_depths(0).iter().all(|d| d.is_some())
    }

    pub fn ensure_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Hop distances from `root`; `None` for unreachable nodes.
    pub fn bfs_depths(&self, root: NodeId) -> Vec<Option<u32>> {
        let mut depth = vec![None; self.n];
        let mut queue = VecDeque::new();
        depth[root as usize] = Some(0);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let d = depth[u as usize].unwrap();
            for &w in self.neighbors(u) {
                if depth[w as usize].is_none() {
                    depth[w as usize] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        depth
    }

    /// Re-checks every structural invariant: adjacency mirrors the edge set,
    /// no loops or duplicates, and labels (if any) are consistent.
    pub fn validate(&self) -> Result<()> {
        let rebuilt = Graph::new(self.n, self.edges.iter().copied())?;
        if rebuilt.adjacency != self.adjacency {
            return Err(Error::InvalidGraph("adjacency does not match the edge set".into()));
        }
        if let Some(labels) = &self.labels {
            rebuilt.with_labels(labels.clone())?;
        }
        Ok(())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph with {} nodes and {} edges", self.n, self.edges.len())
    }
}

/// The `d`-dimensional hypercube. Node `i` carries the `d`-bit label of `i`.
pub fn make_hypercube(d: u32) -> Result<Graph> {
    make_hypercube_capped(d, SizeCap::default())
}

pub fn make_hypercube_capped(d: u32, cap: SizeCap) -> Result<Graph> {
    if d > Labels::MAX_WIDTH {
        return Err(Error::TooLarge {
            what: "hypercube dimensions",
            requested: d as u128,
            cap: Labels::MAX_WIDTH as u128,
        });
    }
    cap.check_nodes(1u128 << d)?;
    let n = 1usize << d;
    cap.check_edges(d as u128 * (n as u128) / 2)?;
    let mut edges = Vec::with_capacity(d as usize * n / 2);
    for x in 0..n as u64 {
        for dim in 1..=d {
            let y = flip_dimension(x, d, dim);
            if x < y {
                edges.push((x as NodeId, y as NodeId));
            }
        }
    }
    let labels = Labels::new(d, (0..n as u64).collect())?;
    Graph::new(n, edges)?.with_labels(labels)
}

/// The complete graph on `n` nodes.
pub fn make_clique(n: usize) -> Result<Graph> {
    make_clique_capped(n, SizeCap::default())
}

pub fn make_clique_capped(n: usize, cap: SizeCap) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("a clique needs at least one node"));
    }
    cap.check_nodes(n as u128)?;
    cap.check_edges(n as u128 * (n as u128 - 1) / 2)?;
    let n32 = n as NodeId;
    Graph::new(n, (0..n32).flat_map(|u| (u + 1..n32).map(move |v| (u, v))))
}

/// Two cycles of length `2k + 1` glued at node 0, which is the cut vertex.
///
/// Nodes `1..=2k` walk the first cycle, nodes `2k+1..=4k` the second.
pub fn make_two_cycles(k: usize) -> Result<Graph> {
    make_two_cycles_capped(k, SizeCap::default())
}

pub fn make_two_cycles_capped(k: usize, cap: SizeCap) -> Result<Graph> {
    if k == 0 {
        return Err(Error::param("the two-cycle family needs k >= 1"));
    }
    let n = 4 * k as u128 + 1;
    cap.check_nodes(n)?;
    let mut edges = Vec::with_capacity(4 * k + 2);
    for first in [1, 2 * k as NodeId + 1] {
        let last = first + 2 * k as NodeId - 1;
        edges.push((0, first));
        for v in first..last {
            edges.push((v, v + 1));
        }
        edges.push((last, 0));
    }
    Graph::new(n as usize, edges)
}

/// The cycle `0 - 1 - ... - (n-1) - 0`, `n >= 3`.
pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::param("a cycle needs at least three nodes"));
    }
    SizeCap::default().check_nodes(n as u128)?;
    let n32 = n as NodeId;
    Graph::new(n, (0..n32).map(|v| (v, (v + 1) % n32)))
}

/// The path `0 - 1 - ... - (n-1)`.
pub fn make_path(n: usize) -> Result<Graph> {
    SizeCap::default().check_nodes(n as u128)?;
    Graph::new(n, (1..n as NodeId).map(|v| (v - 1, v)))
}

/// The star with center 0 and `leaves` leaves.
pub fn make_star(leaves: usize) -> Result<Graph> {
    SizeCap::default().check_nodes(leaves as u128 + 1)?;
    Graph::new(leaves + 1, (1..=leaves as NodeId).map(|v| (0, v)))
}
