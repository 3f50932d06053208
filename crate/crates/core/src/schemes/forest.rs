//! Sparse broadcast graphs built from a forest of binomial trees whose roots
//! are joined to every node.
//!
//! Write `n = 2^m - 2^k - r` with `0 <= k <= m - 2` and `0 <= r < 2^k`. Take
//! binomial trees of dimensions `m-1, m-2, ..., k`, prune `r` deepest leaves
//! from the smallest one, then connect every node to every tree root.
//!
//! Lists, for a node rooting a binomial subtree of dimension `j`:
//! * a tree root lists the roots of all larger trees, then its children;
//! * any other node lists the roots of every tree of dimension `>= j`
//!   (largest first), then its children.
//!
//! Children always appear in decreasing dimension order and pruned children
//! are left out.

use crate::binomial::{local_children, local_dim, local_parent};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, SizeCap};
use crate::lists::ListAssignment;
use crate::sim::ceil_log2;

use super::Scheme;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForestDecomposition {
    pub m: u32,
    pub k: u32,
    pub r: u64,
}

impl ForestDecomposition {
    pub fn n(&self) -> u64 {
        (1u64 << self.m) - (1u64 << self.k) - self.r
    }

    pub fn tree_count(&self) -> u32 {
        self.m - self.k
    }

    /// Edge count of the forest plus root connections before merging edges
    /// that appear in both: `(m - k + 1) n - 2 (m - k)`.
    pub fn edge_budget(&self) -> u64 {
        let t = self.tree_count() as u64;
        (t + 1) * self.n() - 2 * t
    }
}

pub fn forest_decompose(n: usize) -> Result<ForestDecomposition> {
    if n < 3 {
        return Err(Error::param(format!("binomial forest needs n >= 3, got {n}")));
    }
    if n.is_power_of_two() {
        return Err(Error::param(format!(
            "n = {n} is a power of two; use the hypercube family instead"
        )));
    }
    let n = n as u64;
    let m = ceil_log2(n);
    let gap = (1u64 << m) - n;
    let k = 63 - gap.leading_zeros();
    let r = gap - (1 << k);
    Ok(ForestDecomposition { m, k, r })
}

/// Which deepest leaf of the smallest tree to prune next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PruneRule {
    /// The deepest leaf reached by preferring the highest-dimension child
    /// at every step.
    #[default]
    HighestDimFirst,
    /// The deepest leaf reached by preferring the lowest-dimension child.
    LowestDimFirst,
}

/// Local ids (see [`crate::binomial`]) of the `r` leaves to prune from a
/// binomial tree of dimension `k`, in removal order.
///
/// Removing nodes in decreasing depth always removes a leaf, because a node
/// of maximum depth among the survivors has no surviving children. Among
/// nodes of equal depth the path comparison reduces to comparing ids.
fn prune_order(k: u32, r: u64, rule: PruneRule) -> Vec<u64> {
    let mut order: Vec<u64> = (0..1u64 << k).collect();
    match rule {
        PruneRule::HighestDimFirst => {
            order.sort_unstable_by_key(|&x| (std::cmp::Reverse(x.count_ones()), std::cmp::Reverse(x)))
        }
        PruneRule::LowestDimFirst => order.sort_unstable_by_key(|&x| (std::cmp::Reverse(x.count_ones()), x)),
    }
    order.truncate(r as usize);
    order
}

#[derive(Debug, Clone)]
pub struct BinomialForest {
    pub graph: Graph,
    pub lists: ListAssignment,
    pub decomposition: ForestDecomposition,
    /// Tree roots, largest tree first.
    pub roots: Vec<NodeId>,
    /// Parent-child edges of the pruned forest, `(parent, child)`.
    pub tree_edges: Vec<(NodeId, NodeId)>,
}

impl BinomialForest {
    pub fn into_scheme(self) -> Scheme {
        Scheme {
            graph: self.graph,
            lists: self.lists,
        }
    }
}

pub fn binomial_forest(n: usize) -> Result<BinomialForest> {
    binomial_forest_with(n, PruneRule::default())
}

pub fn binomial_forest_with(n: usize, rule: PruneRule) -> Result<BinomialForest> {
    SizeCap::default().check_nodes(n as u128)?;
    let dec = forest_decompose(n)?;
    let ForestDecomposition { m, k, r } = dec;
    let trees = dec.tree_count() as usize;
    let tree_dim = |q: usize| m - 1 - q as u32;

    let mut pruned = vec![false; 1 << k];
    for x in prune_order(k, r, rule) {
        pruned[x as usize] = true;
    }
    let alive = |q: usize, x: u64| q + 1 < trees || !pruned[x as usize];

    // Global ids: trees in decreasing size, local ids in increasing order.
    let mut ids: Vec<Vec<NodeId>> = Vec::with_capacity(trees);
    let mut next: NodeId = 0;
    for q in 0..trees {
        let size = 1u64 << tree_dim(q);
        let tree_ids = (0..size)
            .map(|x| {
                if alive(q, x) {
                    next += 1;
                    next - 1
                } else {
                    NodeId::MAX
                }
            })
            .collect();
        ids.push(tree_ids);
    }
    debug_assert_eq!(next as usize, n);
    let roots: Vec<NodeId> = ids.iter().map(|t| t[0]).collect();

    let mut tree_edges = Vec::with_capacity(n);
    let mut lists = vec![Vec::new(); n];
    for q in 0..trees {
        let d = tree_dim(q);
        for x in 0..1u64 << d {
            if !alive(q, x) {
                continue;
            }
            let id = ids[q][x as usize];
            if let Some(p) = local_parent(x) {
                tree_edges.push((ids[q][p as usize], id));
            }
            let list = &mut lists[id as usize];
            if x == 0 {
                list.extend_from_slice(&roots[..q]);
            } else {
                let j = local_dim(x, d);
                list.extend((0..trees).filter(|&p| tree_dim(p) >= j).map(|p| roots[p]));
            }
            list.extend(
                local_children(x, d)
                    .filter(|&(c, _)| alive(q, c))
                    .map(|(c, _)| ids[q][c as usize]),
            );
        }
    }

    let mut edges: Vec<(NodeId, NodeId)> = tree_edges
        .iter()
        .map(|&(p, c)| (p.min(c), p.max(c)))
        .collect();
    for &root in &roots {
        for v in 0..n as NodeId {
            if v != root {
                edges.push((v.min(root), v.max(root)));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();

    let graph = Graph::new(n, edges)?;
    let lists = ListAssignment::new(&graph, lists)?;
    Ok(BinomialForest {
        graph,
        lists,
        decomposition: dec,
        roots,
        tree_edges,
    })
}
