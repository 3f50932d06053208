//! Graphs paired with universal lists that broadcast in `ceil(log2 n)` rounds
//! from every source under the fully-adaptive model.

mod forest;
mod subcube;
mod tree;

pub use forest::{
    binomial_forest, binomial_forest_with, forest_decompose, ForestDecomposition, PruneRule,
};
pub use subcube::{subcube_spec, subcube_union, SubcubeSpec};
pub use tree::{lists_from_broadcast_tree, OrderedBroadcastTree};

use crate::error::Result;
use crate::graph::{make_clique, make_hypercube, Graph, NodeId};
use crate::lists::ListAssignment;

/// A graph together with a list assignment valid for it.
#[derive(Debug, Clone)]
pub struct Scheme {
    pub graph: Graph,
    pub lists: ListAssignment,
}

/// The hypercube with each node listing its neighbors by increasing
/// dimension, dimension 1 (the leftmost bit) first.
pub fn hypercube_lists(d: u32) -> Result<Scheme> {
    let graph = make_hypercube(d)?;
    let lists = dimension_order_lists(d);
    Ok(Scheme { graph, lists })
}

/// Dimension-order lists on the hypercube labeling where node id = label.
fn dimension_order_lists(d: u32) -> ListAssignment {
    let n = 1u64 << d;
    ListAssignment::from_lists(
        (0..n)
            .map(|x| (1..=d).map(|dim| (x ^ (1 << (d - dim))) as NodeId).collect())
            .collect(),
    )
}

/// The complete graph with truncated lists borrowed from a sparse spanning
/// broadcast scheme: the hypercube when `n` is a power of two, the subcube
/// union otherwise. Node ids coincide in both graphs, so no relabeling is
/// needed.
pub fn clique_lists(n: usize) -> Result<Scheme> {
    let graph = make_clique(n)?;
    let lists = if n.is_power_of_two() {
        dimension_order_lists(n.trailing_zeros())
    } else {
        subcube_union(n)?.lists
    };
    lists.validate(&graph)?;
    Ok(Scheme { graph, lists })
}
