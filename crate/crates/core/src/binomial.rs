//! Binomial trees.
//!
//! Node `x` of a binomial tree of dimension `d` is encoded by a `d`-bit
//! integer: the root is `0`, the parent of `x` clears its lowest set bit,
//! and the children of `x` set one bit below its lowest set bit. The
//! subtree dimension of `x` is therefore its number of trailing zeros and
//! its depth is its popcount.

use crate::error::Result;
use crate::graph::{Graph, NodeId, SizeCap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialTreeNode {
    pub id: NodeId,
    /// Dimension of the binomial subtree rooted here.
    pub dim: u32,
    pub parent: Option<NodeId>,
    /// `(child, child dim)` in strictly decreasing dim order.
    pub children: Vec<(NodeId, u32)>,
}

#[derive(Debug, Clone)]
pub struct BinomialTree {
    pub graph: Graph,
    pub root: NodeId,
    pub nodes: Vec<BinomialTreeNode>,
}

impl BinomialTree {
    pub fn depth(&self, v: NodeId) -> u32 {
        v.count_ones()
    }
}

/// Subtree dimension of local id `x` in a tree of dimension `d`.
pub(crate) fn local_dim(x: u64, d: u32) -> u32 {
    if x == 0 {
        d
    } else {
        x.trailing_zeros()
    }
}

pub(crate) fn local_parent(x: u64) -> Option<u64> {
    (x != 0).then(|| x & (x - 1))
}

/// Children of local id `x`, highest dimension first.
pub(crate) fn local_children(x: u64, d: u32) -> impl Iterator<Item = (u64, u32)> {
    (0..local_dim(x, d)).rev().map(move |i| (x | 1 << i, i))
}

pub fn make_binomial_tree(d: u32) -> Result<BinomialTree> {
    make_binomial_tree_capped(d, SizeCap::default())
}

pub fn make_binomial_tree_capped(d: u32, cap: SizeCap) -> Result<BinomialTree> {
    if d >= 64 {
        cap.check_nodes(u128::MAX)?;
    }
    cap.check_nodes(1u128 << d)?;
    let n = 1u64 << d;
    let graph = Graph::new(
        n as usize,
        (1..n).map(|x| (local_parent(x).unwrap() as NodeId, x as NodeId)),
    )?;
    let nodes = (0..n)
        .map(|x| BinomialTreeNode {
            id: x as NodeId,
            dim: local_dim(x, d),
            parent: local_parent(x).map(|p| p as NodeId),
            children: local_children(x, d)
                .map(|(c, i)| (c as NodeId, i))
                .collect(),
        })
        .collect();
    Ok(BinomialTree { graph, root: 0, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Size of the subtree hanging off `v`, counted by walking the table.
    fn subtree_size(tree: &BinomialTree, v: NodeId) -> usize {
        1 + tree.nodes[v as usize]
            .children
            .iter()
            .map(|&(c, _)| subtree_size(tree, c))
            .sum::<usize>()
    }

    #[test]
    fn single_node() {
        let t = make_binomial_tree(0).unwrap();
        assert_eq!(t.graph.node_count(), 1);
        assert_eq!(t.graph.edge_count(), 0);
        assert_eq!(t.nodes[0].dim, 0);
    }

    #[test]
    fn dimension_two() {
        let t = make_binomial_tree(2).unwrap();
        assert_eq!(t.graph.node_count(), 4);
        let dims: Vec<_> = t.nodes[0].children.iter().map(|c| c.1).collect();
        assert_eq!(dims, vec![1, 0]);
        let depths = t.graph.bfs_depths(t.root);
        assert_eq!(depths.iter().flatten().max(), Some(&2));
    }

    #[test]
    fn depth_profile_is_binomial() {
        // Count depths with a BFS over the constructed graph, independently of
        // the popcount encoding.
        let t = make_binomial_tree(4).unwrap();
        assert_eq!(t.graph.node_count(), 16);
        let depths = t.graph.bfs_depths(t.root);
        for level in 0..=4u32 {
            let count = depths.iter().filter(|&&d| d == Some(level)).count() as u64;
            assert_eq!(count, binomial(4, level as u64), "depth {level}");
        }
    }

    #[test]
    fn structural_invariants() {
        for d in 0..=8 {
            let t = make_binomial_tree(d).unwrap();
            assert_eq!(t.graph.edge_count(), (1 << d) - 1);
            assert_eq!(t.nodes[t.root as usize].dim, d);
            for node in &t.nodes {
                let dims: Vec<_> = node.children.iter().map(|c| c.1).collect();
                let expected: Vec<_> = (0..node.dim).rev().collect();
                assert_eq!(dims, expected);
                assert_eq!(subtree_size(&t, node.id), 1 << node.dim);
                for &(c, _) in &node.children {
                    assert_eq!(t.nodes[c as usize].parent, Some(node.id));
                    assert!(t.graph.has_edge(node.id, c));
                }
                assert!(t.depth(node.id) <= d);
            }
        }
    }

    #[test]
    fn splitting_the_top_edge_leaves_two_smaller_binomial_trees() {
        for d in 1..=7 {
            let t = make_binomial_tree(d).unwrap();
            let top = t.nodes[0].children[0];
            assert_eq!(top.1, d - 1);
            // Root side keeps the remaining children with dims d-2..0.
            let root_dims: Vec<_> = t.nodes[0].children[1..].iter().map(|c| c.1).collect();
            assert_eq!(root_dims, (0..d - 1).rev().collect::<Vec<_>>());
            assert_eq!(subtree_size(&t, top.0), 1 << (d - 1));
            assert_eq!(
                subtree_size(&t, 0) - subtree_size(&t, top.0),
                1 << (d - 1)
            );
        }
    }
}
