use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::lists::ListAssignment;

/// A rooted spanning tree whose children are ordered by call order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedBroadcastTree {
    root: NodeId,
    children: Vec<Vec<NodeId>>,
    parent: Vec<Option<NodeId>>,
}

impl OrderedBroadcastTree {
    /// Checks that `children` describes a tree on all `children.len()` nodes
    /// hanging off `root`.
    pub fn new(root: NodeId, children: Vec<Vec<NodeId>>) -> Result<Self> {
        let n = children.len();
        if root as usize >= n {
            return Err(Error::NodeOutOfRange { node: root, n });
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[root as usize] = true;
        let mut stack = vec![root];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &c in &children[v as usize] {
                if c as usize >= n {
                    return Err(Error::NodeOutOfRange { node: c, n });
                }
                if seen[c as usize] {
                    return Err(Error::InvalidTree(format!("node {c} is reached twice")));
                }
                seen[c as usize] = true;
                parent[c as usize] = Some(v);
                reached += 1;
                stack.push(c);
            }
        }
        if reached != n {
            return Err(Error::InvalidTree(format!(
                "tree reaches {reached} of {n} nodes"
            )));
        }
        Ok(OrderedBroadcastTree { root, children, parent })
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node_count(&self) -> usize {
        self.children.len()
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[v as usize]
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.parent[v as usize]
    }

    /// Rounds needed when the root starts and every node calls its children
    /// in order, one per round, right after being informed.
    pub fn broadcast_time(&self) -> u32 {
        let mut worst = 0;
        let mut stack = vec![(self.root, 0u32)];
        while let Some((v, t)) = stack.pop() {
            worst = worst.max(t);
            for (i, &c) in self.children[v as usize].iter().enumerate() {
                stack.push((c, t + i as u32 + 1));
            }
        }
        worst
    }

    pub fn depth(&self) -> u32 {
        let mut worst = 0;
        let mut stack = vec![(self.root, 0u32)];
        while let Some((v, d)) = stack.pop() {
            worst = worst.max(d);
            stack.extend(self.children[v as usize].iter().map(|&c| (c, d + 1)));
        }
        worst
    }
}

/// Lists where every node first calls its tree parent, then its children in
/// order. The root just calls its children.
pub fn lists_from_broadcast_tree(g: &Graph, tree: &OrderedBroadcastTree) -> Result<ListAssignment> {
    if tree.node_count() != g.node_count() {
        return Err(Error::InvalidTree(format!(
            "tree has {} nodes but the graph has {}",
            tree.node_count(),
            g.node_count()
        )));
    }
    let lists = g
        .nodes()
        .map(|v| {
            for &c in tree.children(v) {
                if !g.has_edge(v, c) {
                    return Err(Error::InvalidTree(format!(
                        "tree edge {{{v},{c}}} is not an edge of the graph"
                    )));
                }
            }
            Ok(tree
                .parent(v)
                .into_iter()
                .chain(tree.children(v).iter().copied())
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    ListAssignment::new(g, lists)
}
