use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// One ordered list of distinct neighbors per node. Lists may be shorter
/// than the neighborhood.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    lists: Vec<Vec<NodeId>>,
}

impl ListAssignment {
    /// Wraps raw lists without checking them against any graph.
    pub fn from_lists(lists: Vec<Vec<NodeId>>) -> Self {
        ListAssignment { lists }
    }

    /// Wraps raw lists and validates them against `g`.
    pub fn new(g: &Graph, lists: Vec<Vec<NodeId>>) -> Result<Self> {
        let l = ListAssignment { lists };
        l.validate(g)?;
        Ok(l)
    }

    pub fn empty(n: usize) -> Self {
        ListAssignment { lists: vec![Vec::new(); n] }
    }

    /// Every node lists its whole neighborhood in increasing id order.
    pub fn sorted_neighbors(g: &Graph) -> Self {
        ListAssignment {
            lists: g.nodes().map(|v| g.neighbors(v).to_vec()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: NodeId) -> &[NodeId] {
        &self.lists[v as usize]
    }

    pub fn lists(&self) -> &[Vec<NodeId>] {
        &self.lists
    }

    pub fn into_lists(self) -> Vec<Vec<NodeId>> {
        self.lists
    }

    pub fn total_len(&self) -> usize {
        self.lists.iter().map(Vec::len).sum()
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.lists.len() != g.node_count() {
            return Err(Error::InvalidLists(format!(
                "{} lists for {} nodes",
                self.lists.len(),
                g.node_count()
            )));
        }
        let mut seen = vec![u32::MAX; g.node_count()];
        for (v, list) in self.lists.iter().enumerate() {
            let v = v as NodeId;
            for &w in list {
                if !g.has_edge(v, w) {
                    return Err(Error::InvalidLists(format!(
                        "list of node {v} names {w}, which is not a neighbor"
                    )));
                }
                if seen[w as usize] == v {
                    return Err(Error::InvalidLists(format!(
                        "list of node {v} names {w} twice"
                    )));
                }
                seen[w as usize] = v;
            }
        }
        Ok(())
    }
}

impl fmt::Display for ListAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, list) in self.lists.iter().enumerate() {
            write!(f, "{v}:")?;
            for w in list {
                write!(f, " {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_path;

    #[test]
    fn validation() {
        let g = make_path(3).unwrap();
        assert!(ListAssignment::new(&g, vec![vec![1], vec![0, 2], vec![1]]).is_ok());
        assert!(ListAssignment::new(&g, vec![vec![], vec![], vec![]]).is_ok());
        assert!(ListAssignment::new(&g, vec![vec![2], vec![], vec![]]).is_err());
        assert!(ListAssignment::new(&g, vec![vec![1], vec![0, 0], vec![]]).is_err());
        assert!(ListAssignment::new(&g, vec![vec![1]]).is_err());
    }
}
