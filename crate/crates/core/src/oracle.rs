//! Exact classic broadcast time by exhaustive search over informed sets.
//!
//! A state is the bitmask of informed nodes. One round moves from a state to
//! the union of it with the callees of some matching from informed to
//! uninformed nodes. Since informing more nodes never hurts, only maximal
//! callee sets are expanded. Breadth-first search over states then yields
//! the minimum number of rounds.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::schemes::OrderedBroadcastTree;

/// Exhaustive oracle with a cap on the node count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    node_budget: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicTimes {
    /// `b(G)`, the worst source.
    pub worst: u32,
    pub per_source: Vec<u32>,
}

impl ClassicTimes {
    /// Smallest-id source achieving the minimum.
    pub fn best_source(&self) -> NodeId {
        let best = *self.per_source.iter().min().unwrap();
        self.per_source.iter().position(|&t| t == best).unwrap() as NodeId
    }
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { node_budget: Self::DEFAULT_NODE_BUDGET }
    }
}

impl Oracle {
    pub const DEFAULT_NODE_BUDGET: usize = 14;
    /// States are 32-bit masks and the search is exponential anyway.
    pub const MAX_NODE_BUDGET: usize = 24;

    pub fn new(node_budget: usize) -> Result<Self> {
        if node_budget == 0 || node_budget > Self::MAX_NODE_BUDGET {
            return Err(Error::param(format!(
                "oracle node budget must be in 1..={}, got {node_budget}",
                Self::MAX_NODE_BUDGET
            )));
        }
        Ok(Oracle { node_budget })
    }

    pub fn node_budget(&self) -> usize {
        self.node_budget
    }

    fn check(&self, g: &Graph) -> Result<()> {
        if g.node_count() > self.node_budget {
            return Err(Error::BudgetExceeded(format!(
                "{} nodes exceed the oracle budget of {}",
                g.node_count(),
                self.node_budget
            )));
        }
        g.ensure_connected()
    }

    /// `b(G, s)`.
    pub fn broadcast_time(&self, g: &Graph, s: NodeId) -> Result<u32> {
        Ok(self.search(g, s)?.rounds)
    }

    pub fn broadcast_time_all(&self, g: &Graph) -> Result<ClassicTimes> {
        let per_source = g
            .nodes()
            .map(|s| self.broadcast_time(g, s))
            .collect::<Result<Vec<_>>>()?;
        let worst = per_source.iter().copied().max().unwrap_or(0);
        Ok(ClassicTimes { worst, per_source })
    }

    /// An optimal schedule from `s`, as an ordered spanning tree whose
    /// in-order broadcast takes at most `b(G, s)` rounds.
    pub fn optimal_tree(&self, g: &Graph, s: NodeId) -> Result<(u32, OrderedBroadcastTree)> {
        let found = self.search(g, s)?;
        let n = g.node_count();
        let masks = neighbor_masks(g);
        let mut parent_round: Vec<Option<(NodeId, u32)>> = vec![None; n];
        for (round, pair) in found.path.windows(2).enumerate() {
            let (before, after) = (pair[0], pair[1]);
            for (caller, callee) in matching(&masks, before, after & !before) {
                parent_round[callee as usize] = Some((caller, round as u32 + 1));
            }
        }
        let mut children: Vec<Vec<(u32, NodeId)>> = vec![Vec::new(); n];
        for (v, pr) in parent_round.iter().enumerate() {
            if let Some((p, t)) = *pr {
                children[p as usize].push((t, v as NodeId));
            }
        }
        let children = children
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.into_iter().map(|(_, v)| v).collect()
            })
            .collect();
        let tree = OrderedBroadcastTree::new(s, children)?;
        debug_assert!(tree.broadcast_time() <= found.rounds);
        Ok((found.rounds, tree))
    }

    fn search(&self, g: &Graph, s: NodeId) -> Result<Found> {
        self.check(g)?;
        if !g.contains(s) {
            return Err(Error::NodeOutOfRange { node: s, n: g.node_count() });
        }
        let n = g.node_count();
        let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let start = 1u32 << s;
        if start == full {
            return Ok(Found { rounds: 0, path: vec![start] });
        }
        let masks = neighbor_masks(g);
        let mut prev: HashMap<u32, u32> = HashMap::from([(start, start)]);
        let mut frontier = vec![start];
        let mut rounds = 0;
        loop {
            rounds += 1;
            let mut next = Vec::new();
            for &state in &frontier {
                for new in maximal_callee_sets(&masks, state) {
                    let reached = state | new;
                    if prev.contains_key(&reached) {
                        continue;
                    }
                    prev.insert(reached, state);
                    if reached == full {
                        let mut path = vec![full];
                        let mut cur = full;
                        while cur != start {
                            cur = prev[&cur];
                            path.push(cur);
                        }
                        path.reverse();
                        return Ok(Found { rounds, path });
                    }
                    next.push(reached);
                }
            }
            debug_assert!(!next.is_empty(), "connected graphs always progress");
            next.sort_unstable();
            frontier = next;
        }
    }
}

struct Found {
    rounds: u32,
    /// Informed sets after rounds 0, 1, ..., `rounds`.
    path: Vec<u32>,
}

fn neighbor_masks(g: &Graph) -> Vec<u32> {
    g.nodes()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

fn bits(mut mask: u32) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let b = mask.trailing_zeros();
            mask &= mask - 1;
            b
        })
    })
}

/// All inclusion-maximal sets of uninformed nodes that can be called in one
/// round from `informed`, in increasing mask order.
fn maximal_callee_sets(masks: &[u32], informed: u32) -> Vec<u32> {
    let callers: Vec<u32> = bits(informed)
        .filter(|&v| masks[v as usize] & !informed != 0)
        .collect();

    // Depth-first over callers, each either idle or calling a fresh target.
    // (caller index, chosen) pairs are expanded once.
    let mut reachable: HashSet<u32> = HashSet::new();
    let mut expanded: HashSet<(usize, u32)> = HashSet::new();
    let mut stack = vec![(0usize, 0u32)];
    while let Some((i, chosen)) = stack.pop() {
        if !expanded.insert((i, chosen)) {
            continue;
        }
        if i == callers.len() {
            reachable.insert(chosen);
            continue;
        }
        stack.push((i + 1, chosen));
        for w in bits(masks[callers[i] as usize] & !informed & !chosen) {
            stack.push((i + 1, chosen | 1 << w));
        }
    }

    let uninformed_reachable = callers.iter().fold(0u32, |m, &v| m | masks[v as usize]) & !informed;
    let mut maximal: Vec<u32> = reachable
        .iter()
        .copied()
        .filter(|&set| bits(uninformed_reachable & !set).all(|x| !reachable.contains(&(set | 1 << x))))
        .collect();
    maximal.sort_unstable();
    maximal
}

/// A matching from `informed` callers onto every node of `targets`, by
/// augmenting paths with smallest ids tried first.
fn matching(masks: &[u32], informed: u32, targets: u32) -> Vec<(NodeId, NodeId)> {
    let n = masks.len();
    let mut caller_of: Vec<Option<u32>> = vec![None; n];
    let mut target_of: Vec<Option<u32>> = vec![None; n];

    fn augment(
        w: u32,
        masks: &[u32],
        informed: u32,
        seen: &mut u32,
        caller_of: &mut [Option<u32>],
        target_of: &mut [Option<u32>],
    ) -> bool {
        for u in bits(masks[w as usize] & informed & !*seen) {
            *seen |= 1 << u;
            let free = match target_of[u as usize] {
                None => true,
                Some(other) => augment(other, masks, informed, seen, caller_of, target_of),
            };
            if free {
                target_of[u as usize] = Some(w);
                caller_of[w as usize] = Some(u);
                return true;
            }
        }
        false
    }

    for w in bits(targets) {
        let mut seen = 0u32;
        let ok = augment(w, masks, informed, &mut seen, &mut caller_of, &mut target_of);
        debug_assert!(ok, "target set was produced by a matching");
    }
    bits(targets)
        .map(|w| (caller_of[w as usize].unwrap(), w))
        .collect()
}

/// `b(G, s)` with the default budget.
pub fn classic_broadcast_time(g: &Graph, s: NodeId) -> Result<u32> {
    Oracle::default().broadcast_time(g, s)
}

/// `b(G)` and the per-source times with the default budget.
pub fn classic_broadcast_time_all(g: &Graph) -> Result<ClassicTimes> {
    Oracle::default().broadcast_time_all(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_clique, make_cycle, make_hypercube, make_path, make_star, make_two_cycles};

    #[test]
    fn five_cycle() {
        let g = make_cycle(5).unwrap();
        for s in g.nodes() {
            assert_eq!(classic_broadcast_time(&g, s).unwrap(), 3);
        }
    }

    #[test]
    fn small_cliques_and_cubes() {
        let k4 = make_clique(4).unwrap();
        assert!(k4.nodes().all(|s| classic_broadcast_time(&k4, s).unwrap() == 2));
        assert_eq!(classic_broadcast_time_all(&make_hypercube(3).unwrap()).unwrap().worst, 3);
        assert_eq!(classic_broadcast_time_all(&make_clique(2).unwrap()).unwrap().worst, 1);
        assert_eq!(classic_broadcast_time_all(&make_clique(1).unwrap()).unwrap().worst, 0);
    }

    #[test]
    fn two_cycle_family() {
        let g1 = make_two_cycles(1).unwrap();
        let t1 = classic_broadcast_time_all(&g1).unwrap();
        assert_eq!(t1.worst, 3);
        assert_eq!(t1.per_source[0], 3);
        let g2 = make_two_cycles(2).unwrap();
        assert_eq!(classic_broadcast_time_all(&g2).unwrap().worst, 5);
    }

    #[test]
    fn stars_and_paths() {
        let star = make_star(3).unwrap();
        assert_eq!(classic_broadcast_time(&star, 0).unwrap(), 3);
        assert_eq!(classic_broadcast_time(&star, 1).unwrap(), 3);
        let path = make_path(4).unwrap();
        assert_eq!(classic_broadcast_time(&path, 1).unwrap(), 2);
        assert_eq!(classic_broadcast_time(&path, 0).unwrap(), 3);
    }

    #[test]
    fn maximal_sets_on_a_star() {
        // Center informed, three uninformed leaves: any single leaf.
        let masks = neighbor_masks(&make_star(3).unwrap());
        assert_eq!(maximal_callee_sets(&masks, 0b0001), vec![0b0010, 0b0100, 0b1000]);
    }

    #[test]
    fn extracted_tree_is_optimal() {
        for g in [make_two_cycles(1).unwrap(), make_hypercube(3).unwrap(), make_path(6).unwrap()] {
            for s in g.nodes() {
                let (b, tree) = Oracle::default().optimal_tree(&g, s).unwrap();
                assert_eq!(tree.root(), s);
                assert!(tree.broadcast_time() <= b);
                assert_eq!(tree.broadcast_time(), b);
                for v in g.nodes() {
                    for &c in tree.children(v) {
                        assert!(g.has_edge(v, c));
                    }
                }
            }
        }
    }

    #[test]
    fn budget_and_connectivity() {
        let big = make_path(15).unwrap();
        assert!(matches!(classic_broadcast_time(&big, 0), Err(Error::BudgetExceeded(_))));
        assert_eq!(Oracle::new(15).unwrap().broadcast_time(&big, 0).unwrap(), 14);
        let split = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(classic_broadcast_time(&split, 0), Err(Error::Disconnected)));
        assert!(Oracle::new(0).is_err());
        assert!(Oracle::new(25).is_err());
    }
}
