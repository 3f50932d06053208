//! Exhaustive minimization of the worst-source broadcast time over list
//! assignments of a small graph.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::lists::ListAssignment;
use crate::sim::{ceil_log2, Model, RoundCount, Simulator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ListSpace {
    /// Every list is an ordering of the whole neighborhood.
    FullPermutations,
    /// Every list is an ordered selection of any number of neighbors.
    OrderedSubsets,
}

impl fmt::Display for ListSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ListSpace::FullPermutations => "perm",
            ListSpace::OrderedSubsets => "subset",
        })
    }
}

impl FromStr for ListSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "perm" | "permutations" => Ok(ListSpace::FullPermutations),
            "subset" | "subsets" => Ok(ListSpace::OrderedSubsets),
            _ => Err(Error::param(format!("unknown list space {s:?}; expected perm or subset"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub model: Model,
    pub list_space: ListSpace,
    pub node_budget: usize,
    pub assignment_budget: u64,
}

impl SearchConfig {
    pub const DEFAULT_PERMUTATION_NODES: usize = 14;
    pub const DEFAULT_SUBSET_NODES: usize = 10;
    pub const DEFAULT_ASSIGNMENT_BUDGET: u64 = 10_000_000;

    pub fn new(model: Model, list_space: ListSpace) -> Self {
        let node_budget = match list_space {
            ListSpace::FullPermutations => Self::DEFAULT_PERMUTATION_NODES,
            ListSpace::OrderedSubsets => Self::DEFAULT_SUBSET_NODES,
        };
        SearchConfig {
            model,
            list_space,
            node_budget,
            assignment_budget: Self::DEFAULT_ASSIGNMENT_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.node_budget == 0 || self.assignment_budget == 0 {
            return Err(Error::param("search budgets must be positive"));
        }
        if self.list_space == ListSpace::OrderedSubsets
            && self.node_budget > Self::DEFAULT_SUBSET_NODES
        {
            return Err(Error::param(format!(
                "ordered-subset search is limited to {} nodes",
                Self::DEFAULT_SUBSET_NODES
            )));
        }
        if self.node_budget > Self::DEFAULT_PERMUTATION_NODES {
            return Err(Error::param(format!(
                "list search is limited to {} nodes",
                Self::DEFAULT_PERMUTATION_NODES
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub best: RoundCount,
    pub witness: ListAssignment,
    /// False when the assignment budget ran out before the space was covered
    /// and the lower bound was not reached.
    pub exact: bool,
    pub enumerated: u64,
    /// Size of the list space, saturating.
    pub space_size: u128,
}

/// One node's list, stepped through its space in lexicographic order.
struct Arrangement {
    pool: Vec<NodeId>,
    seq: Vec<NodeId>,
    space: ListSpace,
}

impl Arrangement {
    fn new(pool: &[NodeId], space: ListSpace) -> Self {
        let mut a = Arrangement {
            pool: pool.to_vec(),
            seq: Vec::with_capacity(pool.len()),
            space,
        };
        a.reset();
        a
    }

    fn reset(&mut self) {
        self.seq.clear();
        if self.space == ListSpace::FullPermutations {
            self.seq.extend_from_slice(&self.pool);
        }
    }

    fn count(&self) -> u128 {
        let d = self.pool.len() as u128;
        match self.space {
            ListSpace::FullPermutations => (1..=d).product(),
            // sum over lengths of d! / (d - len)!
            ListSpace::OrderedSubsets => {
                let mut total = 1u128;
                let mut falling = 1u128;
                for i in 0..d {
                    falling *= d - i;
                    total += falling;
                }
                total
            }
        }
    }

    /// Steps to the next arrangement; on wrap-around resets and returns false.
    fn advance(&mut self) -> bool {
        let stepped = match self.space {
            ListSpace::FullPermutations => next_permutation(&mut self.seq),
            ListSpace::OrderedSubsets => self.next_subset(),
        };
        if !stepped {
            self.reset();
        }
        stepped
    }

    /// Preorder successor in the tree of arrangements: extend if possible,
    /// otherwise bump the last entry to the next unused larger one.
    fn next_subset(&mut self) -> bool {
        if self.seq.len() < self.pool.len() {
            let next = *self.pool.iter().find(|x| !self.seq.contains(x)).unwrap();
            self.seq.push(next);
            return true;
        }
        while let Some(last) = self.seq.pop() {
            if let Some(&next) = self.pool.iter().find(|&&x| x > last && !self.seq.contains(&x)) {
                self.seq.push(next);
                return true;
            }
        }
        false
    }
}

fn next_permutation(seq: &mut [NodeId]) -> bool {
    let Some(i) = seq.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = seq.iter().rposition(|&x| x > seq[i]).unwrap();
    seq.swap(i, j);
    seq[i + 1..].reverse();
    true
}

/// Finds a list assignment minimizing the worst-source completion time.
///
/// Assignments are enumerated with node 0 most significant and each node's
/// lists in lexicographic order; the first assignment reaching the optimum
/// is returned. A candidate is abandoned as soon as one source fails to
/// beat the incumbent, and the search stops early once the incumbent meets
/// the `ceil(log2 n)` lower bound.
pub fn optimal_list_assignment(g: &Graph, cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    if g.node_count() > cfg.node_budget {
        return Err(Error::BudgetExceeded(format!(
            "{} nodes exceed the search budget of {}",
            g.node_count(),
            cfg.node_budget
        )));
    }
    g.ensure_connected()?;

    let n = g.node_count();
    let lower = RoundCount::Finite(ceil_log2(n as u64));
    let mut nodes: Vec<Arrangement> = g
        .nodes()
        .map(|v| Arrangement::new(g.neighbors(v), cfg.list_space))
        .collect();
    let space_size = nodes
        .iter()
        .fold(1u128, |acc, a| acc.saturating_mul(a.count()));

    let mut best = RoundCount::Infinite;
    let mut witness: Option<ListAssignment> = None;
    let mut enumerated = 0u64;
    let mut first_source: NodeId = 0;
    let mut exhausted = false;

    while enumerated < cfg.assignment_budget {
        enumerated += 1;
        let candidate = ListAssignment::from_lists(nodes.iter().map(|a| a.seq.clone()).collect());
        if let Some((value, failing)) = evaluate(&candidate, cfg.model, best, first_source) {
            best = value;
            witness = Some(candidate);
            if best <= lower {
                break;
            }
            first_source = failing;
        }

        // Odometer step, last node least significant.
        let mut v = n;
        loop {
            if v == 0 {
                exhausted = true;
                break;
            }
            v -= 1;
            if nodes[v].advance() {
                break;
            }
        }
        if exhausted {
            break;
        }
    }

    let exact = exhausted || best <= lower;
    let witness = match witness {
        Some(w) => w,
        // Nothing beat infinity; the first assignment is as good as any.
        None => ListAssignment::from_lists(
            g.nodes()
                .map(|v| Arrangement::new(g.neighbors(v), cfg.list_space).seq)
                .collect(),
        ),
    };
    Ok(SearchOutcome {
        best,
        witness,
        exact,
        enumerated,
        space_size,
    })
}

/// Worst-source time of `lists` if strictly better than `incumbent`, with
/// the source attaining it. Sources are tried starting at `start`.
fn evaluate(
    lists: &ListAssignment,
    model: Model,
    incumbent: RoundCount,
    start: NodeId,
) -> Option<(RoundCount, NodeId)> {
    let n = lists.len() as NodeId;
    let mut sim = Simulator::new(lists);
    let mut worst = (RoundCount::Finite(0), start);
    for offset in 0..n {
        let s = (start + offset) % n;
        let t = match incumbent {
            RoundCount::Finite(0) => return None,
            RoundCount::Finite(b) => sim.completion_within(s, model, b - 1),
            RoundCount::Infinite => sim.completion(s, model),
        };
        if t >= incumbent {
            return None;
        }
        if t > worst.0 {
            worst = (t, s);
        }
    }
    Some(worst)
}
