//! Round-by-round simulation of source-oblivious broadcast.
//!
//! Every informed node walks its list with a cursor, making at most one call
//! per round. The three models differ only in which entries a node may pass
//! over for free:
//!
//! * non-adaptive: none; every entry costs a round.
//! * adaptive: entries the node has received the message from.
//! * fully-adaptive: every entry informed by the end of the previous round.
//!
//! Skip decisions only see state as of the end of the previous round, so two
//! callers may hit the same uninformed callee in one round.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::lists::ListAssignment;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    NonAdaptive,
    Adaptive,
    FullyAdaptive,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::NonAdaptive, Model::Adaptive, Model::FullyAdaptive];

    pub fn short_name(self) -> &'static str {
        match self {
            Model::NonAdaptive => "na",
            Model::Adaptive => "a",
            Model::FullyAdaptive => "fa",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::NonAdaptive => "non-adaptive",
            Model::Adaptive => "adaptive",
            Model::FullyAdaptive => "fully-adaptive",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "na" | "non-adaptive" => Ok(Model::NonAdaptive),
            "a" | "adaptive" => Ok(Model::Adaptive),
            "fa" | "fully-adaptive" => Ok(Model::FullyAdaptive),
            _ => Err(Error::param(format!(
                "unknown model {s:?}; expected na, a or fa"
            ))),
        }
    }
}

/// A round number, or infinity for "never".
///
/// Serialized as a JSON integer, or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RoundCount {
    Finite(u32),
    Infinite,
}

impl RoundCount {
    pub fn finite(self) -> Option<u32> {
        match self {
            RoundCount::Finite(t) => Some(t),
            RoundCount::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, RoundCount::Finite(_))
    }
}

impl From<u32> for RoundCount {
    fn from(t: u32) -> Self {
        RoundCount::Finite(t)
    }
}

impl fmt::Display for RoundCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoundCount::Finite(t) => write!(f, "{t}"),
            RoundCount::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for RoundCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RoundCount::Finite(t) => s.serialize_u32(*t),
            RoundCount::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for RoundCount {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(t) => Ok(RoundCount::Finite(t)),
            Raw::Str(s) if s == "inf" => Ok(RoundCount::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected a round number or \"inf\", got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulationTrace {
    pub source: NodeId,
    pub model: Model,
    /// Round at which each node first holds the message; the source is 0.
    pub informed_at: Vec<RoundCount>,
    /// `calls[t - 1]` holds the `(caller, callee)` pairs of round `t`,
    /// sorted by caller.
    pub calls: Vec<Vec<(NodeId, NodeId)>>,
    pub completion: RoundCount,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BroadcastTimes {
    pub worst: RoundCount,
    pub per_source: Vec<RoundCount>,
}

const NEVER: u32 = u32::MAX;

/// Reusable scratch state for simulating many sources on one instance.
///
/// Callers are responsible for validating the lists; [`simulate`] and
/// [`max_broadcast_time`] do so before handing off here.
pub struct Simulator<'a> {
    lists: &'a ListAssignment,
    informed_at: Vec<u32>,
    cursor: Vec<u32>,
    active: Vec<NodeId>,
    pending: Vec<(NodeId, NodeId)>,
    heard_from: Vec<Vec<NodeId>>,
}

impl<'a> Simulator<'a> {
    pub fn new(lists: &'a ListAssignment) -> Self {
        let n = lists.len();
        Simulator {
            lists,
            informed_at: vec![NEVER; n],
            cursor: vec![0; n],
            active: Vec::with_capacity(n),
            pending: Vec::with_capacity(n),
            heard_from: Vec::new(),
        }
    }

    /// Completion round from `source`.
    pub fn completion(&mut self, source: NodeId, model: Model) -> RoundCount {
        self.run(source, model, None, |_, _, _| {})
    }

    /// Like [`completion`](Self::completion) but gives up with `Infinite`
    /// once round `limit` has passed without completing.
    pub fn completion_within(&mut self, source: NodeId, model: Model, limit: u32) -> RoundCount {
        self.run(source, model, Some(limit), |_, _, _| {})
    }

    pub fn trace(&mut self, source: NodeId, model: Model) -> SimulationTrace {
        let mut calls: Vec<Vec<(NodeId, NodeId)>> = Vec::new();
        let completion = self.run(source, model, None, |t, u, w| {
            if calls.len() < t as usize {
                calls.resize_with(t as usize, Vec::new);
            }
            calls[t as usize - 1].push((u, w));
        });
        for round in &mut calls {
            round.sort_unstable();
        }
        let informed_at = self
            .informed_at
            .iter()
            .map(|&t| if t == NEVER { RoundCount::Infinite } else { RoundCount::Finite(t) })
            .collect();
        SimulationTrace {
            source,
            model,
            informed_at,
            calls,
            completion,
        }
    }

    fn run(
        &mut self,
        source: NodeId,
        model: Model,
        limit: Option<u32>,
        mut on_call: impl FnMut(u32, NodeId, NodeId),
    ) -> RoundCount {
        let n = self.lists.len();
        self.informed_at.fill(NEVER);
        self.cursor.fill(0);
        self.active.clear();
        if model == Model::Adaptive {
            self.heard_from.resize_with(n, Vec::new);
            self.heard_from.iter_mut().for_each(Vec::clear);
        }
        self.informed_at[source as usize] = 0;
        self.active.push(source);
        let mut informed = 1;
        if informed == n {
            return RoundCount::Finite(0);
        }

        let mut t = 0u32;
        loop {
            t += 1;
            if limit.is_some_and(|lim| t > lim) {
                return RoundCount::Infinite;
            }
            self.pending.clear();

            // Pick each active node's callee, dropping nodes whose lists ran out.
            let mut keep = 0;
            for i in 0..self.active.len() {
                let v = self.active[i];
                let list = self.lists.list(v);
                let mut c = self.cursor[v as usize] as usize;
                match model {
                    Model::NonAdaptive => {}
                    Model::Adaptive => {
                        let heard = &self.heard_from[v as usize];
                        while c < list.len() && heard.contains(&list[c]) {
                            c += 1;
                        }
                    }
                    Model::FullyAdaptive => {
                        while c < list.len() && self.informed_at[list[c] as usize] < t {
                            c += 1;
                        }
                    }
                }
                if c == list.len() {
                    self.cursor[v as usize] = c as u32;
                    continue;
                }
                self.pending.push((v, list[c]));
                self.cursor[v as usize] = c as u32 + 1;
                self.active[keep] = v;
                keep += 1;
            }
            self.active.truncate(keep);

            if self.pending.is_empty() {
                return RoundCount::Infinite;
            }

            for &(v, w) in &self.pending {
                on_call(t, v, w);
                if self.informed_at[w as usize] == NEVER {
                    self.informed_at[w as usize] = t;
                    self.active.push(w);
                    informed += 1;
                }
                if model == Model::Adaptive {
                    self.heard_from[w as usize].push(v);
                }
            }
            if informed == n {
                return RoundCount::Finite(t);
            }
        }
    }
}

fn check_instance(g: &Graph, l: &ListAssignment) -> Result<()> {
    l.validate(g)?;
    g.ensure_connected()
}

/// Simulates broadcast from `source` and records every call.
pub fn simulate(g: &Graph, l: &ListAssignment, source: NodeId, model: Model) -> Result<SimulationTrace> {
    check_instance(g, l)?;
    if !g.contains(source) {
        return Err(Error::NodeOutOfRange { node: source, n: g.node_count() });
    }
    Ok(Simulator::new(l).trace(source, model))
}

/// Completion time from every source, and the worst of them.
pub fn max_broadcast_time(g: &Graph, l: &ListAssignment, model: Model) -> Result<BroadcastTimes> {
    check_instance(g, l)?;
    Ok(max_broadcast_time_unchecked(l, model))
}

pub(crate) fn max_broadcast_time_unchecked(l: &ListAssignment, model: Model) -> BroadcastTimes {
    let mut sim = Simulator::new(l);
    let per_source: Vec<_> = (0..l.len() as NodeId)
        .map(|s| sim.completion(s, model))
        .collect();
    let worst = per_source.iter().copied().max().unwrap_or(RoundCount::Finite(0));
    BroadcastTimes { worst, per_source }
}

/// `ceil(log2 n)`, the doubling lower bound on broadcast from any source.
pub fn ceil_log2(n: u64) -> u32 {
    assert!(n >= 1, "ceil_log2 of zero");
    64 - (n - 1).leading_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_clique, make_path};

    #[test]
    fn ceil_log2_values() {
        let cases = [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4), (4096, 12)];
        for (n, expected) in cases {
            assert_eq!(ceil_log2(n), expected, "n={n}");
        }
    }

    #[test]
    fn single_edge() {
        let g = make_clique(2).unwrap();
        let l = ListAssignment::new(&g, vec![vec![1], vec![0]]).unwrap();
        let trace = simulate(&g, &l, 0, Model::FullyAdaptive).unwrap();
        assert_eq!(trace.completion, RoundCount::Finite(1));
        assert_eq!(trace.calls, vec![vec![(0, 1)]]);
        assert_eq!(max_broadcast_time(&g, &l, Model::FullyAdaptive).unwrap().worst, 1.into());
    }

    #[test]
    fn three_node_path_by_hand() {
        let g = make_path(3).unwrap();
        let l = ListAssignment::new(&g, vec![vec![1], vec![0, 2], vec![1]]).unwrap();

        let na = simulate(&g, &l, 0, Model::NonAdaptive).unwrap();
        assert_eq!(na.calls, vec![vec![(0, 1)], vec![(1, 0)], vec![(1, 2)]]);
        assert_eq!(na.completion, 3.into());

        let fa = simulate(&g, &l, 0, Model::FullyAdaptive).unwrap();
        assert_eq!(fa.calls, vec![vec![(0, 1)], vec![(1, 2)]]);
        assert_eq!(fa.completion, 2.into());

        // Node 1 heard from 0, so the adaptive model skips it too.
        let a = simulate(&g, &l, 0, Model::Adaptive).unwrap();
        assert_eq!(a.completion, 2.into());
    }

    #[test]
    fn adaptive_wastes_calls_on_nodes_it_did_not_hear_from() {
        // Triangle: 0 calls 1 then 2; 1 calls 2 then 0. From 0, round 1: 0->1.
        // Round 2: 0->2 and 1->2 collide. Adaptive node 2 heard from both.
        let g = make_clique(3).unwrap();
        let l = ListAssignment::new(&g, vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
        let a = simulate(&g, &l, 0, Model::Adaptive).unwrap();
        assert_eq!(a.calls[1], vec![(0, 2), (1, 2)]);
        assert_eq!(a.completion, 2.into());
    }

    #[test]
    fn empty_lists_never_complete() {
        let g = make_clique(2).unwrap();
        let l = ListAssignment::empty(2);
        let trace = simulate(&g, &l, 0, Model::FullyAdaptive).unwrap();
        assert_eq!(trace.completion, RoundCount::Infinite);
        assert_eq!(trace.informed_at, vec![0.into(), RoundCount::Infinite]);
        assert!(trace.calls.is_empty());
    }

    #[test]
    fn single_node_completes_at_round_zero() {
        let g = make_clique(1).unwrap();
        let l = ListAssignment::empty(1);
        assert_eq!(simulate(&g, &l, 0, Model::NonAdaptive).unwrap().completion, 0.into());
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = make_path(3).unwrap();
        let l = ListAssignment::sorted_neighbors(&g);
        assert!(matches!(
            simulate(&g, &l, 3, Model::FullyAdaptive),
            Err(Error::NodeOutOfRange { .. })
        ));
        let bad = ListAssignment::from_lists(vec![vec![2], vec![], vec![]]);
        assert!(simulate(&g, &bad, 0, Model::FullyAdaptive).is_err());
        let split = Graph::new(3, [(0, 1)]).unwrap();
        let l = ListAssignment::sorted_neighbors(&split);
        assert!(matches!(
            simulate(&split, &l, 0, Model::FullyAdaptive),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn limit_cuts_off() {
        let g = make_path(5).unwrap();
        let l = ListAssignment::sorted_neighbors(&g);
        let mut sim = Simulator::new(&l);
        assert_eq!(sim.completion(0, Model::FullyAdaptive), 4.into());
        assert_eq!(sim.completion_within(0, Model::FullyAdaptive, 4), 4.into());
        assert_eq!(sim.completion_within(0, Model::FullyAdaptive, 3), RoundCount::Infinite);
    }

    #[test]
    fn round_count_ordering_and_serde() {
        assert!(RoundCount::Finite(u32::MAX - 1) < RoundCount::Infinite);
        let json = serde_json::to_string(&[RoundCount::Finite(3), RoundCount::Infinite]).unwrap();
        assert_eq!(json, r#"[3,"inf"]"#);
        let back: Vec<RoundCount> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![RoundCount::Finite(3), RoundCount::Infinite]);
        assert!(serde_json::from_str::<RoundCount>(r#""never""#).is_err());
    }

    #[test]
    fn model_names_round_trip() {
        for m in Model::ALL {
            assert_eq!(m.short_name().parse::<Model>().unwrap(), m);
            assert_eq!(m.name().parse::<Model>().unwrap(), m);
        }
        assert!("x".parse::<Model>().is_err());
    }
}
