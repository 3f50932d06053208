#![allow(dead_code)]

use std::collections::HashSet;

use listcast::sim::{ceil_log2, simulate, Simulator};
use listcast::{Graph, ListAssignment, Model, NodeId, RoundCount, SimulationTrace};
use proptest::prelude::*;

/// A connected graph on `2..=max_n` nodes: a random tree plus random extra
/// edges at a random density.
pub fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            prop::collection::vec(any::<u32>(), n),
            Just((0..n as NodeId).collect::<Vec<_>>()).prop_shuffle(),
            prop::collection::vec(any::<u8>(), pairs),
            any::<u8>(),
        )
            .prop_map(move |(parents, perm, coins, density)| {
                let mut edges = HashSet::new();
                for v in 1..n {
                    let p = parents[v] as usize % v;
                    let (a, b) = (perm[p], perm[v]);
                    edges.insert((a.min(b), a.max(b)));
                }
                let mut i = 0;
                for u in 0..n as NodeId {
                    for v in u + 1..n as NodeId {
                        if coins[i] < density / 2 {
                            edges.insert((u, v));
                        }
                        i += 1;
                    }
                }
                Graph::new(n, edges).unwrap()
            })
    })
}

/// Lists that order each neighborhood at random; some are cut short.
pub fn lists_for(g: &Graph) -> impl Strategy<Value = ListAssignment> {
    let per_node: Vec<_> = g
        .nodes()
        .map(|v| {
            let nbrs = g.neighbors(v).to_vec();
            let deg = nbrs.len();
            (Just(nbrs).prop_shuffle(), prop_oneof![3 => Just(deg), 1 => 0..=deg])
                .prop_map(|(mut l, len)| {
                    l.truncate(len);
                    l
                })
        })
        .collect();
    per_node.prop_map(ListAssignment::from_lists)
}

pub fn instance(max_n: usize) -> impl Strategy<Value = (Graph, ListAssignment)> {
    connected_graph(max_n).prop_flat_map(|g| {
        let lists = lists_for(&g);
        (Just(g), lists)
    })
}

/// Informed rounds, per-round calls and completion.
pub type Reference = (Vec<Option<u32>>, Vec<Vec<(NodeId, NodeId)>>, Option<u32>);

/// A direct reading of the three skip rules.
pub fn reference(lists: &[Vec<NodeId>], source: NodeId, model: Model) -> Reference {
    let n = lists.len();
    let mut informed: Vec<Option<u32>> = vec![None; n];
    informed[source as usize] = Some(0);
    let mut next = vec![0usize; n];
    let mut heard: Vec<HashSet<NodeId>> = vec![HashSet::new(); n];
    let mut log = Vec::new();
    if n == 1 {
        return (informed, log, Some(0));
    }
    for t in 1u32.. {
        let mut calls = Vec::new();
        for u in 0..n {
            if !informed[u].is_some_and(|r| r < t) {
                continue;
            }
            while let Some(&w) = lists[u].get(next[u]) {
                let skip = match model {
                    Model::NonAdaptive => false,
                    Model::Adaptive => heard[u].contains(&w),
                    Model::FullyAdaptive => informed[w as usize].is_some_and(|r| r < t),
                };
                if !skip {
                    break;
                }
                next[u] += 1;
            }
            if let Some(&w) = lists[u].get(next[u]) {
                calls.push((u as NodeId, w));
                next[u] += 1;
            }
        }
        if calls.is_empty() {
            return (informed, log, None);
        }
        for &(u, w) in &calls {
            informed[w as usize].get_or_insert(t);
            heard[w as usize].insert(u);
        }
        log.push(calls);
        if informed.iter().all(Option::is_some) {
            return (informed, log, Some(t));
        }
    }
    unreachable!()
}

fn finite(r: RoundCount) -> Option<u32> {
    r.finite()
}

/// Checks every trace property for one source and model.
pub fn check_trace(g: &Graph, l: &ListAssignment, tr: &SimulationTrace) -> Result<(), String> {
    let n = g.node_count();
    let s = tr.source;
    let informed: Vec<Option<u32>> = tr.informed_at.iter().map(|&r| finite(r)).collect();
    if informed[s as usize] != Some(0) {
        return Err("source not informed at round 0".into());
    }

    let (ref_informed, ref_calls, ref_completion) = reference(l.lists(), s, tr.model);
    if ref_informed != informed || ref_calls != tr.calls || ref_completion != finite(tr.completion) {
        return Err(format!("trace differs from reference: {tr:?}"));
    }

    // Call log and informed rounds agree in both directions.
    let mut first_call: Vec<Option<u32>> = vec![None; n];
    for (i, calls) in tr.calls.iter().enumerate() {
        let t = i as u32 + 1;
        let mut callers = HashSet::new();
        for &(u, w) in calls {
            if !callers.insert(u) {
                return Err(format!("{u} calls twice in round {t}"));
            }
            if !informed[u as usize].is_some_and(|r| r < t) {
                return Err(format!("{u} calls in round {t} before being informed"));
            }
            if !g.has_edge(u, w) {
                return Err(format!("call {u}->{w} is not an edge"));
            }
            first_call[w as usize].get_or_insert(t);
        }
    }
    for v in 0..n {
        if v as NodeId != s && first_call[v] != informed[v] {
            return Err(format!("node {v}: first call {:?}, informed {:?}", first_call[v], informed[v]));
        }
    }
    match tr.completion {
        RoundCount::Finite(c) => {
            if informed.iter().any(|r| r.is_none_or(|r| r > c)) || tr.calls.len() as u32 != c {
                return Err("finite completion inconsistent with informed rounds".into());
            }
            if c < ceil_log2(n as u64) {
                return Err(format!("completion {c} beats the doubling bound"));
            }
        }
        RoundCount::Infinite => {
            if informed.iter().all(Option::is_some) {
                return Err("infinite completion with everyone informed".into());
            }
        }
    }

    // Each caller's callees form a subsequence of its list.
    let rounds = tr.calls.len() as u32;
    for u in 0..n as NodeId {
        let seq: Vec<(u32, NodeId)> = tr
            .calls
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().filter(|&&(a, _)| a == u).map(move |&(_, w)| (i as u32 + 1, w)))
            .collect();
        let list = l.list(u);
        let mut it = list.iter();
        if !seq.iter().all(|(_, w)| it.any(|x| x == w)) {
            return Err(format!("callees of {u} are not a subsequence of its list"));
        }
        match tr.model {
            Model::NonAdaptive => {
                let expect = match informed[u as usize] {
                    Some(r) => list.len().min((rounds - r) as usize),
                    None => 0,
                };
                let callees: Vec<NodeId> = seq.iter().map(|&(_, w)| w).collect();
                if callees != list[..expect] {
                    return Err(format!("non-adaptive callees of {u} are not a list prefix"));
                }
            }
            Model::Adaptive => {
                for &(t, w) in &seq {
                    let heard = tr.calls[..t as usize - 1].iter().flatten().any(|&(a, b)| a == w && b == u);
                    if heard {
                        return Err(format!("adaptive {u} calls {w} after hearing from it"));
                    }
                }
            }
            Model::FullyAdaptive => {
                for &(t, w) in &seq {
                    if informed[w as usize].is_some_and(|r| r < t) {
                        return Err(format!("fully-adaptive {u} calls informed {w} in round {t}"));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Runs every check for every source and model of one instance.
pub fn check_instance(g: &Graph, l: &ListAssignment) -> Result<(), String> {
    let mut sim = Simulator::new(l);
    for s in g.nodes() {
        let mut times = Vec::new();
        for model in [Model::FullyAdaptive, Model::Adaptive, Model::NonAdaptive] {
            let a = simulate(g, l, s, model).map_err(|e| e.to_string())?;
            let b = simulate(g, l, s, model).map_err(|e| e.to_string())?;
            if a != b || serde_json::to_string(&a).unwrap() != serde_json::to_string(&b).unwrap() {
                return Err("simulation is not deterministic".into());
            }
            check_trace(g, l, &a)?;
            if sim.completion(s, model) != a.completion {
                return Err("completion disagrees with trace".into());
            }
            if let RoundCount::Finite(c) = a.completion {
                if sim.completion_within(s, model, c) != a.completion
                    || (c > 0 && sim.completion_within(s, model, c - 1) != RoundCount::Infinite)
                {
                    return Err("completion_within disagrees with completion".into());
                }
            }
            times.push(a.completion);
        }
        if !(times[0] <= times[1] && times[1] <= times[2]) {
            return Err(format!("source {s}: dominance fails, fa/a/na = {times:?}"));
        }
    }
    Ok(())
}
