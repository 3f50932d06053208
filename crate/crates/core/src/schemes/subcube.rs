//! Broadcast graphs on any number of nodes built as a union of subcubes of
//! the `m`-dimensional hypercube, `m = ceil(log2 n)`.
//!
//! Write `n = sum_i 2^(m - d_i)` with `1 = d_1 < d_2 < ... <= m`. Subcube `i`
//! has dimension `m - d_i` and its labels start with `d_i - 1` ones followed
//! by a zero. Two nodes are adjacent iff their labels differ in one bit. A
//! node of subcube `i` walks dimensions `d_i + 1, ..., m, 1, ..., d_i`,
//! skipping any dimension whose neighbor label is not in the node set.

use crate::error::{Error, Result};
use crate::graph::{flip_dimension, Graph, Labels, NodeId, SizeCap};
use crate::lists::ListAssignment;
use crate::sim::ceil_log2;

use super::Scheme;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcubeSpec {
    pub n: usize,
    pub m: u32,
    /// Strictly increasing, starts at 1, and `n = sum 2^(m - d)`.
    pub dims: Vec<u32>,
}

impl SubcubeSpec {
    /// Label prefix shared by every node of the subcube with offset `d`:
    /// `d - 1` ones, then a zero, then `m - d` free bits.
    fn prefix(&self, d: u32) -> u64 {
        ((1u64 << (d - 1)) - 1) << (self.m - d + 1)
    }
}

pub fn subcube_spec(n: usize) -> Result<SubcubeSpec> {
    if n < 2 {
        return Err(Error::param(format!("subcube union needs n >= 2, got {n}")));
    }
    if n.is_power_of_two() {
        return Err(Error::param(format!(
            "n = {n} is a power of two; use the hypercube family instead"
        )));
    }
    let m = ceil_log2(n as u64);
    let dims = (0..m)
        .rev()
        .filter(|&e| n >> e & 1 == 1)
        .map(|e| m - e)
        .collect();
    Ok(SubcubeSpec { n, m, dims })
}

pub fn subcube_union(n: usize) -> Result<Scheme> {
    SizeCap::default().check_nodes(n as u128)?;
    let spec = subcube_spec(n)?;
    let m = spec.m;

    // Ids follow increasing label order.
    let mut labels: Vec<u64> = spec
        .dims
        .iter()
        .flat_map(|&d| {
            let prefix = spec.prefix(d);
            (0..1u64 << (m - d)).map(move |free| prefix | free)
        })
        .collect();
    labels.sort_unstable();
    debug_assert_eq!(labels.len(), n);

    let mut id_of = vec![NodeId::MAX; 1 << m];
    for (id, &label) in labels.iter().enumerate() {
        id_of[label as usize] = id as NodeId;
    }
    let lookup = |label: u64| Some(id_of[label as usize]).filter(|&id| id != NodeId::MAX);

    // Subcube offset of each node: one plus the number of leading ones.
    let offset = |label: u64| (!(label << (64 - m))).leading_zeros() + 1;

    let mut edges = Vec::new();
    let mut lists = Vec::with_capacity(n);
    for (id, &label) in labels.iter().enumerate() {
        for dim in 1..=m {
            if let Some(w) = lookup(flip_dimension(label, m, dim)) {
                if (id as NodeId) < w {
                    edges.push((id as NodeId, w));
                }
            }
        }
        let d = offset(label);
        let list = (d + 1..=m)
            .chain(1..=d)
            .filter_map(|dim| lookup(flip_dimension(label, m, dim)))
            .collect();
        lists.push(list);
    }

    let graph = Graph::new(n, edges)?.with_labels(Labels::new(m, labels)?)?;
    let lists = ListAssignment::new(&graph, lists)?;
    Ok(Scheme { graph, lists })
}
