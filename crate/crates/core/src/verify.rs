//! Verification campaigns: build each family over a parameter range, simulate
//! every source, and compare against `ceil(log2 n)` and the edge budgets.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{edge_budget_subcube, leading_ones, sparsity_limit, SPARSITY_CONSTANT};
use crate::error::{Error, Result};
use crate::graph::{make_two_cycles, Graph, NodeId};
use crate::oracle::Oracle;
use crate::schemes::{
    binomial_forest, clique_lists, hypercube_lists, lists_from_broadcast_tree, subcube_union,
};
use crate::search::{optimal_list_assignment, ListSpace, SearchConfig};
use crate::sim::{ceil_log2, max_broadcast_time, Model, RoundCount};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Parameterized by dimension `d`.
    Hypercube,
    Clique,
    SubcubeUnion,
    BinomialForest,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Hypercube,
        Family::Clique,
        Family::SubcubeUnion,
        Family::BinomialForest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Hypercube => "hypercube",
            Family::Clique => "clique",
            Family::SubcubeUnion => "subcube-union",
            Family::BinomialForest => "binomial-forest",
        }
    }

    /// Whether the family is defined at this parameter. Powers of two are
    /// left to the hypercube.
    pub fn applies(self, param: u64) -> bool {
        match self {
            Family::Hypercube => param <= 20,
            Family::Clique => param >= 1,
            Family::SubcubeUnion => param >= 2 && !param.is_power_of_two(),
            Family::BinomialForest => param >= 3 && !param.is_power_of_two(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hypercube" => Ok(Family::Hypercube),
            "clique" => Ok(Family::Clique),
            "subcube-union" | "theorem1" => Ok(Family::SubcubeUnion),
            "binomial-forest" | "theorem2" => Ok(Family::BinomialForest),
            _ => Err(Error::param(format!(
                "unknown family {s:?}; expected hypercube, clique, theorem1 or theorem2"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestColumns {
    pub k: u32,
    pub r: u64,
    pub leading_ones: u32,
    /// `m - k - 1`, expected to track `L(n)`.
    pub trees_minus_one: u32,
    /// Set when `m - k - 1` is not within one of `L(n)`.
    pub flagged: bool,
    pub sparsity_limit: u64,
    pub sparsity_constant: u64,
    pub sparsity_ok: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub model: Model,
    pub worst_rounds: RoundCount,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub family: Family,
    pub n: usize,
    pub m: u32,
    pub nodes: usize,
    pub edges: usize,
    pub edge_budget: u64,
    pub min_degree: usize,
    pub max_degree: usize,
    pub worst_rounds: RoundCount,
    pub expected_rounds: u32,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forest: Option<ForestColumns>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: Family,
    pub records: Vec<VerificationRecord>,
    /// Parameters outside the family's domain.
    pub skipped: Vec<u64>,
}

impl FamilyReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass && r.forest.is_none_or(|f| f.sparsity_ok))
    }
}

/// Verifies one family member; `None` when the family skips `param`.
///
/// Pass/fail always uses the fully-adaptive model; `compare` adds a column
/// for another model without affecting the verdict.
pub fn verify_one(family: Family, param: u64, compare: Option<Model>) -> Result<Option<VerificationRecord>> {
    if !family.applies(param) {
        return Ok(None);
    }
    let started = Instant::now();
    let (scheme, edge_budget, forest) = match family {
        Family::Hypercube => {
            let s = hypercube_lists(param as u32)?;
            (s, param * ((1u64 << param) / 2), None)
        }
        Family::Clique => {
            let s = clique_lists(param as usize)?;
            (s, param * (param - 1) / 2, None)
        }
        Family::SubcubeUnion => {
            let s = subcube_union(param as usize)?;
            (s, edge_budget_subcube(param as usize), None)
        }
        Family::BinomialForest => {
            let f = binomial_forest(param as usize)?;
            let dec = f.decomposition;
            let l = leading_ones(param)?;
            let trees_minus_one = dec.m - dec.k - 1;
            let limit = sparsity_limit(param as usize)?;
            let columns = ForestColumns {
                k: dec.k,
                r: dec.r,
                leading_ones: l,
                trees_minus_one,
                flagged: trees_minus_one + 1 < l || trees_minus_one > l + 1,
                sparsity_limit: limit,
                sparsity_constant: SPARSITY_CONSTANT,
                sparsity_ok: f.graph.edge_count() as u64 <= limit,
            };
            (f.into_scheme(), dec.edge_budget(), Some(columns))
        }
    };
    let g = &scheme.graph;
    let n = g.node_count();
    let times = max_broadcast_time(g, &scheme.lists, Model::FullyAdaptive)?;
    let comparison = match compare {
        Some(model) if model != Model::FullyAdaptive => Some(Comparison {
            model,
            worst_rounds: max_broadcast_time(g, &scheme.lists, model)?.worst,
        }),
        _ => None,
    };
    let expected_rounds = ceil_log2(n as u64);
    let edges = g.edge_count();
    let pass = times.worst == RoundCount::Finite(expected_rounds) && edges as u64 <= edge_budget;
    Ok(Some(VerificationRecord {
        family,
        n,
        m: expected_rounds,
        nodes: n,
        edges,
        edge_budget,
        min_degree: g.nodes().map(|v| g.degree(v)).min().unwrap_or(0),
        max_degree: g.nodes().map(|v| g.degree(v)).max().unwrap_or(0),
        worst_rounds: times.worst,
        expected_rounds,
        pass,
        forest,
        comparison,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
    }))
}

/// Runs [`verify_one`] over a parameter range (`d` for the hypercube, `n`
/// otherwise). Records come back sorted by parameter.
pub fn verify_family(
    family: Family,
    range: RangeInclusive<u64>,
    compare: Option<Model>,
) -> Result<FamilyReport> {
    let results: Vec<(u64, Option<VerificationRecord>)> = range
        .into_par_iter()
        .map(|p| verify_one(family, p, compare).map(|r| (p, r)))
        .collect::<Result<_>>()?;
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for (p, r) in results {
        match r {
            Some(r) => records.push(r),
            None => skipped.push(p),
        }
    }
    Ok(FamilyReport { family, records, skipped })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationRow {
    pub k: usize,
    pub nodes: usize,
    /// `b(G_k)` from the oracle.
    pub classic: u32,
    pub expected_classic: u32,
    /// Minimum over full-permutation lists of the fully-adaptive worst case.
    pub list_optimum: RoundCount,
    pub exact: bool,
    pub strict: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
}

/// Classic versus list-based broadcast time on the two-cycle family.
pub fn separation_report(ks: RangeInclusive<usize>, compare: Option<Model>) -> Result<Vec<SeparationRow>> {
    ks.map(|k| {
        let g = make_two_cycles(k)?;
        let classic = Oracle::default().broadcast_time_all(&g)?.worst;
        let cfg = SearchConfig::new(Model::FullyAdaptive, ListSpace::FullPermutations);
        let out = optimal_list_assignment(&g, &cfg)?;
        let comparison = match compare {
            Some(model) if model != Model::FullyAdaptive => {
                let cfg = SearchConfig::new(model, ListSpace::FullPermutations);
                Some(Comparison {
                    model,
                    worst_rounds: optimal_list_assignment(&g, &cfg)?.best,
                })
            }
            _ => None,
        };
        Ok(SeparationRow {
            k,
            nodes: g.node_count(),
            classic,
            expected_classic: 2 * k as u32 + 1,
            list_optimum: out.best,
            exact: out.exact,
            strict: out.best > RoundCount::Finite(classic),
            comparison,
        })
    })
    .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeListReport {
    /// Source minimizing the classic broadcast time (smallest id on ties).
    pub best_source: NodeId,
    pub classic_min: u32,
    /// In-order broadcast time of the extracted tree from its root.
    pub tree_time: u32,
    pub bound: u32,
    pub measured: RoundCount,
    pub pass: bool,
}

/// Builds parent-first lists from an optimal broadcast tree rooted at the
/// best source and checks the worst fully-adaptive time against twice the
/// best classic time.
pub fn verify_tree_lists(g: &Graph, node_budget: usize) -> Result<TreeListReport> {
    let oracle = Oracle::new(node_budget)?;
    let classic = oracle.broadcast_time_all(g)?;
    let best_source = classic.best_source();
    let (classic_min, tree) = oracle.optimal_tree(g, best_source)?;
    let lists = lists_from_broadcast_tree(g, &tree)?;
    let measured = max_broadcast_time(g, &lists, Model::FullyAdaptive)?.worst;
    let tree_time = tree.broadcast_time();
    let bound = 2 * classic_min;
    Ok(TreeListReport {
        best_source,
        classic_min,
        tree_time,
        bound,
        measured,
        pass: measured <= RoundCount::Finite(bound) && measured <= RoundCount::Finite(2 * tree_time),
    })
}
