//! The on-disk instance format and DOT export.
//!
//! An instance is a JSON document:
//!
//! ```json
//! {
//!   "edges": [[0, 1], [1, 2]],
//!   "labels": ["00", "01", "11"],
//!   "lists": [[1], [0, 2], [1]],
//!   "metadata": { "family": "path", "params": { "n": 3 } },
//!   "n": 3,
//!   "version": 1
//! }
//! ```
//!
//! Keys are written in sorted order and edges as sorted `[u, v]` pairs with
//! `u < v`, so serialization is byte-deterministic. `labels`, `lists` and
//! `metadata` are optional; `labels[i]` and `lists[i]` belong to node `i`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Labels, NodeId};
use crate::lists::ListAssignment;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, u64>,
}

impl Metadata {
    pub fn new(family: impl Into<String>, params: impl IntoIterator<Item = (&'static str, u64)>) -> Self {
        Metadata {
            family: family.into(),
            params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

// Fields are declared in alphabetical order so that the serialized keys are
// sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub edges: Vec<[NodeId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lists: Option<Vec<Vec<NodeId>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
    pub n: usize,
    pub version: u32,
}

impl InstanceFile {
    pub fn new(g: &Graph, lists: Option<&ListAssignment>, metadata: Option<Metadata>) -> Self {
        InstanceFile {
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            labels: g.labels().map(Labels::render_all),
            lists: lists.map(|l| l.lists().to_vec()),
            metadata,
            n: g.node_count(),
            version: FORMAT_VERSION,
        }
    }

    /// Parses and fully validates an instance.
    pub fn parse(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        file.validate()?;
        Ok(file)
    }

    /// Canonical JSON text, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Instance(format!(
                "unsupported version {}; expected {FORMAT_VERSION}",
                self.version
            )));
        }
        if !self.edges.iter().all(|[u, v]| u < v) || !self.edges.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Instance("edges must be sorted [u, v] pairs with u < v".into()));
        }
        let g = self.graph()?;
        if let Some(l) = self.list_assignment()? {
            l.validate(&g)?;
        }
        Ok(())
    }

    pub fn graph(&self) -> Result<Graph> {
        let g = Graph::new(self.n, self.edges.iter().map(|&[u, v]| (u, v)))?;
        match &self.labels {
            Some(labels) => g.with_labels(Labels::parse(labels)?),
            None => Ok(g),
        }
    }

    pub fn list_assignment(&self) -> Result<Option<ListAssignment>> {
        let Some(lists) = &self.lists else {
            return Ok(None);
        };
        if lists.len() != self.n {
            return Err(Error::Instance(format!(
                "{} lists for {} nodes",
                lists.len(),
                self.n
            )));
        }
        Ok(Some(ListAssignment::from_lists(lists.clone())))
    }
}

/// Graphviz rendering with nodes in id order, then edges in sorted order.
/// Nodes carry their bit-string label when the graph has one.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.nodes() {
        match g.labels() {
            Some(labels) => writeln!(out, "  {v} [label=\"{}\"];", labels.render(v)),
            None => writeln!(out, "  {v};"),
        }
        .unwrap();
    }
    for &(u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
