//! Conflicts between panels and the interference graph built from them.
//!
//! Two panels conflict when they share a panelist; such panels can never be
//! held at the same time. The interference graph has one node per panel
//! (named by the panel's candidate) and an edge for every conflicting pair,
//! weighted by the number of shared panelists.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Panel, Paneling};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("edge references unknown node `{0}`")]
    UnknownNode(String),
    #[error("self loop on `{0}`")]
    SelfLoop(String),
    #[error("edge {0}-{1} listed twice")]
    DuplicateEdge(String, String),
    #[error("edge {0}-{1} has zero weight")]
    ZeroWeight(String, String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An undirected edge stored once, with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InterferenceEdge {
    pub a: String,
    pub b: String,
    pub weight: usize,
}

/// Undirected graph over panel nodes. Nodes are kept in ascending id order
/// and addressed either by id or by their index in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterferenceGraph {
    nodes: Vec<String>,
    edges: Vec<InterferenceEdge>,
    adjacency: Vec<Vec<usize>>,
    weights: BTreeMap<(usize, usize), usize>,
}

/// True iff the two panels share at least one panelist.
pub fn conflict(a: &Panel, b: &Panel) -> bool {
    !a.members.is_disjoint(&b.members)
}

pub fn build_interference(pl: &Paneling) -> InterferenceGraph {
    let panels: Vec<&Panel> = pl.panels.values().collect();
    let mut edges = Vec::new();
    for (i, a) in panels.iter().enumerate() {
        for b in &panels[i + 1..] {
            let shared = a.members.intersection(&b.members).count();
            if shared > 0 {
                edges.push((a.candidate.clone(), b.candidate.clone(), shared));
            }
        }
    }
    InterferenceGraph::new(panels.iter().map(|p| p.candidate.clone()), edges)
        .expect("paneling keys are unique and edges reference them")
}

impl InterferenceGraph {
    pub fn new<N, A, B, E>(nodes: N, edges: E) -> Result<Self, GraphError>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        E: IntoIterator<Item = (A, B, usize)>,
        A: Into<String>,
        B: Into<String>,
    {
        let mut nodes: Vec<String> = nodes.into_iter().map(Into::into).collect();
        nodes.sort();
        for w in nodes.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateNode(w[0].clone()));
            }
        }
        let index = |id: &str| nodes.binary_search_by(|n| n.as_str().cmp(id)).ok();

        let mut weights = BTreeMap::new();
        for (a, b, w) in edges {
            let (a, b) = (a.into(), b.into());
            let ia = index(&a).ok_or_else(|| GraphError::UnknownNode(a.clone()))?;
            let ib = index(&b).ok_or_else(|| GraphError::UnknownNode(b.clone()))?;
            if ia == ib {
                return Err(GraphError::SelfLoop(a));
            }
            if w == 0 {
                return Err(GraphError::ZeroWeight(a, b));
            }
            let key = (ia.min(ib), ia.max(ib));
            if weights.insert(key, w).is_some() {
                return Err(GraphError::DuplicateEdge(
                    nodes[key.0].clone(),
                    nodes[key.1].clone(),
                ));
            }
        }

        let mut adjacency = vec![Vec::new(); nodes.len()];
        let mut edge_list = Vec::with_capacity(weights.len());
        for (&(i, j), &w) in &weights {
            adjacency[i].push(j);
            adjacency[j].push(i);
            edge_list.push(InterferenceEdge {
                a: nodes[i].clone(),
                b: nodes[j].clone(),
                weight: w,
            });
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        Ok(InterferenceGraph {
            nodes,
            edges: edge_list,
            adjacency,
            weights,
        })
    }

    /// Builds a graph whose edges all have weight 1.
    pub fn unweighted<N, A, B, E>(nodes: N, edges: E) -> Result<Self, GraphError>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        E: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        Self::new(nodes, edges.into_iter().map(|(a, b)| (a, b, 1)))
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[InterferenceEdge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.as_str().cmp(id)).ok()
    }

    /// Neighbour indices of node `i`, ascending.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.weights.contains_key(&(i.min(j), i.max(j)))
    }

    pub fn weight(&self, a: &str, b: &str) -> Option<usize> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        self.weights.get(&(i.min(j), i.max(j))).copied()
    }

    /// Edge pairs as node indices with `i < j`.
    pub fn index_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.weights.keys().copied()
    }

    /// DIMACS-style edge list. Node names travel in `c node <index> <id>`
    /// comment lines; indices are 1-based.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        out.push_str("c interference graph\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "c node {} {}", i + 1, n);
        }
        let _ = writeln!(out, "p edge {} {}", self.nodes.len(), self.edges.len());
        for (&(i, j), w) in &self.weights {
            let _ = writeln!(out, "e {} {} {}", i + 1, j + 1, w);
        }
        out
    }

    /// Parses [`to_edge_list`](Self::to_edge_list) output or a plain DIMACS
    /// `.col` file. Missing weights default to 1; unnamed nodes are named by
    /// their index. An edge repeated with the same weight is kept once.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let err = |line: usize, message: &str| GraphError::Parse {
            line,
            message: message.to_string(),
        };
        let mut node_count: Option<usize> = None;
        let mut names: BTreeMap<usize, String> = BTreeMap::new();
        let mut edges: BTreeMap<(usize, usize), usize> = BTreeMap::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let fields: Vec<&str> = raw.split_whitespace().collect();
            match fields.as_slice() {
                [] => {}
                ["c", "node", idx, name] => {
                    let idx: usize = idx.parse().map_err(|_| err(line, "bad node index"))?;
                    if names.insert(idx, name.to_string()).is_some() {
                        return Err(err(line, "node named twice"));
                    }
                }
                ["c", ..] => {}
                ["p", _format, n, _m] => {
                    if node_count.is_some() {
                        return Err(err(line, "second problem line"));
                    }
                    node_count = Some(n.parse().map_err(|_| err(line, "bad node count"))?);
                }
                ["e", i, j, rest @ ..] => {
                    let n = node_count.ok_or_else(|| err(line, "edge before problem line"))?;
                    let i: usize = i.parse().map_err(|_| err(line, "bad edge endpoint"))?;
                    let j: usize = j.parse().map_err(|_| err(line, "bad edge endpoint"))?;
                    let w: usize = match rest {
                        [] => 1,
                        [w] => w.parse().map_err(|_| err(line, "bad edge weight"))?,
                        _ => return Err(err(line, "too many fields")),
                    };
                    if i == 0 || j == 0 || i > n || j > n {
                        return Err(err(line, "edge endpoint out of range"));
                    }
                    if i == j {
                        return Err(err(line, "self loop"));
                    }
                    let key = (i.min(j), i.max(j));
                    match edges.insert(key, w) {
                        Some(prev) if prev != w => {
                            return Err(err(line, "edge repeated with a different weight"))
                        }
                        _ => {}
                    }
                }
                _ => return Err(err(line, "unrecognised line")),
            }
        }

        let n = node_count.ok_or_else(|| err(0, "missing problem line"))?;
        if let Some((&idx, _)) = names.iter().find(|(&idx, _)| idx == 0 || idx > n) {
            return Err(err(0, &format!("named node {idx} out of range")));
        }
        let label = |i: usize| names.get(&i).cloned().unwrap_or_else(|| i.to_string());
        let node_names: Vec<String> = (1..=n).map(label).collect();
        let unique: BTreeSet<&String> = node_names.iter().collect();
        if unique.len() != n {
            return Err(err(0, "node names are not unique"));
        }
        Self::new(
            node_names,
            edges.into_iter().map(|((i, j), w)| (label(i), label(j), w)),
        )
    }
}
