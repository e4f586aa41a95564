//! Graph coloring engines for the interference graph.
//!
//! A color is a time-slot class: panels of one color can run in parallel.
//! Three heuristic engines are provided (Chaitin simplify/select with a
//! binary search on the color count, a genetic algorithm and an ant colony)
//! plus an exact backtracking oracle for small graphs.

mod aco;
mod chaitin;
mod genetic;
mod oracle;

pub use aco::{aco_color, aco_color_with, ant_walk, AntTour, Execution, PheromoneMatrix};
pub use chaitin::{chaitin_min_colors, chaitin_try};
pub use genetic::{count_conflicts, genetic_color, Chromosome};
pub use oracle::{chromatic_oracle, ORACLE_MAX_NODES};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interference::InterferenceGraph;
use crate::io::csv_text;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("graph has {nodes} nodes; the exact oracle accepts at most {cap}")]
    TooLarge { nodes: usize, cap: usize },
}

/// Which coloring engine to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColorAlgo {
    Chaitin,
    Ga,
    Aco,
}

impl ColorAlgo {
    pub const ALL: [ColorAlgo; 3] = [ColorAlgo::Chaitin, ColorAlgo::Ga, ColorAlgo::Aco];

    pub fn as_str(self) -> &'static str {
        match self {
            ColorAlgo::Chaitin => "chaitin",
            ColorAlgo::Ga => "ga",
            ColorAlgo::Aco => "aco",
        }
    }
}

/// Node id to color index, with colors compacted to `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub assignment: BTreeMap<String, usize>,
    pub k: usize,
}

impl Coloring {
    /// Builds a coloring from per-index colors, renumbering the colors in use
    /// to `0..k` while keeping their relative order.
    pub fn from_indices(g: &InterferenceGraph, colors: &[usize]) -> Self {
        debug_assert_eq!(colors.len(), g.node_count());
        let mut used: Vec<usize> = colors.to_vec();
        used.sort_unstable();
        used.dedup();
        let assignment = g
            .nodes()
            .iter()
            .zip(colors)
            .map(|(n, c)| {
                let compact = used.binary_search(c).expect("color is in use");
                (n.clone(), compact)
            })
            .collect();
        Coloring {
            assignment,
            k: used.len(),
        }
    }

    pub fn color_of(&self, node: &str) -> Option<usize> {
        self.assignment.get(node).copied()
    }

    /// One `node color` line per node, in id order.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for (n, c) in &self.assignment {
            let _ = writeln!(out, "{n} {c}");
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let header = vec!["node".to_string(), "color".to_string()];
        let rows = self
            .assignment
            .iter()
            .map(|(n, c)| vec![n.clone(), c.to_string()]);
        csv_text(std::iter::once(header).chain(rows))
    }

    /// Number of distinct colors actually used.
    pub fn distinct_colors(&self) -> usize {
        let mut seen: Vec<usize> = self.assignment.values().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

/// True iff every node is colored within `0..k` and no edge joins two nodes
/// of the same color.
pub fn is_valid_coloring(g: &InterferenceGraph, c: &Coloring) -> bool {
    let mut colors = Vec::with_capacity(g.node_count());
    for n in g.nodes() {
        match c.color_of(n) {
            Some(col) if col < c.k => colors.push(col),
            _ => return false,
        }
    }
    g.index_edges().all(|(i, j)| colors[i] != colors[j])
}
