//! Topic-overlap match scores between panelists and candidates.
//!
//! A panelist and a candidate are joined by an *overlap edge* when they share
//! at least one topic. Topic, panelist and candidate scores count the overlap
//! edges they appear on, so a high score marks a generic topic or person.
//! The match score of a pair rewards rare shared topics and specialised
//! panelists:
//!
//! ```text
//! score(p, c) = (Σ_{t ∈ T(p,c)} 1 / S_t) / S_p     if T(p,c) ≠ ∅
//! score(p, c) = -1 / (1 + S_p)                     otherwise
//! ```
//!
//! Overlap scores are strictly positive and fallback scores lie in [-1, 0),
//! so any panelist sharing a topic outranks every panelist who does not.

use std::collections::{BTreeMap, BTreeSet};

use crate::model::{Instance, Stage};

/// Overlap counts for one stage of an instance.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScoreTable {
    /// Every instance topic, including those on no overlap edge (score 0).
    pub topic_score: BTreeMap<String, usize>,
    /// Every panelist of the instance.
    pub panelist_score: BTreeMap<String, usize>,
    /// Every candidate of the stage.
    pub candidate_score: BTreeMap<String, usize>,
    overlap: BTreeMap<(String, String), BTreeSet<String>>,
}

impl ScoreTable {
    /// Shared topics of `(panelist, candidate)`, if the pair has an overlap edge.
    pub fn shared_topics(&self, panelist: &str, candidate: &str) -> Option<&BTreeSet<String>> {
        self.overlap
            .get(&(panelist.to_string(), candidate.to_string()))
    }

    /// `(panelist, candidate, shared topics)` for every overlap edge, in id order.
    pub fn overlap_edges(&self) -> impl Iterator<Item = (&str, &str, &BTreeSet<String>)> {
        self.overlap
            .iter()
            .map(|((p, c), t)| (p.as_str(), c.as_str(), t))
    }

    pub fn overlap_count(&self) -> usize {
        self.overlap.len()
    }
}

pub fn build_score_table(inst: &Instance, stage: Stage) -> ScoreTable {
    let mut table = ScoreTable::default();
    for t in &inst.topics {
        table.topic_score.insert(t.id.clone(), 0);
    }
    for p in &inst.panelists {
        table.panelist_score.insert(p.id.clone(), 0);
    }
    let candidates = inst.candidates_in(stage);
    for c in &candidates {
        table.candidate_score.insert(c.id.clone(), 0);
    }

    for p in &inst.panelists {
        for c in &candidates {
            let shared: BTreeSet<String> = p.topics.intersection(&c.topics).cloned().collect();
            if shared.is_empty() {
                continue;
            }
            for t in &shared {
                *table.topic_score.entry(t.clone()).or_insert(0) += 1;
            }
            *table.panelist_score.entry(p.id.clone()).or_insert(0) += 1;
            *table.candidate_score.entry(c.id.clone()).or_insert(0) += 1;
            table.overlap.insert((p.id.clone(), c.id.clone()), shared);
        }
    }
    table
}

/// Match score of `panelist` for `candidate`.
pub fn edge_score(panelist: &str, candidate: &str, table: &ScoreTable) -> f64 {
    let sp = table.panelist_score.get(panelist).copied().unwrap_or(0) as f64;
    match table.shared_topics(panelist, candidate) {
        Some(shared) if !shared.is_empty() => {
            let rarity: f64 = shared
                .iter()
                .map(|t| 1.0 / table.topic_score[t] as f64)
                .sum();
            rarity / sp
        }
        _ => -1.0 / (1.0 + sp),
    }
}

/// Complete weighted bipartite graph between all panelists and the
/// candidates of one stage. Both sides are indexed in ascending id order.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentGraph {
    pub stage: Stage,
    pub score_table: ScoreTable,
    panelists: Vec<String>,
    candidates: Vec<String>,
    // row-major, one row per panelist
    weights: Vec<f64>,
}

impl AssignmentGraph {
    /// Builds a graph from explicit weights, `weights[p][c]` in the given id order.
    /// Ids are re-sorted; the score table is left empty.
    pub fn from_weights(
        stage: Stage,
        panelists: Vec<String>,
        candidates: Vec<String>,
        weights: &[Vec<f64>],
    ) -> Self {
        let mut p_order: Vec<usize> = (0..panelists.len()).collect();
        p_order.sort_by(|&a, &b| panelists[a].cmp(&panelists[b]));
        let mut c_order: Vec<usize> = (0..candidates.len()).collect();
        c_order.sort_by(|&a, &b| candidates[a].cmp(&candidates[b]));
        let mut flat = Vec::with_capacity(panelists.len() * candidates.len());
        for &pi in &p_order {
            for &ci in &c_order {
                flat.push(weights[pi][ci]);
            }
        }
        AssignmentGraph {
            stage,
            score_table: ScoreTable::default(),
            panelists: p_order.iter().map(|&i| panelists[i].clone()).collect(),
            candidates: c_order.iter().map(|&i| candidates[i].clone()).collect(),
            weights: flat,
        }
    }

    pub fn panelists(&self) -> &[String] {
        &self.panelists
    }

    pub fn candidates(&self) -> &[String] {
        &self.candidates
    }

    pub fn panelist_index(&self, id: &str) -> Option<usize> {
        self.panelists.binary_search_by(|p| p.as_str().cmp(id)).ok()
    }

    pub fn candidate_index(&self, id: &str) -> Option<usize> {
        self.candidates
            .binary_search_by(|c| c.as_str().cmp(id))
            .ok()
    }

    #[inline]
    pub fn weight_at(&self, panelist: usize, candidate: usize) -> f64 {
        self.weights[panelist * self.candidates.len() + candidate]
    }

    pub fn weight(&self, panelist: &str, candidate: &str) -> Option<f64> {
        Some(self.weight_at(
            self.panelist_index(panelist)?,
            self.candidate_index(candidate)?,
        ))
    }

    /// `(panelist, candidate, weight)` for every pair.
    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str, f64)> + '_ {
        self.panelists.iter().enumerate().flat_map(move |(pi, p)| {
            self.candidates
                .iter()
                .enumerate()
                .map(move |(ci, c)| (p.as_str(), c.as_str(), self.weight_at(pi, ci)))
        })
    }
}

pub fn build_assignment_graph(inst: &Instance, stage: Stage) -> AssignmentGraph {
    let score_table = build_score_table(inst, stage);
    let panelists: Vec<String> = inst
        .sorted_panelists()
        .into_iter()
        .map(|p| p.id.clone())
        .collect();
    let candidates: Vec<String> = inst
        .candidates_in(stage)
        .into_iter()
        .map(|c| c.id.clone())
        .collect();
    let mut weights = Vec::with_capacity(panelists.len() * candidates.len());
    for p in &panelists {
        for c in &candidates {
            weights.push(edge_score(p, c, &score_table));
        }
    }
    AssignmentGraph {
        stage,
        score_table,
        panelists,
        candidates,
        weights,
    }
}
