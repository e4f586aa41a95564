//! Panel and schedule quality measures.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::io::csv_text;
use crate::model::{Paneling, Stage};
use crate::schedule::Schedule;
use crate::scoring::AssignmentGraph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityReport {
    pub stage: Stage,
    pub per_candidate: BTreeMap<String, f64>,
    pub avg_candidate: f64,
    pub per_panelist: BTreeMap<String, f64>,
    pub avg_panelist: f64,
    /// Panels each panelist sits on; idle panelists appear with 0.
    pub panelist_load: BTreeMap<String, usize>,
    pub time_wastage: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapse_slots: Option<usize>,
}

fn weight(g: &AssignmentGraph, p: &str, c: &str) -> f64 {
    g.weight(p, c)
        .unwrap_or_else(|| panic!("pair ({p}, {c}) is not in the assignment graph"))
}

/// Sum of the match scores between a candidate and their panel.
pub fn candidate_quality(g: &AssignmentGraph, pl: &Paneling, candidate: &str) -> f64 {
    pl.panel(candidate)
        .map(|panel| panel.members.iter().map(|p| weight(g, p, candidate)).sum())
        .unwrap_or(0.0)
}

/// Mean match score over the candidates a panelist sits with; 0 when idle.
pub fn panelist_quality(g: &AssignmentGraph, pl: &Paneling, panelist: &str) -> f64 {
    let candidates = pl.candidates_of(panelist);
    if candidates.is_empty() {
        return 0.0;
    }
    let total: f64 = candidates.iter().map(|c| weight(g, panelist, c)).sum();
    total / candidates.len() as f64
}

/// Panel memberships where the panelist shares no topic with the candidate.
pub fn time_wastage(g: &AssignmentGraph, pl: &Paneling) -> usize {
    pl.panels
        .values()
        .map(|panel| {
            panel
                .members
                .iter()
                .filter(|p| weight(g, p, &panel.candidate) < 0.0)
                .count()
        })
        .sum()
}

pub fn quality_report(g: &AssignmentGraph, pl: &Paneling, sch: Option<&Schedule>) -> QualityReport {
    let per_candidate: BTreeMap<String, f64> = g
        .candidates()
        .iter()
        .map(|c| (c.clone(), candidate_quality(g, pl, c)))
        .collect();
    let per_panelist: BTreeMap<String, f64> = g
        .panelists()
        .iter()
        .map(|p| (p.clone(), panelist_quality(g, pl, p)))
        .collect();
    let loads = pl.loads();
    let panelist_load = g
        .panelists()
        .iter()
        .map(|p| (p.clone(), loads.get(p.as_str()).copied().unwrap_or(0)))
        .collect();
    let mean = |m: &BTreeMap<String, f64>| {
        if m.is_empty() {
            0.0
        } else {
            m.values().sum::<f64>() / m.len() as f64
        }
    };
    QualityReport {
        stage: pl.stage,
        avg_candidate: mean(&per_candidate),
        avg_panelist: mean(&per_panelist),
        per_candidate,
        per_panelist,
        panelist_load,
        time_wastage: time_wastage(g, pl),
        elapse_slots: sch.map(|s| s.elapse_slots),
    }
}

impl QualityReport {
    /// Fixed-layout text rendering: summary lines, then one row per
    /// candidate and per panelist in id order.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "stage            {}", self.stage);
        let _ = writeln!(out, "avg_candidate    {:.6}", self.avg_candidate);
        let _ = writeln!(out, "avg_panelist     {:.6}", self.avg_panelist);
        let _ = writeln!(out, "time_wastage     {}", self.time_wastage);
        match self.elapse_slots {
            Some(k) => {
                let _ = writeln!(out, "elapse_slots     {k}");
            }
            None => {
                let _ = writeln!(out, "elapse_slots     -");
            }
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<20} {:>12}", "candidate", "quality");
        for (c, q) in &self.per_candidate {
            let _ = writeln!(out, "{c:<20} {q:>12.6}");
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<20} {:>12} {:>6}", "panelist", "quality", "load");
        for (p, q) in &self.per_panelist {
            let _ = writeln!(out, "{p:<20} {q:>12.6} {:>6}", self.panelist_load[p]);
        }
        out
    }
}

impl QualityReport {
    /// One row per candidate then per panelist: `kind, id, quality, load`.
    /// Candidates have an empty load column.
    pub fn to_csv(&self) -> String {
        let header = ["kind", "id", "quality", "load"].map(String::from).to_vec();
        let candidates = self
            .per_candidate
            .iter()
            .map(|(c, q)| vec!["candidate".into(), c.clone(), q.to_string(), String::new()]);
        let panelists = self.per_panelist.iter().map(|(p, q)| {
            let load = self.panelist_load[p].to_string();
            vec!["panelist".into(), p.clone(), q.to_string(), load]
        });
        csv_text(std::iter::once(header).chain(candidates).chain(panelists))
    }
}
