use std::collections::BTreeSet;

use super::AssignError;
use crate::model::{Panel, Paneling};
use crate::scoring::AssignmentGraph;

/// Greedy assignment over candidates in ascending id order.
pub fn assign_edge_sorting(
    g: &AssignmentGraph,
    panel_size: usize,
    max_load: usize,
) -> Result<Paneling, AssignError> {
    let order: Vec<usize> = (0..g.candidates().len()).collect();
    greedy(g, panel_size, max_load, &order)
}

/// Greedy assignment over candidates in a caller-chosen order. `order` must
/// list every candidate of the graph exactly once.
pub fn assign_edge_sorting_in_order(
    g: &AssignmentGraph,
    panel_size: usize,
    max_load: usize,
    order: &[String],
) -> Result<Paneling, AssignError> {
    let mut seen = BTreeSet::new();
    let mut indices = Vec::with_capacity(order.len());
    for c in order {
        let idx = g
            .candidate_index(c)
            .ok_or_else(|| AssignError::InvalidOrder(format!("unknown candidate `{c}`")))?;
        if !seen.insert(idx) {
            return Err(AssignError::InvalidOrder(format!("`{c}` listed twice")));
        }
        indices.push(idx);
    }
    if indices.len() != g.candidates().len() {
        let missing: Vec<&str> = g
            .candidates()
            .iter()
            .enumerate()
            .filter(|(i, _)| !seen.contains(i))
            .map(|(_, c)| c.as_str())
            .collect();
        return Err(AssignError::InvalidOrder(format!(
            "missing candidates: {}",
            missing.join(", ")
        )));
    }
    greedy(g, panel_size, max_load, &indices)
}

fn greedy(
    g: &AssignmentGraph,
    panel_size: usize,
    max_load: usize,
    order: &[usize],
) -> Result<Paneling, AssignError> {
    let panelists = g.panelists();
    let mut load = vec![0usize; panelists.len()];
    let mut paneling = Paneling::new(g.stage);

    for &ci in order {
        let mut available: Vec<usize> = (0..panelists.len())
            .filter(|&pi| load[pi] < max_load)
            .collect();
        if available.len() < panel_size {
            return Err(AssignError::Infeasible(format!(
                "only {} panelists have spare load when panelling `{}`, need {}",
                available.len(),
                g.candidates()[ci],
                panel_size
            )));
        }
        // highest score first; panelists are indexed in id order so a stable
        // sort leaves ties in ascending id
        available.sort_by(|&a, &b| g.weight_at(b, ci).total_cmp(&g.weight_at(a, ci)));
        let chosen = &available[..panel_size];
        for &pi in chosen {
            load[pi] += 1;
        }
        paneling.insert(Panel::new(
            g.candidates()[ci].clone(),
            chosen.iter().map(|&pi| panelists[pi].clone()),
        ));
    }
    Ok(paneling)
}
