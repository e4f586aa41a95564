//! Panel assignment engines.
//!
//! Both engines read an [`AssignmentGraph`] and emit a [`Paneling`] in which
//! every candidate gets `panel_size` distinct panelists and no panelist sits
//! on more than `max_load` panels. Edge sorting is a greedy pass over the
//! candidates; the flow engine maximises the total match score.

mod edge_sort;
mod flow;

pub use edge_sort::{assign_edge_sorting, assign_edge_sorting_in_order};
pub use flow::{assign_max_flow, FlowArc, FlowNetwork};

use thiserror::Error;

use crate::model::Paneling;
use crate::scoring::AssignmentGraph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AssignError {
    #[error("no feasible paneling: {0}")]
    Infeasible(String),
    #[error("invalid candidate order: {0}")]
    InvalidOrder(String),
}

/// Total match score of a paneling: the sum of member weights over all panels.
pub fn paneling_value(g: &AssignmentGraph, pl: &Paneling) -> f64 {
    pl.panels
        .values()
        .flat_map(|panel| {
            panel
                .members
                .iter()
                .map(move |p| (p.as_str(), panel.candidate.as_str()))
        })
        .map(|(p, c)| {
            g.weight(p, c)
                .unwrap_or_else(|| panic!("pair ({p}, {c}) is not in the assignment graph"))
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::worked_instance;
    use crate::model::{Panel, Stage};
    use crate::scoring::build_assignment_graph;

    #[test]
    fn value_of_empty_paneling_is_zero() {
        let g = build_assignment_graph(&worked_instance(), Stage::Review);
        assert_eq!(paneling_value(&g, &Paneling::new(Stage::Review)), 0.0);
    }

    #[test]
    fn value_sums_member_weights() {
        let g = build_assignment_graph(&worked_instance(), Stage::Review);
        let mut pl = Paneling::new(Stage::Review);
        pl.insert(Panel::new("c1", ["p1"]));
        pl.insert(Panel::new("c2", ["p2"]));
        assert!((paneling_value(&g, &pl) - 0.5).abs() < 1e-12);
    }
}
