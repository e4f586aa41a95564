//! Shared inputs for the criterion benches.

use panelkit_core::io::{generate_instance, InstanceShape};
use panelkit_core::model::{Instance, Stage};
use panelkit_core::{
    assign_max_flow, build_assignment_graph, build_interference, InterferenceGraph,
};

/// Synthetic instance with panel size 3 and a load cap that leaves half the
/// seats spare.
pub fn desk_instance(panelists: usize, candidates: usize, seed: u64) -> Instance {
    let mut inst = generate_instance(&InstanceShape {
        panelists,
        candidates,
        topics: 20,
        topics_per_person: 1..=4,
        seed,
    });
    inst.config.panel_size = 3;
    inst.config.max_load = (3 * candidates).div_ceil(panelists) * 3 / 2;
    inst
}

/// Interference graph of the max-flow paneling of `inst`.
pub fn flow_interference(inst: &Instance) -> InterferenceGraph {
    let g = build_assignment_graph(inst, Stage::Interview);
    let pl = assign_max_flow(&g, inst.config.panel_size, inst.config.max_load)
        .expect("bench instance is feasible");
    build_interference(&pl)
}
