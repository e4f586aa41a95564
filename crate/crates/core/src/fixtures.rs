//! Small hand-built instances and graphs with known answers. Used by the
//! test suites, the benchmarks and the CLI smoke tests.

use crate::interference::InterferenceGraph;
use crate::model::{Instance, Panel, Paneling, Participation, Person, SolverConfig, Stage, Topic};

/// Two panelists, two candidates, four topics; panel size 1, load 1.
///
/// Shared topics: p1-c1 {t1,t2}, p1-c2 {t1,t2,t3,t4}, p2-c1 {t1}, p2-c2 {t1}.
pub fn worked_instance() -> Instance {
    Instance {
        topics: (1..=4)
            .map(|i| Topic::new(format!("t{i}"), format!("topic {i}")))
            .collect(),
        panelists: vec![
            Person::panelist("p1", ["t1", "t2", "t3", "t4"]),
            Person::panelist("p2", ["t1"]),
        ],
        candidates: vec![
            Person::candidate("c1", ["t1", "t2"], Participation::Both),
            Person::candidate("c2", ["t1", "t2", "t3", "t4"], Participation::Both),
        ],
        config: SolverConfig {
            panel_size: 1,
            max_load: 1,
            ..SolverConfig::default()
        },
    }
}

/// Six interview panels over ten panelists; panels of c5 and c6 have two members.
pub fn six_panels() -> Paneling {
    let mut pl = Paneling::new(Stage::Interview);
    pl.insert(Panel::new("c1", ["p1", "p2", "p3"]));
    pl.insert(Panel::new("c2", ["p3", "p4", "p5"]));
    pl.insert(Panel::new("c3", ["p5", "p6", "p7"]));
    pl.insert(Panel::new("c4", ["p1", "p2", "p6"]));
    pl.insert(Panel::new("c5", ["p7", "p8"]));
    pl.insert(Panel::new("c6", ["p9", "p10"]));
    pl
}

/// Interference graph of [`six_panels`].
pub fn six_panel_graph() -> InterferenceGraph {
    InterferenceGraph::new(
        ["c1", "c2", "c3", "c4", "c5", "c6"],
        [
            ("c1", "c2", 1),
            ("c2", "c3", 1),
            ("c3", "c5", 1),
            ("c1", "c4", 2),
            ("c3", "c4", 1),
        ],
    )
    .expect("fixture graph is well formed")
}

/// Seven-node graph used to trace a single ant walk.
pub fn ant_trace_graph() -> InterferenceGraph {
    InterferenceGraph::unweighted(
        ["1", "2", "3", "4", "5", "6", "7"],
        [
            ("1", "2"),
            ("1", "6"),
            ("2", "3"),
            ("2", "4"),
            ("2", "7"),
            ("3", "6"),
            ("4", "5"),
        ],
    )
    .expect("fixture graph is well formed")
}

pub fn complete_graph(n: usize) -> InterferenceGraph {
    let nodes: Vec<String> = (0..n).map(|i| format!("n{i:02}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((nodes[i].clone(), nodes[j].clone()));
        }
    }
    InterferenceGraph::unweighted(nodes, edges).expect("fixture graph is well formed")
}

pub fn edgeless_graph(n: usize) -> InterferenceGraph {
    let nodes: Vec<String> = (0..n).map(|i| format!("n{i:02}")).collect();
    InterferenceGraph::unweighted(nodes, Vec::<(String, String)>::new())
        .expect("fixture graph is well formed")
}

/// A hub joined to `leaves` leaves.
pub fn star_graph(leaves: usize) -> InterferenceGraph {
    let mut nodes = vec!["hub".to_string()];
    nodes.extend((0..leaves).map(|i| format!("leaf{i:02}")));
    let edges: Vec<(String, String)> = nodes[1..]
        .iter()
        .map(|l| ("hub".to_string(), l.clone()))
        .collect();
    InterferenceGraph::unweighted(nodes, edges).expect("fixture graph is well formed")
}
