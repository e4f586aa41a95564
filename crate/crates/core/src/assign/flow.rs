//! Optimal assignment via min-cost max-flow.
//!
//! The network is `source -> panelist (cap max_load) -> candidate (cap 1) ->
//! sink (cap panel_size)`. Panelist-to-candidate arcs cost the negated match
//! score, so the cheapest maximum flow is the highest-scoring paneling.
//! Flow is pushed along successive shortest paths; the negative costs rule
//! out Dijkstra, so paths are found with a queue-based Bellman-Ford.

use std::collections::VecDeque;

use super::AssignError;
use crate::model::{Panel, Paneling};
use crate::scoring::AssignmentGraph;

/// Relaxations must improve a label by more than this to count. Keeps float
/// noise from turning a zero-cost residual cycle into an endless loop.
const COST_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct FlowArc {
    pub from: usize,
    pub to: usize,
    pub capacity: i64,
    pub cost: f64,
    pub flow: i64,
}

impl FlowArc {
    fn residual(&self) -> i64 {
        self.capacity - self.flow
    }
}

/// Directed network with paired residual arcs: arc `2k` is a forward arc and
/// `2k + 1` its reverse, with capacity 0, negated cost and flow `-flow(2k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowNetwork {
    pub source: usize,
    pub sink: usize,
    arcs: Vec<FlowArc>,
    outgoing: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Self {
        FlowNetwork {
            source,
            sink,
            arcs: Vec::new(),
            outgoing: vec![Vec::new(); node_count],
        }
    }

    pub fn node_count(&self) -> usize {
        self.outgoing.len()
    }

    /// Adds a forward arc and its reverse; returns the forward arc's index.
    pub fn add_arc(&mut self, from: usize, to: usize, capacity: i64, cost: f64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(FlowArc {
            from,
            to,
            capacity,
            cost,
            flow: 0,
        });
        self.arcs.push(FlowArc {
            from: to,
            to: from,
            capacity: 0,
            cost: -cost,
            flow: 0,
        });
        self.outgoing[from].push(id);
        self.outgoing[to].push(id + 1);
        id
    }

    pub fn arc(&self, id: usize) -> &FlowArc {
        &self.arcs[id]
    }

    /// Forward arcs only.
    pub fn forward_arcs(&self) -> impl Iterator<Item = &FlowArc> {
        self.arcs.iter().step_by(2)
    }

    /// Net flow leaving `node` (positive at the source, negative at the sink).
    pub fn net_outflow(&self, node: usize) -> i64 {
        self.forward_arcs()
            .map(|a| {
                if a.from == node {
                    a.flow
                } else if a.to == node {
                    -a.flow
                } else {
                    0
                }
            })
            .sum()
    }

    /// Cheapest source-to-sink path in the residual network, as arc ids.
    fn shortest_path(&self) -> Option<Vec<usize>> {
        let n = self.node_count();
        let mut dist = vec![f64::INFINITY; n];
        let mut via: Vec<Option<usize>> = vec![None; n];
        let mut queued = vec![false; n];
        let mut pops = vec![0usize; n];
        let mut queue = VecDeque::new();

        dist[self.source] = 0.0;
        queue.push_back(self.source);
        queued[self.source] = true;
        while let Some(u) = queue.pop_front() {
            queued[u] = false;
            pops[u] += 1;
            assert!(pops[u] <= n + 1, "negative-cost cycle in residual network");
            for &id in &self.outgoing[u] {
                let arc = &self.arcs[id];
                if arc.residual() <= 0 {
                    continue;
                }
                let cand = dist[u] + arc.cost;
                if cand < dist[arc.to] - COST_EPS {
                    dist[arc.to] = cand;
                    via[arc.to] = Some(id);
                    if !queued[arc.to] {
                        queued[arc.to] = true;
                        queue.push_back(arc.to);
                    }
                }
            }
        }

        if dist[self.sink].is_infinite() {
            return None;
        }
        let mut path = Vec::new();
        let mut node = self.sink;
        while node != self.source {
            let id = via[node].expect("reached nodes have a predecessor arc");
            path.push(id);
            node = self.arcs[id].from;
        }
        path.reverse();
        Some(path)
    }

    /// Pushes flow along successive shortest paths until the sink is cut off.
    /// Returns the total flow and its cost.
    pub fn min_cost_max_flow(&mut self) -> (i64, f64) {
        let mut total_flow = 0;
        let mut total_cost = 0.0;
        while let Some(path) = self.shortest_path() {
            let bottleneck = path
                .iter()
                .map(|&id| self.arcs[id].residual())
                .min()
                .expect("paths are non-empty");
            for &id in &path {
                self.arcs[id].flow += bottleneck;
                self.arcs[id ^ 1].flow -= bottleneck;
                total_cost += bottleneck as f64 * self.arcs[id].cost;
            }
            total_flow += bottleneck;
        }
        (total_flow, total_cost)
    }
}

/// Node layout: 0 = source, 1..=P panelists, P+1..=P+C candidates, P+C+1 = sink.
fn build_network(
    g: &AssignmentGraph,
    panel_size: usize,
    max_load: usize,
) -> (FlowNetwork, Vec<Vec<usize>>) {
    let np = g.panelists().len();
    let nc = g.candidates().len();
    let sink = np + nc + 1;
    let mut net = FlowNetwork::new(np + nc + 2, 0, sink);
    for pi in 0..np {
        net.add_arc(0, 1 + pi, max_load as i64, 0.0);
    }
    let mut pair_arcs = vec![Vec::with_capacity(nc); np];
    for (pi, arcs) in pair_arcs.iter_mut().enumerate() {
        for ci in 0..nc {
            arcs.push(net.add_arc(1 + pi, 1 + np + ci, 1, -g.weight_at(pi, ci)));
        }
    }
    for ci in 0..nc {
        net.add_arc(1 + np + ci, sink, panel_size as i64, 0.0);
    }
    (net, pair_arcs)
}

/// Highest-scoring paneling. Fails when the network cannot route
/// `panel_size` units to every candidate.
pub fn assign_max_flow(
    g: &AssignmentGraph,
    panel_size: usize,
    max_load: usize,
) -> Result<Paneling, AssignError> {
    let (mut net, pair_arcs) = build_network(g, panel_size, max_load);
    let (flow, _) = net.min_cost_max_flow();
    let required = (panel_size * g.candidates().len()) as i64;
    if flow < required {
        return Err(AssignError::Infeasible(format!(
            "maximum flow {flow} is below the {required} panel seats required"
        )));
    }

    let mut paneling = Paneling::new(g.stage);
    for (ci, c) in g.candidates().iter().enumerate() {
        let members = g
            .panelists()
            .iter()
            .enumerate()
            .filter(|(pi, _)| net.arc(pair_arcs[*pi][ci]).flow == 1)
            .map(|(_, p)| p.clone());
        paneling.insert(Panel::new(c.clone(), members));
    }
    Ok(paneling)
}
