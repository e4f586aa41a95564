//! Ant colony coloring.
//!
//! Each ant starts on a random node and walks the whole graph. On every node
//! it marks the colors of already-colored neighbours as taboo and takes the
//! least color left. The next node is the unvisited one maximising
//! `P[cur][j]^alpha * dsat(j)^beta`, where `dsat` counts the distinct colors
//! among `j`'s neighbours with "uncolored" counted as a color of its own.
//! After each iteration the pheromone evaporates and the elite ant (fewest
//! colors) reinforces the consecutive steps of its walk.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{chaitin_min_colors, Coloring};
use crate::interference::InterferenceGraph;
use crate::model::AcoParams;

/// Symmetric node-by-node trail matrix. Starts at 0 on edges and 1 elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneMatrix {
    n: usize,
    values: Vec<f64>,
}

impl PheromoneMatrix {
    pub fn new(g: &InterferenceGraph) -> Self {
        let n = g.node_count();
        let mut values = vec![1.0; n * n];
        for (i, j) in g.index_edges() {
            values[i * n + j] = 0.0;
            values[j * n + i] = 0.0;
        }
        PheromoneMatrix { n, values }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    /// Scales every entry by `1 - rate`.
    pub fn decay(&mut self, rate: f64) {
        let keep = 1.0 - rate;
        self.values.iter_mut().for_each(|v| *v *= keep);
    }

    pub fn deposit(&mut self, i: usize, j: usize, amount: f64) {
        self.values[i * self.n + j] += amount;
        self.values[j * self.n + i] += amount;
    }

    /// Deposits `amount` on every consecutive pair of a walk.
    pub fn reinforce(&mut self, order: &[usize], amount: f64) {
        for w in order.windows(2) {
            self.deposit(w[0], w[1], amount);
        }
    }
}

/// One ant's walk: the visit order and the color given to each node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntTour {
    pub order: Vec<usize>,
    /// Indexed by node position.
    pub colors: Vec<usize>,
}

impl AntTour {
    pub fn colors_used(&self) -> usize {
        self.colors.iter().max().map_or(0, |m| m + 1)
    }

    pub fn to_coloring(&self, g: &InterferenceGraph) -> Coloring {
        Coloring::from_indices(g, &self.colors)
    }
}

/// Walks every node once starting at `start`, coloring as it goes.
pub fn ant_walk(
    g: &InterferenceGraph,
    pheromone: &PheromoneMatrix,
    start: usize,
    alpha: f64,
    beta: f64,
) -> AntTour {
    let n = g.node_count();
    let mut colors: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    // scratch for distinct-color counting: stamp[c] == tick marks c as seen
    let mut stamp = vec![0usize; n + 2];
    let mut tick = 0usize;

    let mut current = start;
    loop {
        visited[current] = true;
        order.push(current);

        tick += 1;
        for &u in g.neighbors(current) {
            if let Some(c) = colors[u] {
                stamp[c] = tick;
            }
        }
        let color = (0..)
            .find(|&c| stamp[c] != tick)
            .expect("a free color exists");
        colors[current] = Some(color);

        if order.len() == n {
            break;
        }

        let mut best: Option<(usize, f64)> = None;
        for j in (0..n).filter(|&j| !visited[j]) {
            tick += 1;
            let mut dsat = 0usize;
            for &u in g.neighbors(j) {
                // slot n + 1 stands for "uncolored"
                let slot = colors[u].unwrap_or(n + 1);
                if stamp[slot] != tick {
                    stamp[slot] = tick;
                    dsat += 1;
                }
            }
            let score = pheromone.get(current, j).powf(alpha) * (dsat as f64).powf(beta);
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((j, score));
            }
        }
        current = best.expect("an unvisited node remains").0;
    }

    AntTour {
        order,
        colors: colors
            .into_iter()
            .map(|c| c.expect("all visited"))
            .collect(),
    }
}

/// Whether ants of one iteration run on the rayon pool or one after another.
/// Both produce the same result for the same seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Serial,
    Parallel,
}

fn start_node(seed: u64, ant_serial: u64, n: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(ant_serial);
    rng.gen_range(0..n)
}

pub fn aco_color(g: &InterferenceGraph, params: &AcoParams, seed: u64) -> Coloring {
    aco_color_with(g, params, seed, Execution::Parallel)
}

pub fn aco_color_with(
    g: &InterferenceGraph,
    params: &AcoParams,
    seed: u64,
    execution: Execution,
) -> Coloring {
    let mut best = chaitin_min_colors(g);
    let n = g.node_count();
    if n == 0 || params.num_ants == 0 {
        return best;
    }
    let mut k = best.k;
    let mut ant_serial = 0u64;

    while k > 1 {
        let mut pheromone = PheromoneMatrix::new(g);
        let mut round_best: Option<AntTour> = None;
        for _ in 0..params.iterations {
            let first = ant_serial;
            ant_serial += params.num_ants as u64;
            let walk = |a: u64| {
                let start = start_node(seed, first + a, n);
                ant_walk(g, &pheromone, start, params.alpha, params.beta)
            };
            let tours: Vec<AntTour> = match execution {
                Execution::Serial => (0..params.num_ants as u64).map(walk).collect(),
                Execution::Parallel => (0..params.num_ants as u64)
                    .into_par_iter()
                    .map(walk)
                    .collect(),
            };
            // min_by_key keeps the first of equal keys, i.e. the lowest ant
            let elite = tours
                .into_iter()
                .min_by_key(AntTour::colors_used)
                .expect("at least one ant");

            pheromone.decay(params.decay);
            pheromone.reinforce(&elite.order, params.elite_deposit);
            if round_best
                .as_ref()
                .is_none_or(|b| elite.colors_used() < b.colors_used())
            {
                round_best = Some(elite);
            }
        }
        match round_best {
            Some(tour) if tour.colors_used() < k => {
                k = tour.colors_used();
                best = tour.to_coloring(g);
            }
            _ => break,
        }
    }
    best
}
