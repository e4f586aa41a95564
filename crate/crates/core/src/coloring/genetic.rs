//! Genetic search for colorings with fewer colors than Chaitin found.
//!
//! Starting at Chaitin's `k`, a population of random `k`-colorings is evolved
//! until one has zero conflicts; the search then restarts at `k - 1`. The
//! smallest `k` that reached zero conflicts within the generation budget
//! wins, with Chaitin's coloring as the fallback.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{chaitin_min_colors, Coloring};
use crate::interference::InterferenceGraph;
use crate::model::GaParams;

/// Number of edges whose endpoints share a color.
pub fn count_conflicts(g: &InterferenceGraph, genes: &[usize]) -> usize {
    g.index_edges()
        .filter(|&(i, j)| genes[i] == genes[j])
        .count()
}

/// A candidate coloring, indexed by node position, with its conflict count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chromosome {
    genes: Vec<usize>,
    conflicts: usize,
}

impl Chromosome {
    pub fn new(g: &InterferenceGraph, genes: Vec<usize>) -> Self {
        let conflicts = count_conflicts(g, &genes);
        Chromosome { genes, conflicts }
    }

    fn random(g: &InterferenceGraph, k: usize, rng: &mut ChaCha8Rng) -> Self {
        let genes = (0..g.node_count()).map(|_| rng.gen_range(0..k)).collect();
        Self::new(g, genes)
    }

    pub fn genes(&self) -> &[usize] {
        &self.genes
    }

    pub fn conflicts(&self) -> usize {
        self.conflicts
    }
}

struct Population<'g> {
    graph: &'g InterferenceGraph,
    k: usize,
    members: Vec<Chromosome>,
    // nodes by descending degree, ties by id
    mutation_order: Vec<usize>,
    fittest_weight: f64,
}

impl<'g> Population<'g> {
    fn new(
        graph: &'g InterferenceGraph,
        k: usize,
        params: &GaParams,
        rng: &mut ChaCha8Rng,
    ) -> Self {
        let members = (0..params.population.max(2))
            .map(|_| Chromosome::random(graph, k, rng))
            .collect();
        let mut mutation_order: Vec<usize> = (0..graph.node_count()).collect();
        mutation_order.sort_by(|&a, &b| graph.degree(b).cmp(&graph.degree(a)).then(a.cmp(&b)));
        Population {
            graph,
            k,
            members,
            mutation_order,
            fittest_weight: params.fittest_selection_weight,
        }
    }

    fn solved(&self) -> Option<&Chromosome> {
        self.members.iter().find(|c| c.conflicts == 0)
    }

    fn select_parents(&self, rng: &mut ChaCha8Rng) -> (usize, usize) {
        if rng.gen_bool(self.fittest_weight) {
            let mut ranked: Vec<usize> = (0..self.members.len()).collect();
            ranked.sort_by_key(|&i| (self.members[i].conflicts, i));
            (ranked[0], ranked[1])
        } else {
            let pick = sample(rng, self.members.len(), 2);
            (pick.index(0), pick.index(1))
        }
    }

    fn crossover(&self, a: usize, b: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let n = self.graph.node_count();
        let point = rng.gen_range(0..=n);
        let mut genes = self.members[a].genes[..point].to_vec();
        genes.extend_from_slice(&self.members[b].genes[point..]);
        genes
    }

    /// Recolors each conflicted node, highest degree first, with the least
    /// color none of its neighbours uses. Nodes with no such color keep theirs.
    fn mutate(&self, genes: &mut [usize]) {
        let mut taken = vec![false; self.k];
        for &v in &self.mutation_order {
            let neighbors = self.graph.neighbors(v);
            if !neighbors.iter().any(|&u| genes[u] == genes[v]) {
                continue;
            }
            taken.iter_mut().for_each(|t| *t = false);
            for &u in neighbors {
                taken[genes[u]] = true;
            }
            if let Some(c) = (0..self.k).find(|&c| !taken[c]) {
                genes[v] = c;
            }
        }
    }

    /// Runs one generation. The child replaces the worse parent only when it
    /// has strictly fewer conflicts than both.
    fn step(&mut self, rng: &mut ChaCha8Rng) {
        let (a, b) = self.select_parents(rng);
        let mut genes = self.crossover(a, b, rng);
        self.mutate(&mut genes);
        let child = Chromosome::new(self.graph, genes);
        let (ca, cb) = (self.members[a].conflicts, self.members[b].conflicts);
        if child.conflicts < ca && child.conflicts < cb {
            let worse = if ca > cb { a } else { b };
            self.members[worse] = child;
        }
    }
}

fn search_at(
    g: &InterferenceGraph,
    k: usize,
    params: &GaParams,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<usize>> {
    let mut pop = Population::new(g, k, params, rng);
    for _ in 0..params.generations {
        if pop.solved().is_some() {
            break;
        }
        pop.step(rng);
    }
    pop.solved().map(|c| c.genes.clone())
}

pub fn genetic_color(g: &InterferenceGraph, params: &GaParams, seed: u64) -> Coloring {
    let mut best = chaitin_min_colors(g);
    if g.node_count() == 0 {
        return best;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut k = best.k;
    while k >= 1 {
        match search_at(g, k, params, &mut rng) {
            Some(genes) => {
                let found = Coloring::from_indices(g, &genes);
                if found.k <= best.k {
                    k = found.k;
                    best = found;
                }
                k -= 1;
            }
            None => break,
        }
    }
    best
}
