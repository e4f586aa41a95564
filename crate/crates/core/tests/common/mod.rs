//! Exhaustive reference solvers and random input builders shared by the
//! integration tests.

#![allow(dead_code)]

use panelkit_core::io::{generate_instance, InstanceShape};
use panelkit_core::model::{Instance, Stage};
use panelkit_core::scoring::AssignmentGraph;
use panelkit_core::InterferenceGraph;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Best total weight over every paneling with `s` distinct panelists per
/// candidate and at most `l` panels per panelist, or `None` if there is none.
/// Sums run candidate by candidate, members in id order.
pub fn brute_force_optimum(g: &AssignmentGraph, s: usize, l: usize) -> Option<f64> {
    fn combos(n: usize, s: usize) -> Vec<Vec<usize>> {
        fn rec(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == s {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, s, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, n, s, &mut Vec::new(), &mut out);
        out
    }

    fn search(
        g: &AssignmentGraph,
        subsets: &[Vec<usize>],
        l: usize,
        ci: usize,
        load: &mut [usize],
        acc: f64,
        best: &mut Option<f64>,
    ) {
        if ci == g.candidates().len() {
            if best.is_none_or(|b| acc > b) {
                *best = Some(acc);
            }
            return;
        }
        for subset in subsets {
            if subset.iter().any(|&p| load[p] >= l) {
                continue;
            }
            let mut next = acc;
            for &p in subset {
                next += g.weight_at(p, ci);
                load[p] += 1;
            }
            search(g, subsets, l, ci + 1, load, next, best);
            for &p in subset {
                load[p] -= 1;
            }
        }
    }

    let n = g.panelists().len();
    if s > n {
        return None;
    }
    let subsets = combos(n, s);
    let mut best = None;
    search(g, &subsets, l, 0, &mut vec![0; n], 0.0, &mut best);
    best
}

pub fn ids(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Assignment graph with weights drawn from multiples of 1/8 in [-1, 1], so
/// every total is exact in binary floating point.
pub fn dyadic_graph(rng: &mut ChaCha8Rng, panelists: usize, candidates: usize) -> AssignmentGraph {
    let weights: Vec<Vec<f64>> = (0..panelists)
        .map(|_| {
            (0..candidates)
                .map(|_| f64::from(rng.gen_range(-8i32..=8)) / 8.0)
                .collect()
        })
        .collect();
    AssignmentGraph::from_weights(
        Stage::Review,
        ids("p", panelists),
        ids("c", candidates),
        &weights,
    )
}

/// Small topic-based instance; panel size and load are left to the caller.
pub fn small_instance(seed: u64, panelists: usize, candidates: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let topics = rng.gen_range(1..=6);
    generate_instance(&InstanceShape {
        panelists,
        candidates,
        topics,
        topics_per_person: 1..=3,
        seed,
    })
}

/// G(n, p) graph on nodes `v0..`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> InterferenceGraph {
    let nodes = ids("v", n);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((nodes[i].clone(), nodes[j].clone()));
            }
        }
    }
    InterferenceGraph::unweighted(nodes, edges).expect("generated graph is well formed")
}
