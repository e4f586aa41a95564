//! Chaitin-style simplify/select coloring with a binary search on `k`.
//!
//! Simplify repeatedly removes the lowest-id node whose remaining degree is
//! below `k`. If none is left it falls back to the lowest-id node of degree
//! exactly `k`, which may or may not find a free color later. Select pops
//! the stack and gives each node the least color unused by its restored
//! neighbours; needing color `k` or more means the attempt fails.

use super::Coloring;
use crate::interference::InterferenceGraph;

/// One simplify/select attempt with `k` colors. `None` signals a retry with a larger `k`.
pub fn chaitin_try(g: &InterferenceGraph, k: usize) -> Option<Coloring> {
    try_indices(g, k).map(|colors| Coloring::from_indices(g, &colors))
}

fn try_indices(g: &InterferenceGraph, k: usize) -> Option<Vec<usize>> {
    let n = g.node_count();
    if n > 0 && k == 0 {
        return None;
    }

    let mut degree: Vec<usize> = (0..n).map(|i| g.degree(i)).collect();
    let mut removed = vec![false; n];
    let mut stack = Vec::with_capacity(n);
    while stack.len() < n {
        let pick = (0..n)
            .find(|&i| !removed[i] && degree[i] < k)
            .or_else(|| (0..n).find(|&i| !removed[i] && degree[i] == k))?;
        removed[pick] = true;
        stack.push(pick);
        for &j in g.neighbors(pick) {
            if !removed[j] {
                degree[j] -= 1;
            }
        }
    }

    let mut colors: Vec<Option<usize>> = vec![None; n];
    let mut taken = vec![false; k + 1];
    while let Some(node) = stack.pop() {
        taken.iter_mut().for_each(|t| *t = false);
        for &j in g.neighbors(node) {
            if let Some(c) = colors[j] {
                if c < k {
                    taken[c] = true;
                }
            }
        }
        let c = (0..k).find(|&c| !taken[c])?;
        colors[node] = Some(c);
    }
    Some(
        colors
            .into_iter()
            .map(|c| c.expect("every node popped"))
            .collect(),
    )
}

/// Smallest `k` in `1..=Δ+1` accepted by [`chaitin_try`], found by binary
/// search. `Δ+1` always succeeds because every node then has degree below `k`.
pub fn chaitin_min_colors(g: &InterferenceGraph) -> Coloring {
    if g.node_count() == 0 {
        return Coloring::from_indices(g, &[]);
    }
    let (mut lo, mut hi) = (1, g.max_degree() + 1);
    let mut best = try_indices(g, hi).expect("max degree + 1 colors always suffice");
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match try_indices(g, mid) {
            Some(colors) => {
                best = colors;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    Coloring::from_indices(g, &best)
}
