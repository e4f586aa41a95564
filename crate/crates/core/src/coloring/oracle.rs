use super::ColoringError;
use crate::interference::InterferenceGraph;

pub const ORACLE_MAX_NODES: usize = 12;

/// Exact chromatic number by exhaustive backtracking. Only for small graphs.
pub fn chromatic_oracle(g: &InterferenceGraph) -> Result<usize, ColoringError> {
    let n = g.node_count();
    if n > ORACLE_MAX_NODES {
        return Err(ColoringError::TooLarge {
            nodes: n,
            cap: ORACLE_MAX_NODES,
        });
    }
    let adjacent: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| g.has_edge(i, j)).collect())
        .collect();
    for k in 1..=n {
        let mut colors = vec![usize::MAX; n];
        if extend(&adjacent, &mut colors, 0, k, 0) {
            return Ok(k);
        }
    }
    Ok(0)
}

// Colors node `at` and everything after it. A node may open at most one new
// color beyond those already used, which removes permutation symmetry.
fn extend(adj: &[Vec<bool>], colors: &mut [usize], at: usize, k: usize, used: usize) -> bool {
    if at == colors.len() {
        return true;
    }
    for c in 0..k.min(used + 1) {
        if (0..at).any(|j| adj[at][j] && colors[j] == c) {
            continue;
        }
        colors[at] = c;
        if extend(adj, colors, at + 1, k, used.max(c + 1)) {
            return true;
        }
    }
    colors[at] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{complete_graph, edgeless_graph, six_panel_graph};

    #[test]
    fn known_chromatic_numbers() {
        assert_eq!(chromatic_oracle(&six_panel_graph()), Ok(2));
        assert_eq!(chromatic_oracle(&complete_graph(3)), Ok(3));
        assert_eq!(chromatic_oracle(&complete_graph(6)), Ok(6));
        assert_eq!(chromatic_oracle(&edgeless_graph(5)), Ok(1));
        assert_eq!(chromatic_oracle(&edgeless_graph(0)), Ok(0));
    }

    #[test]
    fn odd_cycle_needs_three() {
        let nodes: Vec<String> = (0..7).map(|i| format!("v{i}")).collect();
        let edges: Vec<(String, String)> = (0..7)
            .map(|i| (nodes[i].clone(), nodes[(i + 1) % 7].clone()))
            .collect();
        let g = InterferenceGraph::unweighted(nodes, edges).unwrap();
        assert_eq!(chromatic_oracle(&g), Ok(3));
    }

    #[test]
    fn refuses_large_graphs() {
        assert_eq!(
            chromatic_oracle(&edgeless_graph(13)),
            Err(ColoringError::TooLarge { nodes: 13, cap: 12 })
        );
    }
}
