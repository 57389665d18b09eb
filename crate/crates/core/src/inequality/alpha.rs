//! Maximum-weight independent sets.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::rayset::CompatibilityGraph;

/// Largest graph [`brute_force_alpha`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 25;

/// Upper bound used to prune the branch-and-bound search. Both are
/// admissible, so they return the same value and differ only in how much
/// of the tree gets explored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlphaBound {
    /// Total weight of the remaining candidates.
    WeightSum,
    /// Greedy partition of the candidates into cliques; an independent set
    /// takes at most the heaviest vertex of each clique.
    #[default]
    CliqueCover,
}

/// α(G, w) with the default bound.
pub fn weighted_independence_number(g: &CompatibilityGraph, weights: &[u64]) -> Result<u64> {
    weighted_independence_number_with(g, weights, AlphaBound::default())
}

pub fn weighted_independence_number_with(
    g: &CompatibilityGraph,
    weights: &[u64],
    bound: AlphaBound,
) -> Result<u64> {
    check_lengths(g, weights)?;
    let n = g.vertex_count();
    // heaviest first, ties by index
    let mut order: Vec<usize> = (0..n).filter(|&v| weights[v] > 0).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
    let mut candidates = FixedBitSet::with_capacity(n);
    for &v in &order {
        candidates.insert(v);
    }
    let mut solver = Solver {
        g,
        weights,
        order,
        bound,
        best: 0,
    };
    solver.expand(&candidates, 0);
    Ok(solver.best)
}

struct Solver<'a> {
    g: &'a CompatibilityGraph,
    weights: &'a [u64],
    order: Vec<usize>,
    bound: AlphaBound,
    best: u64,
}

impl Solver<'_> {
    fn upper_bound(&self, candidates: &FixedBitSet) -> u64 {
        match self.bound {
            AlphaBound::WeightSum => candidates.ones().map(|v| self.weights[v]).sum(),
            AlphaBound::CliqueCover => {
                let mut cliques: Vec<Vec<usize>> = Vec::new();
                let mut total = 0;
                for &v in self.order.iter().filter(|&&v| candidates.contains(v)) {
                    match cliques
                        .iter_mut()
                        .find(|c| c.iter().all(|&u| self.g.is_adjacent(u, v)))
                    {
                        Some(c) => c.push(v),
                        None => {
                            // vertices arrive heaviest first, so the founder
                            // carries the clique's maximum
                            total += self.weights[v];
                            cliques.push(vec![v]);
                        }
                    }
                }
                total
            }
        }
    }

    fn expand(&mut self, candidates: &FixedBitSet, current: u64) {
        let Some(&v) = self.order.iter().find(|&&v| candidates.contains(v)) else {
            self.best = self.best.max(current);
            return;
        };
        if current + self.upper_bound(candidates) <= self.best {
            return;
        }
        let mut with = candidates.clone();
        with.set(v, false);
        with.difference_with(self.g.neighbor_set(v));
        self.expand(&with, current + self.weights[v]);

        let mut without = candidates.clone();
        without.set(v, false);
        self.expand(&without, current);
    }
}

/// Exhaustive α(G, w): visits every independent subset, no bounding.
pub fn brute_force_alpha(g: &CompatibilityGraph, weights: &[u64]) -> Result<u64> {
    check_lengths(g, weights)?;
    let n = g.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            vertices: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let adjacency: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |m, u| m | (1 << u)))
        .collect();
    fn walk(v: usize, chosen: u32, weight: u64, adj: &[u32], w: &[u64], best: &mut u64) {
        if v == adj.len() {
            *best = (*best).max(weight);
            return;
        }
        walk(v + 1, chosen, weight, adj, w, best);
        if adj[v] & chosen == 0 {
            walk(v + 1, chosen | (1 << v), weight + w[v], adj, w, best);
        }
    }
    let mut best = 0;
    walk(0, 0, 0, &adjacency, weights, &mut best);
    Ok(best)
}

fn check_lengths(g: &CompatibilityGraph, weights: &[u64]) -> Result<()> {
    if weights.len() != g.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: g.vertex_count(),
            found: weights.len(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> CompatibilityGraph {
        CompatibilityGraph::from_edges(n, edges).unwrap()
    }

    fn complete(n: usize) -> CompatibilityGraph {
        let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        graph(n, &edges)
    }

    #[test]
    fn small_graphs() {
        let path = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(weighted_independence_number(&path, &[1, 3, 1]).unwrap(), 3);
        assert_eq!(weighted_independence_number(&path, &[2, 3, 2]).unwrap(), 4);
        assert_eq!(weighted_independence_number(&complete(3), &[2, 5, 3]).unwrap(), 5);
    }

    #[test]
    fn brute_force_small_graphs() {
        assert_eq!(brute_force_alpha(&graph(3, &[]), &[1, 1, 1]).unwrap(), 3);
        assert_eq!(brute_force_alpha(&complete(4), &[1, 1, 1, 1]).unwrap(), 1);
        assert_eq!(
            brute_force_alpha(&graph(26, &[]), &[1; 26]).unwrap_err(),
            Error::TooLarge { vertices: 26, limit: 25 }
        );
    }

    #[test]
    fn zero_weights_are_ignored() {
        let g = graph(3, &[(0, 1)]);
        assert_eq!(weighted_independence_number(&g, &[0, 0, 0]).unwrap(), 0);
        assert_eq!(weighted_independence_number(&g, &[0, 4, 1]).unwrap(), 5);
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(
            weighted_independence_number(&complete(3), &[1, 1]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    fn weighted_graph() -> impl Strategy<Value = (CompatibilityGraph, Vec<u64>)> {
        (1usize..=14).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            let m = pairs.len();
            (
                prop::collection::vec(prop::bool::weighted(0.4), m),
                prop::collection::vec(0u64..10, n),
            )
                .prop_map(move |(keep, w)| {
                    let edges: Vec<_> = pairs
                        .iter()
                        .zip(&keep)
                        .filter(|(_, &k)| k)
                        .map(|(&e, _)| e)
                        .collect();
                    (graph(n, &edges), w)
                })
        })
    }

    proptest! {
        #[test]
        fn bounds_agree_with_brute_force((g, w) in weighted_graph()) {
            let oracle = brute_force_alpha(&g, &w).unwrap();
            prop_assert_eq!(weighted_independence_number_with(&g, &w, AlphaBound::CliqueCover).unwrap(), oracle);
            prop_assert_eq!(weighted_independence_number_with(&g, &w, AlphaBound::WeightSum).unwrap(), oracle);
        }

        #[test]
        fn alpha_scales_linearly((g, w) in weighted_graph(), k in 1u64..6) {
            let scaled: Vec<u64> = w.iter().map(|x| x * k).collect();
            prop_assert_eq!(
                weighted_independence_number(&g, &scaled).unwrap(),
                k * weighted_independence_number(&g, &w).unwrap()
            );
        }
    }
}
