//! Shared oracles for the integration suites: breadth-first search over the
//! swap graph and plain brute-force reference solvers.

use std::collections::HashMap;

use itertools::Itertools;
use swapmedian::geodesy::MedianInstance;
use swapmedian::perm::{Permutation, SwapOp};

/// Distance from the identity to every permutation of size `n`, by BFS over
/// the graph whose vertices are permutations and edges are single swaps.
pub fn bfs_distances_from_identity(n: usize) -> HashMap<Permutation, usize> {
    let id = Permutation::identity(n).expect("n >= 1");
    let swaps: Vec<SwapOp> = (1..=n as u32)
        .tuple_combinations()
        .map(|(a, b)| SwapOp::new(a, b).expect("a < b"))
        .collect();
    let mut dist = HashMap::new();
    dist.insert(id.clone(), 0usize);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in frontier {
            let d = dist[&p];
            for &s in &swaps {
                let q = p.apply_swap(s).expect("values in range");
                if !dist.contains_key(&q) {
                    dist.insert(q.clone(), d + 1);
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    dist
}

/// All permutations of size `n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    (1..=n as u32)
        .permutations(n)
        .map(|v| Permutation::new(v).expect("permutation by construction"))
        .collect()
}

/// First lexicographic minimizer of the objective over all permutations.
pub fn brute_force_best(
    t: &MedianInstance,
    objective: impl Fn(&[usize; 3]) -> usize,
) -> (usize, Permutation) {
    let mut best = usize::MAX;
    let mut best_sigma = None;
    for sigma in all_permutations(t.size()) {
        let ds = [
            sigma.distance_to(t.p1()).expect("equal sizes"),
            sigma.distance_to(t.p2()).expect("equal sizes"),
            sigma.distance_to(t.p3()).expect("equal sizes"),
        ];
        let value = objective(&ds);
        if value < best {
            best = value;
            best_sigma = Some(sigma);
        }
    }
    (best, best_sigma.expect("n >= 1"))
}
