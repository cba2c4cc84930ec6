//! Every connected graft on a few vertices, up to relabelling.

use graft_core::{EdgeId, Graft, Graph, VertexSet};
use itertools::Itertools;

use crate::generate::label;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).tuple_combinations().collect()
}

fn is_connected(n: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    let mut reach = 1u32;
    loop {
        let mut next = reach;
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 && (reach >> u & 1 == 1 || reach >> v & 1 == 1) {
                next |= 1 << u | 1 << v;
            }
        }
        if next == reach {
            return reach == (1u32 << n) - 1;
        }
        reach = next;
    }
}

/// For each vertex permutation, where each pair index goes.
fn pair_maps(n: usize, pairs: &[(usize, usize)]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    (0..n)
        .permutations(n)
        .map(|perm| {
            let map = pairs.iter().map(|&(u, v)| index(perm[u], perm[v])).collect();
            (perm, map)
        })
        .collect()
}

fn permute(mask: u32, map: &[usize]) -> u32 {
    map.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .fold(0, |acc, (_, &j)| acc | 1 << j)
}

/// Connected simple graphs on `n` vertices, one per isomorphism class, as
/// edge masks over the pairs `(0,1), (0,2), …` in lexicographic order.
pub fn connected_graphs(n: usize) -> Vec<u32> {
    assert!((1..=7).contains(&n), "exhaustive enumeration is limited to 7 vertices");
    let pairs = pairs(n);
    let maps = pair_maps(n, &pairs);
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        if mask.count_ones() + 1 < n as u32 || !is_connected(n, &pairs, mask) {
            continue;
        }
        if maps.iter().all(|(_, m)| permute(mask, m) >= mask) {
            out.push(mask);
        }
    }
    out
}

/// Every connected graft with exactly `n` vertices, up to isomorphism.
pub fn connected_grafts(n: usize) -> Vec<Graft> {
    let pairs = pairs(n);
    let maps = pair_maps(n, &pairs);
    let labels: Vec<String> = (0..n).map(label).collect();
    let mut out = Vec::new();
    for mask in connected_graphs(n) {
        let automorphisms: Vec<&Vec<usize>> = maps
            .iter()
            .filter(|(_, m)| permute(mask, m) == mask)
            .map(|(perm, _)| perm)
            .collect();
        let edges: Vec<(EdgeId, &str, &str)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .enumerate()
            .map(|(k, (_, &(u, v)))| (EdgeId(k as u32), labels[u].as_str(), labels[v].as_str()))
            .collect();
        let graph = Graph::new(labels.clone(), edges).unwrap();
        for t in 0u32..1 << n {
            if t.count_ones() % 2 == 1 {
                continue;
            }
            let image = |perm: &Vec<usize>| (0..n).filter(|&v| t >> v & 1 == 1).fold(0u32, |a, v| a | 1 << perm[v]);
            if automorphisms.iter().any(|p| image(p) < t) {
                continue;
            }
            let terminals: VertexSet = (0..n)
                .filter(|&v| t >> v & 1 == 1)
                .map(|v| graph.require(&labels[v]).unwrap())
                .collect();
            out.push(Graft::new(graph.clone(), terminals).unwrap());
        }
    }
    out
}

/// All connected grafts with at most `max_n` vertices, up to isomorphism.
pub fn small_grafts(max_n: usize) -> Vec<Graft> {
    (1..=max_n).flat_map(connected_grafts).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequences() {
        // connected unlabelled graphs: 1, 1, 2, 6, 21, 112
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn terminal_sets_up_to_symmetry() {
        // K2: T = ∅ or both ends
        assert_eq!(connected_grafts(2).len(), 2);
        // path and triangle on three vertices: ∅, end pair, end-middle pair; ∅, one pair
        assert_eq!(connected_grafts(3).len(), 5);
    }
}
