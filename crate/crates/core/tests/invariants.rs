use std::collections::BTreeSet;

use graft_core::oracle::{bits_to_set, min_path_weights, JoinOracle};
use graft_core::*;
use proptest::prelude::*;

/// Builds a graft from raw parts: loops are skipped and each component keeps
/// an even number of the requested terminals.
fn build(n: usize, raw_edges: Vec<(usize, usize)>, wanted: u16, bipartite: bool) -> Graft {
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let edges: Vec<(EdgeId, String, String)> = raw_edges
        .into_iter()
        .map(|(u, v)| (u % n, v % n))
        .filter(|&(u, v)| u != v && (!bipartite || (u + v) % 2 == 1))
        .enumerate()
        .map(|(i, (u, v))| (EdgeId(i as u32), labels[u].clone(), labels[v].clone()))
        .collect();
    let graph = Graph::new(labels, edges).unwrap();
    let mut terminals = VertexSet::new();
    for comp in graph.components() {
        let mut picked: Vec<VertexId> = comp.into_iter().filter(|&v| wanted >> v & 1 == 1).collect();
        if picked.len() % 2 == 1 {
            picked.pop();
        }
        terminals.extend(picked);
    }
    Graft::new(graph, terminals).unwrap()
}

fn graft_strategy(bipartite: bool) -> impl Strategy<Value = Graft> {
    (1usize..=7)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..12), any::<u16>()))
        .prop_map(move |(n, e, t)| build(n, e, t, bipartite))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solver_matches_oracle(g in graft_strategy(false)) {
        let oracle = JoinOracle::default();
        let mins = oracle.all_min_joins(&g).unwrap();
        let j = min_join(&g);
        prop_assert!(mins.contains(j.edges()));
        prop_assert_eq!(&j, &oracle.min_join(&g).unwrap());
        let union: EdgeSet = mins.iter().flatten().copied().collect();
        let allowed = if nu(&g) == 0 { EdgeSet::new() } else { union };
        prop_assert_eq!(allowed_edges(&g), allowed);
    }

    #[test]
    fn distances_are_path_weights(g in graft_strategy(false)) {
        let joined = JoinedGraft::solve(&g);
        for x in g.graph().vertices() {
            let w = min_path_weights(g.graph(), joined.join().edges(), x).unwrap();
            for y in g.graph().vertices() {
                prop_assert_eq!(joined.dist(x, y), w[y]);
            }
        }
    }

    #[test]
    fn switching_keeps_minimum(g in graft_strategy(false)) {
        let joined = JoinedGraft::solve(&g);
        for x in g.graph().vertices() {
            for y in g.graph().vertices().filter(|&y| y != x && joined.same_component(x, y)) {
                let s = join_switch(&joined, x, y).unwrap();
                prop_assert_eq!(s.join.size(), nu(&s.graft));
            }
        }
    }

    #[test]
    fn rootlization_lifts_every_minimum_join(g in graft_strategy(false), pick in any::<u8>()) {
        let joined = JoinedGraft::solve(&g);
        let seed = pick as usize % g.graph().vertex_count();
        let mut x = VertexSet::from([seed]);
        for v in g.graph().vertices() {
            x.insert(v);
            if !is_extreme(&joined, &x).unwrap() {
                x.remove(&v);
            }
        }
        let rooted = rootlize(&joined, &x, "root", "att").unwrap();
        let oracle = JoinOracle { max_edges: 64 };
        let lifted: BTreeSet<EdgeSet> = oracle
            .all_min_joins(&g)
            .unwrap()
            .into_iter()
            .map(|mut f| { f.insert(rooted.root_edge); f })
            .collect();
        prop_assert_eq!(oracle.all_min_joins(&rooted.graft).unwrap(), lifted);
    }

    #[test]
    fn decomposition_round_trips(g in graft_strategy(true)) {
        let bg = BipartiteGraft::two_coloured(g).unwrap();
        let joined = JoinedGraft::solve(bg.graft());
        for seed in bg.graph().vertices() {
            let x = grow_maximal_bipartitic_extreme(&joined, bg.classes(), seed).unwrap();
            let d = decompose(&joined, bg.classes(), &x).unwrap();
            let spec = d.synthesis_spec();
            let rebuilt = synthesize(&spec).unwrap();
            let reduced = fringe_remove(&joined, bg.classes(), &x).unwrap();
            prop_assert_eq!(rebuilt.graft(), reduced.graft());
            let join = synthesis_min_join(&spec, None, &Default::default()).unwrap();
            prop_assert_eq!(join.size(), nu(rebuilt.graft()));
            for f in JoinOracle::default().min_join_bits(rebuilt.graft()).unwrap() {
                check_join_factors(&spec, &rebuilt, &bits_to_set(rebuilt.graph(), f)).unwrap();
            }
        }
    }
}
