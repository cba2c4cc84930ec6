use graft_cli::document::GraftDocument;
use graft_cli::generate::{gen_random_graft, GenParams};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = (GenParams, u64)> {
    (1usize..=9, any::<u64>(), 0.0f64..=1.0, any::<bool>()).prop_flat_map(|(n, seed, density, bipartite)| {
        let max_m = if bipartite { (n / 2) * n.div_ceil(2) } else { n * (n - 1) / 2 };
        ((n - 1)..=max_m.max(n - 1)).prop_map(move |m| (GenParams { n, m, density, bipartite }, seed))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_documents_round_trip((p, seed) in params()) {
        let graft = gen_random_graft(p, seed).unwrap();
        let doc = GraftDocument::from_graft(&graft);
        let text = doc.to_json();
        let again = GraftDocument::parse(&text).unwrap();
        prop_assert_eq!(again.to_graft().unwrap(), graft);
        prop_assert_eq!(again.to_json(), text);
    }

    #[test]
    fn generation_is_deterministic((p, seed) in params()) {
        let a = GraftDocument::from_graft(&gen_random_graft(p, seed).unwrap()).to_json();
        let b = GraftDocument::from_graft(&gen_random_graft(p, seed).unwrap()).to_json();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn generated_grafts_are_connected_with_even_terminals((p, seed) in params()) {
        let graft = gen_random_graft(p, seed).unwrap();
        prop_assert!(graft.graph().is_connected());
        prop_assert_eq!(graft.terminals().len() % 2, 0);
        prop_assert_eq!(graft.graph().edge_count(), p.m);
        if p.bipartite {
            prop_assert!(graft_core::Bipartition::two_colour(graft.graph()).is_ok());
        }
    }
}
