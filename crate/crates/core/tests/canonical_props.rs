mod common;

use common::{pdg_strategy, perm_strategy, sparse_pdg_strategy};
use kpdg::canonical::{
    canonical_form, canonical_labeling, graph_hash, is_isomorphic, is_isomorphic_naive, vertex_signatures,
};
use kpdg::Pdg;
use proptest::prelude::*;

fn sorted_sigs(g: &Pdg) -> Vec<u64> {
    let mut s = vertex_signatures(g);
    s.sort_unstable();
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn form_and_hash_are_relabeling_invariant(
        (g, p) in (2usize..=7, 2usize..=4)
            .prop_filter("k <= n", |(n, k)| k <= n)
            .prop_flat_map(|(n, k)| (sparse_pdg_strategy(n, k, 2), perm_strategy(n)))
    ) {
        let h = g.relabel(&p);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert_eq!(graph_hash(&g), graph_hash(&h));
        prop_assert_eq!(sorted_sigs(&g), sorted_sigs(&h));
        prop_assert!(is_isomorphic(&g, &h).unwrap());
    }

    #[test]
    fn signatures_are_equivariant((g, p) in pdg_strategy(6, 3).prop_flat_map(|g| (Just(g), perm_strategy(6)))) {
        let h = g.relabel(&p);
        let sg = vertex_signatures(&g);
        let sh = vertex_signatures(&h);
        for v in 0..6 {
            prop_assert_eq!(sg[v], sh[p[v]]);
        }
    }

    #[test]
    fn isomorphism_agrees_with_naive(
        a in sparse_pdg_strategy(5, 2, 1),
        b in sparse_pdg_strategy(5, 2, 1),
    ) {
        prop_assert_eq!(is_isomorphic(&a, &b).unwrap(), is_isomorphic_naive(&a, &b));
    }

    #[test]
    fn isomorphism_agrees_with_naive_k3(
        a in sparse_pdg_strategy(6, 3, 6),
        p in perm_strategy(6),
        flip in 0usize..20,
    ) {
        // perturb a relabeled copy by forgetting one direction, so both
        // outcomes occur
        let mut b = a.relabel(&p);
        if let Some(e) = b.edges().get(flip).copied() {
            b.forget_direction_on(e.mask());
        }
        prop_assert_eq!(is_isomorphic(&a, &b).unwrap(), is_isomorphic_naive(&a, &b));
    }

    #[test]
    fn form_is_idempotent(g in pdg_strategy(5, 3)) {
        let (form, perm) = canonical_labeling(&g);
        prop_assert_eq!(&g.relabel(&perm), form.graph());
        let reparsed: Pdg = form.to_string().parse().unwrap();
        prop_assert_eq!(canonical_form(&reparsed), form);
    }
}

#[test]
fn hash_separates_undirected_from_directed_single_edge() {
    let a: Pdg = "3 3 ; 0 1 2".parse().unwrap();
    let b: Pdg = "3 3 ; 0 1 2>2".parse().unwrap();
    assert_ne!(graph_hash(&a), graph_hash(&b));
    assert_eq!(graph_hash(&a), graph_hash(&a.clone()));
}
