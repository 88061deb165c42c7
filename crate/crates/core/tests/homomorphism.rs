mod common;

use proptest::prelude::*;
use turan_core::constructions::{blowup, gamma, BlowupSpec};
use turan_core::homomorphism::{
    enumerate_endomorphisms, find_homomorphism, in_family_fm, is_colorable,
    partial_embedding_check, search_homomorphism,
};
use turan_core::hypergraph::shadow_clique_free;
use turan_core::Hypergraph;

use common::{brute_force_hom, three_graph};

#[test]
fn gamma_endomorphisms_are_rigid() {
    for t in [2usize, 3] {
        let g = gamma(t).unwrap();
        let maps = enumerate_endomorphisms(&g, 1_000_000).unwrap();
        assert!(!maps.is_empty());
        let pairs = [[t, t + 3], [t + 1, t + 2]];
        for phi in &maps {
            assert!(phi.is_injective());
            let image = |set: &[usize]| {
                let mut v: Vec<usize> = set.iter().map(|&x| phi.image(x)).collect();
                v.sort_unstable();
                v
            };
            assert_eq!(
                image(&(0..t).collect::<Vec<_>>()),
                (0..t).collect::<Vec<_>>()
            );
            for p in pairs {
                assert!(pairs.contains(&[image(&p)[0], image(&p)[1]]));
            }
            if t >= 3 {
                assert_eq!(
                    image(&(0..t - 1).collect::<Vec<_>>()),
                    (0..t - 1).collect::<Vec<_>>()
                );
            }
        }
        // sorted by image vector
        assert!(maps.windows(2).all(|w| w[0].images() < w[1].images()));
    }
}

#[test]
fn partial_embeddings_are_rigid() {
    for t in 2..=4 {
        assert!(partial_embedding_check(t).unwrap(), "t = {t}");
    }
}

#[test]
fn k5_is_not_gamma2_colorable() {
    let k5 = Hypergraph::complete(3, 5).unwrap();
    let g = gamma(2).unwrap();
    assert!(!is_colorable(&k5, &g));
    assert!(!brute_force_hom(&k5, &g, false));
    assert!(in_family_fm(&k5, &g, 4 * 6 * 6));
    let search = search_homomorphism(&k5, &g);
    assert!(!search.found && search.nodes_expanded > 0);
}

#[test]
fn blowups_of_gamma_have_small_shadow_cliques() {
    for t in 1..=3usize {
        let g = gamma(t).unwrap();
        let sizes: Vec<u64> = (0..g.n() as u64).map(|i| 1 + i % 2).collect();
        let h = blowup(&BlowupSpec::new(g.clone(), sizes).unwrap()).unwrap();
        assert!(shadow_clique_free(&h, g.n()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn search_agrees_with_brute_force(f in three_graph(3, 5), g in three_graph(3, 5)) {
        let found = find_homomorphism(&f, &g);
        prop_assert_eq!(found.is_some(), brute_force_hom(&f, &g, false));
        if let Some(phi) = found {
            prop_assert!(phi.is_homomorphism(&f, &g));
        }
    }

    #[test]
    fn homomorphisms_compose(f in three_graph(3, 5), g in three_graph(3, 5), k in three_graph(3, 5)) {
        if let (Some(phi), Some(psi)) = (find_homomorphism(&f, &g), find_homomorphism(&g, &k)) {
            prop_assert!(phi.compose(&psi).unwrap().is_homomorphism(&f, &k));
        }
    }

    #[test]
    fn colorability_survives_blowups(
        f in three_graph(3, 5),
        sizes in proptest::collection::vec(1u64..3, 5),
    ) {
        let g = gamma(2).unwrap();
        prop_assume!(!in_family_fm(&f, &g, 100));
        let spec = BlowupSpec::new(f.clone(), sizes[..f.n()].to_vec()).unwrap();
        prop_assert!(is_colorable(&blowup(&spec).unwrap(), &g));
    }

    #[test]
    fn two_covered_sources_embed_injectively(f in three_graph(3, 4), h in three_graph(4, 6)) {
        prop_assume!(f.is_two_covered());
        prop_assert_eq!(is_colorable(&f, &h), brute_force_hom(&f, &h, true));
    }
}

#[test]
fn oversized_sources_are_outside_the_family() {
    let f = Hypergraph::empty(3, 11).unwrap();
    assert!(!in_family_fm(&f, &gamma(2).unwrap(), 10));
}
