mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use turan_core::constructions::{
    blowup, blowup_edge_count, count_extremal_profiles, crossed_blowup, extremal_blowup_search,
    feasible_limit, gamma, gamma_special_start, k_crossed_blowup, BlowupSpec, SearchMode,
};
use turan_core::hypergraph::{are_isomorphic, for_each_subset};
use turan_core::lagrangian::{
    maximize, predicted_segment, verify_segment, MaximizeOptions, SimplexPoint,
};
use turan_core::rational::{int, rat, Rational};
use turan_core::{GraphPair, Hypergraph, MultilinearPoly};

use common::{three_graph, triples};

fn pair(a: usize, b: usize) -> GraphPair {
    GraphPair::new(a, b).unwrap()
}

/// Sets of `k` vertices spanning a complete 3-graph.
fn complete_sets(g: &Hypergraph, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_subset(g.n(), k, |s| {
        if g.induced(s).unwrap().edge_count() == k * (k - 1) * (k - 2) / 6 {
            out.push(s.to_vec());
        }
    });
    out
}

#[test]
fn crossed_blowup_keeps_g_on_both_transversals() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    while checked < 40 {
        let n = rng.gen_range(4..=7);
        let edges: Vec<Vec<usize>> = triples(n)
            .into_iter()
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        let g = Hypergraph::new(3, n, edges).unwrap();
        let p = pair(rng.gen_range(0..n - 1), n - 1);
        if g.codegree(p).unwrap().count < 2 {
            continue;
        }
        checked += 1;
        let h = crossed_blowup(&g, p).unwrap();
        let (v1, v2) = (p.u(), p.v());
        // U1 swaps v2 for its clone, U2 swaps v1 for its clone
        for (orig, clone) in [(v2, n + 1), (v1, n)] {
            let u: Vec<usize> = (0..n).map(|x| if x == orig { clone } else { x }).collect();
            let mut sorted = u.clone();
            sorted.sort_unstable();
            let induced = h.induced(&sorted).unwrap();
            // induced relabels by rank; map G's vertex x to the rank of u[x]
            let perm: Vec<usize> = u.iter().map(|x| sorted.binary_search(x).unwrap()).collect();
            assert_eq!(g.relabel(&perm).unwrap(), induced);
        }
    }
}

#[test]
fn crossed_blowup_preserves_two_covering() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut covered, mut uncovered) = (0, 0);
    while covered + uncovered < 50 {
        let n = rng.gen_range(4..=7);
        let density = if covered < 25 { 0.85 } else { 0.45 };
        let edges: Vec<Vec<usize>> = triples(n)
            .into_iter()
            .filter(|_| rng.gen_bool(density))
            .collect();
        let g = Hypergraph::new(3, n, edges).unwrap();
        let p = pair(0, 1);
        if g.codegree(p).unwrap().count < 2 {
            continue;
        }
        let want_covered = covered < 25;
        if g.is_two_covered() != want_covered {
            continue;
        }
        if want_covered {
            covered += 1;
        } else {
            uncovered += 1;
        }
        assert_eq!(
            crossed_blowup(&g, p).unwrap().is_two_covered(),
            g.is_two_covered()
        );
    }
}

#[test]
fn segment_certificates_for_complete_graphs() {
    let cases = vec![
        (
            Hypergraph::complete(3, 4).unwrap(),
            pair(2, 3),
            SimplexPoint::<Rational>::uniform(4).unwrap(),
            rat(1, 16),
        ),
        (
            Hypergraph::complete(3, 5).unwrap(),
            pair(3, 4),
            SimplexPoint::<Rational>::uniform(5).unwrap(),
            rat(2, 25),
        ),
        (
            Hypergraph::complete(3, 6).unwrap(),
            pair(4, 5),
            SimplexPoint::<Rational>::uniform(6).unwrap(),
            rat(5, 54),
        ),
        (
            Hypergraph::new(3, 4, [[0, 2, 3], [1, 2, 3]]).unwrap(),
            pair(2, 3),
            SimplexPoint::<Rational>::new(vec![rat(1, 6), rat(1, 6), rat(1, 3), rat(1, 3)])
                .unwrap(),
            rat(1, 27),
        ),
    ];
    for (g, p, z, lambda) in cases {
        assert_eq!(
            MultilinearPoly::from_hypergraph(&g)
                .evaluate(z.coords())
                .unwrap(),
            lambda
        );
        let (y, w) = predicted_segment(&g, p, &z).unwrap();
        let h = MultilinearPoly::from_hypergraph(&crossed_blowup(&g, p).unwrap());
        assert!(verify_segment(&h, &y, &w, 11, &lambda).unwrap().holds);
        // the optimizer agrees that nothing better exists
        let res = maximize(&h, &MaximizeOptions::default()).unwrap();
        assert_eq!(res.exact, Some(lambda));
    }
}

#[test]
fn two_crossed_blowup_matches_crossed_blowup_on_symmetric_pairs() {
    let cases = [
        (Hypergraph::complete(3, 4).unwrap(), pair(2, 3)),
        (Hypergraph::complete(3, 5).unwrap(), pair(3, 4)),
        (
            Hypergraph::new(3, 4, [[0, 2, 3], [1, 2, 3]]).unwrap(),
            pair(2, 3),
        ),
        (
            Hypergraph::new(3, 5, [[0, 3, 4], [1, 3, 4], [2, 3, 4], [0, 1, 2]]).unwrap(),
            pair(3, 4),
        ),
    ];
    for (g, p) in cases {
        assert!(g.is_symmetric_pair(p).unwrap());
        let a = crossed_blowup(&g, p).unwrap();
        let b = k_crossed_blowup(&g, p, 2).unwrap();
        assert!(are_isomorphic(&a, &b).unwrap().is_some(), "{g}");
    }
}

#[test]
fn neighbour_order_does_not_matter_for_symmetric_pairs() {
    // relabel the common neighbours so a different one comes last
    let g = Hypergraph::complete(3, 5).unwrap();
    let p = pair(3, 4);
    let base = crossed_blowup(&g, p).unwrap();
    for perm in [[2, 1, 0, 3, 4], [1, 2, 0, 3, 4], [0, 2, 1, 4, 3]] {
        let other = crossed_blowup(&g.relabel(&perm).unwrap(), p).unwrap();
        assert!(are_isomorphic(&base, &other).unwrap().is_some());
    }
}

#[test]
fn gamma2_complete_four_sets() {
    let g = gamma(2).unwrap();
    assert_eq!(
        complete_sets(&g, 4),
        vec![vec![0, 1, 2, 5], vec![0, 1, 3, 4]]
    );
    assert!(complete_sets(&g, 5).is_empty());
}

#[test]
fn gamma_links_split_into_two_classes() {
    for t in 1..=4usize {
        let g = gamma(t).unwrap();
        let s = gamma_special_start(t);
        let links: Vec<Hypergraph> = (0..g.n()).map(|v| g.link(v).unwrap()).collect();
        for class in [0..s, s..s + 4] {
            let class: Vec<usize> = class.collect();
            for &v in &class {
                assert!(
                    are_isomorphic(&links[class[0]], &links[v])
                        .unwrap()
                        .is_some(),
                    "t = {t}, vertices {} and {v}",
                    class[0]
                );
            }
        }
    }
}

#[test]
fn two_cliques_sharing_all_but_one_vertex() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let g = gamma(2).unwrap();
    for _ in 0..10 {
        let sizes: Vec<u64> = (0..6).map(|_| rng.gen_range(1..=2)).collect();
        let h = blowup(&BlowupSpec::new(g.clone(), sizes).unwrap()).unwrap();
        let cliques = complete_sets(&h, 4);
        for a in &cliques {
            for b in &cliques {
                let only_a: Vec<usize> = a.iter().copied().filter(|x| !b.contains(x)).collect();
                let only_b: Vec<usize> = b.iter().copied().filter(|x| !a.contains(x)).collect();
                if only_a.len() == 1 {
                    assert_eq!(h.pair_degree(only_a[0], only_b[0]), 0);
                }
            }
        }
    }
}

#[test]
fn extremal_profiles_are_optimal_and_pairwise_distinct() {
    let t = 2usize;
    let g = gamma(t).unwrap();
    for n in [12u64, 24] {
        let best = extremal_blowup_search(&g, n, SearchMode::Exhaustive).unwrap();
        assert_eq!(best.count as u64, n * n * n / 16);
        let profiles = count_extremal_profiles(t, n).unwrap();
        let m = n / 4;
        assert_eq!(profiles.count as u64, m / 2 + 1);
        for sizes in &profiles.sizes {
            let spec = BlowupSpec::new(g.clone(), sizes.clone()).unwrap();
            assert_eq!(blowup_edge_count(&spec), best.count);
        }
    }
    let profiles = count_extremal_profiles(t, 12).unwrap();
    let graphs: Vec<Hypergraph> = profiles
        .sizes
        .iter()
        .map(|s| blowup(&BlowupSpec::new(g.clone(), s.clone()).unwrap()).unwrap())
        .collect();
    assert!(are_isomorphic(&graphs[0], &graphs[1]).unwrap().is_none());
}

#[test]
fn local_search_reaches_the_exhaustive_optimum() {
    let g = gamma(2).unwrap();
    for n in [10u64, 12, 17] {
        let full = extremal_blowup_search(&g, n, SearchMode::Exhaustive).unwrap();
        let local = extremal_blowup_search(&g, n, SearchMode::Local).unwrap();
        assert_eq!(local.count, full.count, "n = {n}");
    }
}

#[test]
fn shadow_limit_range() {
    for t in 1..=5i64 {
        let lo = feasible_limit(t as usize, &rat(0, 1))
            .unwrap()
            .shadow_density;
        let hi = feasible_limit(t as usize, &rat(1, 2))
            .unwrap()
            .shadow_density;
        assert_eq!(lo, rat(t + 1, t + 2));
        assert_eq!(hi, rat(t * t + 3 * t + 3, (t + 2) * (t + 2)));
        let mut prev = lo;
        for j in 1..=20 {
            let s = feasible_limit(t as usize, &rat(j, 40))
                .unwrap()
                .shadow_density;
            assert!(s > prev);
            prev = s;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn count_formula_matches_materialised_blowup(
        g in three_graph(3, 5),
        sizes in proptest::collection::vec(0u64..4, 5),
    ) {
        let spec = BlowupSpec::new(g.clone(), sizes[..g.n()].to_vec()).unwrap();
        prop_assert_eq!(blowup(&spec).unwrap().edge_count() as u128, blowup_edge_count(&spec));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn blowups_respect_the_lagrangian_bound(
        g in three_graph(3, 6),
        sizes in proptest::collection::vec(0u64..20, 6),
    ) {
        let sizes = sizes[..g.n()].to_vec();
        let n: u64 = sizes.iter().sum();
        prop_assume!(n > 0);
        let spec = BlowupSpec::new(g.clone(), sizes).unwrap();
        let lambda = maximize(&MultilinearPoly::from_hypergraph(&g), &MaximizeOptions::default()).unwrap();
        let scale = (n as f64).powi(3);
        prop_assert!(blowup_edge_count(&spec) as f64 <= lambda.value * scale + 1e-6 * scale);
        // exact form of the same inequality when the Lagrangian is certified
        if let Some(exact) = lambda.exact {
            prop_assert!(int(blowup_edge_count(&spec)) <= exact * int(n * n * n));
        }
    }
}
