#![allow(dead_code)]

use proptest::prelude::*;
use turan_core::hypergraph::for_each_subset;
use turan_core::Hypergraph;

/// All triples of `0..n` in lexicographic order.
pub fn triples(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_subset(n, 3, |s| out.push(s.to_vec()));
    out
}

/// Random 3-graph on `n` vertices, `n` drawn from `lo..=hi`.
pub fn three_graph(lo: usize, hi: usize) -> impl Strategy<Value = Hypergraph> {
    (lo..=hi).prop_flat_map(|n| {
        let all = triples(n);
        proptest::collection::vec(any::<bool>(), all.len()).prop_map(move |mask| {
            let edges: Vec<Vec<usize>> = all
                .iter()
                .zip(&mask)
                .filter(|(_, &keep)| keep)
                .map(|(e, _)| e.clone())
                .collect();
            Hypergraph::new(3, n, edges).unwrap()
        })
    })
}

/// Brute-force homomorphism test: tries every map `V(F) -> V(G)`.
pub fn brute_force_hom(f: &Hypergraph, g: &Hypergraph, injective_only: bool) -> bool {
    let n = f.n();
    let m = g.n();
    if n == 0 {
        return true;
    }
    if m == 0 {
        return false;
    }
    let mut map = vec![0usize; n];
    loop {
        let injective = {
            let mut s = map.clone();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] < w[1])
        };
        if (!injective_only || injective)
            && f.edges().iter().all(|e| {
                let mut img: Vec<usize> = e.iter().map(|&v| map[v]).collect();
                img.sort_unstable();
                img.windows(2).all(|w| w[0] < w[1]) && g.edges().contains(&img)
            })
        {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            map[i] += 1;
            if map[i] < m {
                break;
            }
            map[i] = 0;
            i += 1;
        }
    }
}
