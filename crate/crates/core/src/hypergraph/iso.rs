//! Brute-force isomorphism for small hypergraphs.

use super::Hypergraph;
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`are_isomorphic`].
pub const DEFAULT_ISO_BOUND: usize = 12;

/// Finds a bijection `phi` with `phi(E) in h2` for every `E in h1`, if one exists.
pub fn are_isomorphic(h1: &Hypergraph, h2: &Hypergraph) -> Result<Option<Vec<usize>>> {
    are_isomorphic_with_bound(h1, h2, DEFAULT_ISO_BOUND)
}

pub fn are_isomorphic_with_bound(
    h1: &Hypergraph,
    h2: &Hypergraph,
    bound: usize,
) -> Result<Option<Vec<usize>>> {
    for h in [h1, h2] {
        if h.n() > bound {
            return Err(Error::SizeLimit {
                what: "isomorphism input",
                size: h.n(),
                bound,
            });
        }
    }
    if h1.n() != h2.n() || h1.r() != h2.r() || h1.edge_count() != h2.edge_count() {
        return Ok(None);
    }
    let deg1 = h1.degrees();
    let deg2 = h2.degrees();
    let mut s1 = deg1.clone();
    let mut s2 = deg2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(None);
    }
    let pd1 = h1.pair_degree_matrix();
    let pd2 = h2.pair_degree_matrix();
    let mut p1: Vec<usize> = pd1.iter().flat_map(|row| row.iter().copied()).collect();
    let mut p2: Vec<usize> = pd2.iter().flat_map(|row| row.iter().copied()).collect();
    p1.sort_unstable();
    p2.sort_unstable();
    if p1 != p2 {
        return Ok(None);
    }

    let n = h1.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| deg1[b].cmp(&deg1[a]).then(a.cmp(&b)));
    // edges of h1 become checkable once their last vertex (in `order`) is placed
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut closing: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); n];
    for e in h1.edges() {
        let last = e.iter().map(|&x| position[x]).max().unwrap_or(0);
        closing[last].push(e);
    }

    let search = IsoSearch {
        h2,
        deg1: &deg1,
        deg2: &deg2,
        pd1: &pd1,
        pd2: &pd2,
        order: &order,
        closing: &closing,
    };
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(search.extend(0, &mut map, &mut used).then_some(map))
}

struct IsoSearch<'a> {
    h2: &'a Hypergraph,
    deg1: &'a [usize],
    deg2: &'a [usize],
    pd1: &'a [Vec<usize>],
    pd2: &'a [Vec<usize>],
    order: &'a [usize],
    closing: &'a [Vec<&'a Vec<usize>>],
}

impl IsoSearch<'_> {
    fn extend(&self, depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for w in 0..map.len() {
            if used[w] || self.deg2[w] != self.deg1[v] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&x| self.pd1[v][x] == self.pd2[w][map[x]]);
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            let edges_ok = self.closing[depth].iter().all(|e| {
                let image: Vec<usize> = e.iter().map(|&x| map[x]).collect();
                self.h2.contains_edge(&image)
            });
            if edges_ok && self.extend(depth + 1, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_witness(h1: &Hypergraph, h2: &Hypergraph, phi: &[usize]) {
        assert_eq!(h1.relabel(phi).unwrap(), *h2);
    }

    #[test]
    fn relabelled_complete_graph() {
        let k = Hypergraph::complete(3, 4).unwrap();
        let k2 = k.relabel(&[3, 1, 0, 2]).unwrap();
        let phi = are_isomorphic(&k, &k2).unwrap().expect("isomorphic");
        check_witness(&k, &k2, &phi);
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        let k = Hypergraph::complete(3, 4).unwrap();
        let c5 = Hypergraph::new(
            3,
            5,
            [[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 0], [4, 0, 1]],
        )
        .unwrap();
        assert_eq!(are_isomorphic(&k, &c5).unwrap(), None);
    }

    #[test]
    fn same_degrees_but_different_structure() {
        // two 3-edge graphs on 6 vertices: a "path" and a "triangle" of triples
        let a = Hypergraph::new(3, 6, [[0, 1, 2], [2, 3, 4], [4, 5, 0]]).unwrap();
        let b = Hypergraph::new(3, 6, [[0, 1, 2], [0, 3, 4], [0, 5, 1]]).unwrap();
        assert_eq!(are_isomorphic(&a, &b).unwrap(), None);
        let c = a.relabel(&[5, 4, 3, 2, 1, 0]).unwrap();
        let phi = are_isomorphic(&a, &c).unwrap().unwrap();
        check_witness(&a, &c, &phi);
    }

    #[test]
    fn bound_is_enforced() {
        let big = Hypergraph::empty(3, 13).unwrap();
        assert!(matches!(
            are_isomorphic(&big, &big),
            Err(Error::SizeLimit {
                size: 13,
                bound: 12,
                ..
            })
        ));
        assert!(are_isomorphic_with_bound(&big, &big, 13).unwrap().is_some());
    }
}
