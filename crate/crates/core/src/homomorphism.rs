//! Homomorphism search between r-graphs.
//!
//! A map `phi: V(F) -> V(G)` is a homomorphism when the image of every edge
//! of `F` is an edge of `G`; in particular `phi` is injective on each edge.

use serde::Serialize;

use crate::constructions::gamma;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexMap {
    from_n: usize,
    to_n: usize,
    images: Vec<usize>,
}

impl VertexMap {
    pub fn new(to_n: usize, images: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = images.iter().find(|&&w| w >= to_n) {
            return Err(Error::invalid(format!(
                "image {bad} out of range for {to_n} vertices"
            )));
        }
        Ok(VertexMap {
            from_n: images.len(),
            to_n,
            images,
        })
    }

    pub fn from_n(&self) -> usize {
        self.from_n
    }

    pub fn to_n(&self) -> usize {
        self.to_n
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.to_n];
        self.images
            .iter()
            .all(|&w| !std::mem::replace(&mut seen[w], true))
    }

    /// `then ∘ self`: first apply `self`, then `then`.
    pub fn compose(&self, then: &VertexMap) -> Result<VertexMap> {
        if self.to_n != then.from_n {
            return Err(Error::invalid("maps do not compose"));
        }
        VertexMap::new(
            then.to_n,
            self.images.iter().map(|&w| then.images[w]).collect(),
        )
    }

    /// Checks the homomorphism property directly, edge by edge.
    pub fn is_homomorphism(&self, f: &Hypergraph, g: &Hypergraph) -> bool {
        if self.from_n != f.n() || self.to_n != g.n() {
            return false;
        }
        if f.edge_count() == 0 {
            return true;
        }
        f.r() == g.r()
            && f.edges().iter().all(|e| {
                let mut image: Vec<usize> = e.iter().map(|&v| self.images[v]).collect();
                image.sort_unstable();
                image.windows(2).all(|w| w[0] < w[1]) && g.contains_edge(&image)
            })
    }
}

/// Outcome of a search together with the number of partial assignments tried.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomSearch {
    pub found: bool,
    pub map: Option<Vec<usize>>,
    pub nodes_expanded: u64,
}

struct Search<'a> {
    g: &'a Hypergraph,
    order: Vec<usize>,
    /// For each depth, the earlier-placed vertices sharing an edge with `order[depth]`.
    adjacent: Vec<Vec<usize>>,
    /// For each depth, the edges of F completed when `order[depth]` is placed.
    closing: Vec<Vec<Vec<usize>>>,
    g_pairs: Vec<Vec<usize>>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(f: &Hypergraph, g: &'a Hypergraph) -> Self {
        let n = f.n();
        let deg = f.degrees();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let f_pairs = f.pair_degree_matrix();
        let adjacent = order
            .iter()
            .enumerate()
            .map(|(d, &v)| {
                order[..d]
                    .iter()
                    .copied()
                    .filter(|&x| f_pairs[v][x] > 0)
                    .collect()
            })
            .collect();
        let mut closing = vec![Vec::new(); n];
        for e in f.edges() {
            let last = e
                .iter()
                .map(|&x| position[x])
                .max()
                .expect("edges are nonempty");
            closing[last].push(e.clone());
        }
        Search {
            g,
            order,
            adjacent,
            closing,
            g_pairs: g.pair_degree_matrix(),
            nodes: 0,
        }
    }

    fn fits(&self, depth: usize, w: usize, map: &mut [usize]) -> bool {
        let v = self.order[depth];
        if !self.adjacent[depth]
            .iter()
            .all(|&x| map[x] != w && self.g_pairs[w][map[x]] > 0)
        {
            return false;
        }
        map[v] = w;
        let ok = self.closing[depth].iter().all(|e| {
            let mut image: Vec<usize> = e.iter().map(|&x| map[x]).collect();
            image.sort_unstable();
            image.windows(2).all(|p| p[0] < p[1]) && self.g.contains_edge(&image)
        });
        if !ok {
            map[v] = usize::MAX;
        }
        ok
    }

    fn first(&mut self, depth: usize, map: &mut [usize]) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for w in 0..self.g.n() {
            if self.fits(depth, w, map) {
                self.nodes += 1;
                if self.first(depth + 1, map) {
                    return true;
                }
                map[v] = usize::MAX;
            }
        }
        false
    }

    fn all(
        &mut self,
        depth: usize,
        map: &mut [usize],
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> bool {
        if depth == self.order.len() {
            out.push(map.to_vec());
            return out.len() <= cap;
        }
        let v = self.order[depth];
        for w in 0..self.g.n() {
            if self.fits(depth, w, map) {
                self.nodes += 1;
                let keep_going = self.all(depth + 1, map, out, cap);
                map[v] = usize::MAX;
                if !keep_going {
                    return false;
                }
            }
        }
        true
    }
}

fn trivially_impossible(f: &Hypergraph, g: &Hypergraph) -> bool {
    (f.n() > 0 && g.n() == 0) || (f.edge_count() > 0 && f.r() != g.r())
}

/// Backtracking search for a homomorphism `F -> G`, reporting search effort.
///
/// Vertices of `F` are placed in order of decreasing degree and tried on the
/// vertices of `G` in increasing order, so the result is deterministic.
pub fn search_homomorphism(f: &Hypergraph, g: &Hypergraph) -> HomSearch {
    if trivially_impossible(f, g) {
        return HomSearch {
            found: false,
            map: None,
            nodes_expanded: 0,
        };
    }
    let mut search = Search::new(f, g);
    let mut map = vec![usize::MAX; f.n()];
    let found = search.first(0, &mut map);
    HomSearch {
        found,
        map: found.then_some(map),
        nodes_expanded: search.nodes,
    }
}

pub fn find_homomorphism(f: &Hypergraph, g: &Hypergraph) -> Option<VertexMap> {
    search_homomorphism(f, g)
        .map
        .map(|images| VertexMap::new(g.n(), images).expect("images are in range"))
}

/// `F` is `G`-colorable, i.e. `F` is contained in some blowup of `G`.
pub fn is_colorable(f: &Hypergraph, g: &Hypergraph) -> bool {
    find_homomorphism(f, g).is_some()
}

/// Every homomorphism `F -> G`, sorted lexicographically by image vector.
/// Finding more than `limit` maps yields [`Error::EnumerationLimit`] carrying
/// the first `limit` of them.
pub fn all_homomorphisms(f: &Hypergraph, g: &Hypergraph, limit: usize) -> Result<Vec<VertexMap>> {
    let mut out = Vec::new();
    if !trivially_impossible(f, g) {
        let mut search = Search::new(f, g);
        let mut map = vec![usize::MAX; f.n()];
        search.all(0, &mut map, &mut out, limit);
    }
    out.sort();
    let maps = out
        .into_iter()
        .map(|images| VertexMap::new(g.n(), images).expect("images are in range"));
    if maps.len() > limit {
        return Err(Error::EnumerationLimit {
            limit,
            partial: maps.take(limit).collect(),
        });
    }
    Ok(maps.collect())
}

pub const ENDOMORPHISM_VERTEX_BOUND: usize = 10;

/// All homomorphisms `G -> G` in lexicographic image order, for `n <= 10`.
pub fn enumerate_endomorphisms(g: &Hypergraph, limit: usize) -> Result<Vec<VertexMap>> {
    if g.n() > ENDOMORPHISM_VERTEX_BOUND {
        return Err(Error::SizeLimit {
            what: "endomorphism enumeration input",
            size: g.n(),
            bound: ENDOMORPHISM_VERTEX_BOUND,
        });
    }
    all_homomorphisms(g, g, limit)
}

/// Checks that every homomorphism from `gamma(t)` minus its vertex `t + 2`
/// into `gamma(t)` is injective, fixes `{0..t}` (and `{0..t-1}` when `t >= 3`)
/// setwise, sends `t, t+1, t+3` into `{t..t+3}`, and sends the pair
/// `{t, t+3}` onto `{t, t+3}` or `{t+1, t+2}`. At least one such map must exist.
pub fn partial_embedding_check(t: usize) -> Result<bool> {
    if !(2..=4).contains(&t) {
        return Err(Error::invalid(format!(
            "partial embedding check needs 2 <= t <= 4, got {t}"
        )));
    }
    let g = gamma(t)?;
    let removed = t + 2;
    let domain = g.without(&[removed])?;
    let maps = all_homomorphisms(&domain, &g, usize::MAX)?;
    // domain index i corresponds to vertex i of gamma(t) below `removed`, i + 1 above
    let original = |i: usize| if i < removed { i } else { i + 1 };
    let phi = |m: &VertexMap, v: usize| {
        m.image(
            (0..domain.n())
                .find(|&i| original(i) == v)
                .expect("kept vertex"),
        )
    };
    let set_eq = |m: &VertexMap, k: usize| {
        let mut img: Vec<usize> = (0..k).map(|v| phi(m, v)).collect();
        img.sort_unstable();
        img == (0..k).collect::<Vec<_>>()
    };
    let ok = maps.iter().all(|m| {
        let special = [t, t + 1, t + 3]
            .iter()
            .all(|&v| (t..t + 4).contains(&phi(m, v)));
        let mut ends = [phi(m, t), phi(m, t + 3)];
        ends.sort_unstable();
        m.is_injective()
            && set_eq(m, t)
            && (t < 3 || set_eq(m, t - 1))
            && special
            && (ends == [t, t + 3] || ends == [t + 1, t + 2])
    });
    Ok(ok && !maps.is_empty())
}

/// Membership in `F_M(G)`: at most `M` vertices and not `G`-colorable.
pub fn in_family_fm(f: &Hypergraph, g: &Hypergraph, m: usize) -> bool {
    f.n() <= m && !is_colorable(f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{blowup, BlowupSpec};

    fn k(n: usize) -> Hypergraph {
        Hypergraph::complete(3, n).unwrap()
    }

    fn c5() -> Hypergraph {
        Hypergraph::new(
            3,
            5,
            [[0, 1, 2], [1, 2, 3], [2, 3, 4], [0, 3, 4], [0, 1, 4]],
        )
        .unwrap()
    }

    #[test]
    fn find_examples() {
        let g4 = gamma(2).unwrap();
        let phi = find_homomorphism(&k(4), &g4).expect("K4 sits in gamma(2)");
        assert!(phi.is_homomorphism(&k(4), &g4));
        assert!(find_homomorphism(&k(5), &g4).is_none());
        let empty = Hypergraph::empty(3, 3).unwrap();
        assert!(find_homomorphism(&empty, &Hypergraph::empty(3, 1).unwrap()).is_some());
    }

    #[test]
    fn colorability_examples() {
        let b = blowup(&BlowupSpec::new(k(4), vec![2; 4]).unwrap()).unwrap();
        assert!(is_colorable(&b, &k(4)));
        assert!(!is_colorable(&gamma(2).unwrap(), &k(4)));
        // C5 has 5 edges on 5 vertices; any map into 4 vertices merges two
        // vertices, and every pair of C5 lies in an edge
        assert!(!is_colorable(&c5(), &k(4)));
        assert!(!is_colorable(&k(4), &c5()));
    }

    #[test]
    fn single_edge_endomorphisms() {
        let e = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        let maps = enumerate_endomorphisms(&e, 100).unwrap();
        assert_eq!(maps.len(), 6);
        assert_eq!(maps[0].images(), &[0, 1, 2]);
        assert_eq!(maps[5].images(), &[2, 1, 0]);
        match enumerate_endomorphisms(&e, 4) {
            Err(Error::EnumerationLimit { limit: 4, partial }) => assert_eq!(partial.len(), 4),
            other => panic!("expected limit error, got {other:?}"),
        }
        assert!(matches!(
            enumerate_endomorphisms(&Hypergraph::empty(3, 11).unwrap(), 10),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn gamma_endomorphisms_are_automorphisms() {
        for t in [2usize, 3] {
            let g = gamma(t).unwrap();
            let maps = enumerate_endomorphisms(&g, 100_000).unwrap();
            assert!(!maps.is_empty());
            for m in &maps {
                assert!(m.is_injective());
                let mut head: Vec<usize> = (0..t).map(|v| m.image(v)).collect();
                head.sort_unstable();
                assert_eq!(head, (0..t).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn partial_embeddings() {
        assert!(partial_embedding_check(2).unwrap());
        assert!(partial_embedding_check(1).is_err());
        assert!(partial_embedding_check(5).is_err());
    }

    #[test]
    fn family_membership() {
        let g4 = gamma(2).unwrap();
        assert!(in_family_fm(&k(5), &g4, 144));
        assert!(!in_family_fm(&k(4), &g4, 4));
        assert!(!in_family_fm(&k(5), &g4, 4));
    }

    #[test]
    fn composition() {
        let e = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        let phi = find_homomorphism(&e, &k(4)).unwrap();
        let psi = find_homomorphism(&k(4), &gamma(2).unwrap()).unwrap();
        let both = phi.compose(&psi).unwrap();
        assert!(both.is_homomorphism(&e, &gamma(2).unwrap()));
        assert!(psi.compose(&phi).is_err());
    }
}
