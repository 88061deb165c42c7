//! Uniform hypergraphs (r-graphs) on the vertex set `0..n`.
//!
//! Vertices are 0-based throughout; a vertex written `i` in 1-based
//! mathematical notation is stored as `i - 1`.

mod clique;
mod format;
mod iso;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{binomial, Rational};

pub use clique::{has_clique, max_clique_size, shadow_clique_free};
pub use format::{parse_text, to_text};
pub use iso::{are_isomorphic, are_isomorphic_with_bound, DEFAULT_ISO_BOUND};

/// An r-uniform hypergraph with canonical (sorted, deduplicated) edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph")]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawHypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::new(raw.r, raw.n, raw.edges)
    }
}

/// An unordered pair of distinct vertices, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GraphPair {
    u: usize,
    v: usize,
}

impl GraphPair {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::invalid(format!(
                "pair needs two distinct vertices, got {a},{a}"
            )));
        }
        Ok(GraphPair {
            u: a.min(b),
            v: a.max(b),
        })
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn contains(&self, x: usize) -> bool {
        x == self.u || x == self.v
    }
}

impl fmt::Display for GraphPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

/// The (r-2)-sets completing a pair to an edge. For r = 3 these are single vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codegree {
    pub completions: Vec<Vec<usize>>,
    pub count: usize,
}

impl Codegree {
    /// Neighbourhood as a vertex list; only meaningful for 3-graphs.
    pub fn vertices(&self) -> Vec<usize> {
        self.completions.iter().flatten().copied().collect()
    }
}

impl Hypergraph {
    /// Builds an r-graph on `n` vertices. Each edge must consist of exactly `r`
    /// distinct in-range vertices; repeated edges collapse to one.
    pub fn new<E, I>(r: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if r == 0 {
            return Err(Error::invalid("uniformity must be at least 1"));
        }
        let mut set = BTreeSet::new();
        for e in edges {
            let e = e.as_ref();
            if e.len() != r {
                return Err(Error::invalid(format!(
                    "edge {e:?} has {} vertices, expected {r}",
                    e.len()
                )));
            }
            let mut sorted = e.to_vec();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("edge {e:?} repeats a vertex")));
            }
            if let Some(&bad) = sorted.iter().find(|&&x| x >= n) {
                return Err(Error::invalid(format!(
                    "vertex {bad} out of range for n = {n}"
                )));
            }
            set.insert(sorted);
        }
        Ok(Hypergraph {
            r,
            n,
            edges: set.into_iter().collect(),
        })
    }

    pub fn empty(r: usize, n: usize) -> Result<Self> {
        Self::new::<[usize; 0], _>(r, n, [])
    }

    /// The complete r-graph on `n` vertices.
    pub fn complete(r: usize, n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for_each_subset(n, r, |s| edges.push(s.to_vec()));
        Self::new(r, n, edges)
    }

    /// Internal constructor for edge lists already known to be valid.
    pub(crate) fn from_valid_edges(r: usize, n: usize, mut edges: Vec<Vec<usize>>) -> Self {
        for e in edges.iter_mut() {
            e.sort_unstable();
        }
        edges.sort();
        edges.dedup();
        debug_assert!(edges.iter().all(|e| e.len() == r
            && e.windows(2).all(|w| w[0] < w[1])
            && e.iter().all(|&x| x < n)));
        Hypergraph { r, n, edges }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &x in e {
                deg[x] += 1;
            }
        }
        deg
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::invalid(format!(
                "vertex {v} out of range for n = {}",
                self.n
            )));
        }
        Ok(())
    }

    /// Iterated shadow: all (r - steps)-subsets contained in some edge.
    pub fn shadow(&self, steps: usize) -> Result<Hypergraph> {
        if steps == 0 || steps >= self.r {
            return Err(Error::invalid(format!(
                "shadow steps must lie in 1..{}, got {steps}",
                self.r
            )));
        }
        let k = self.r - steps;
        let mut out = BTreeSet::new();
        for e in &self.edges {
            for_each_subset(e.len(), k, |idx| {
                out.insert(idx.iter().map(|&i| e[i]).collect::<Vec<_>>());
            });
        }
        Ok(Hypergraph {
            r: k,
            n: self.n,
            edges: out.into_iter().collect(),
        })
    }

    /// Link of `v` as an (r-1)-graph on the same vertex set; `v` is isolated in it.
    pub fn link(&self, v: usize) -> Result<Hypergraph> {
        self.check_vertex(v)?;
        if self.r < 2 {
            return Err(Error::invalid("link needs r >= 2"));
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.contains(&v))
            .map(|e| e.iter().copied().filter(|&x| x != v).collect())
            .collect();
        Ok(Hypergraph::from_valid_edges(self.r - 1, self.n, edges))
    }

    /// Edges through the pair, reported by their completing (r-2)-sets.
    pub fn codegree(&self, pair: GraphPair) -> Result<Codegree> {
        if self.r < 3 {
            return Err(Error::invalid(format!(
                "codegree needs r >= 3, got r = {}",
                self.r
            )));
        }
        self.check_vertex(pair.v)?;
        let completions: Vec<Vec<usize>> = self
            .edges
            .iter()
            .filter(|e| e.contains(&pair.u) && e.contains(&pair.v))
            .map(|e| e.iter().copied().filter(|&x| !pair.contains(x)).collect())
            .collect();
        Ok(Codegree {
            count: completions.len(),
            completions,
        })
    }

    /// Number of edges containing both vertices, for any r >= 2.
    pub fn pair_degree(&self, a: usize, b: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.contains(&a) && e.contains(&b))
            .count()
    }

    /// `n x n` matrix of pair degrees.
    pub fn pair_degree_matrix(&self) -> Vec<Vec<usize>> {
        let mut m = vec![vec![0; self.n]; self.n];
        for e in &self.edges {
            for (i, &a) in e.iter().enumerate() {
                for &b in &e[i + 1..] {
                    m[a][b] += 1;
                    m[b][a] += 1;
                }
            }
        }
        m
    }

    /// Every pair of distinct vertices lies in a common edge.
    pub fn is_two_covered(&self) -> bool {
        if self.r < 2 {
            return self.n <= 1;
        }
        let m = self.pair_degree_matrix();
        (0..self.n).all(|a| (a + 1..self.n).all(|b| m[a][b] > 0))
    }

    /// `L(v1) - v2 == L(v2) - v1` for a 3-graph.
    pub fn is_symmetric_pair(&self, pair: GraphPair) -> Result<bool> {
        if self.r != 3 {
            return Err(Error::UnsupportedUniformity {
                expected: 3,
                found: self.r,
            });
        }
        self.check_vertex(pair.v)?;
        let reduced = |a: usize, b: usize| -> BTreeSet<Vec<usize>> {
            self.edges
                .iter()
                .filter(|e| e.contains(&a) && !e.contains(&b))
                .map(|e| e.iter().copied().filter(|&x| x != a).collect())
                .collect()
        };
        Ok(reduced(pair.u, pair.v) == reduced(pair.v, pair.u))
    }

    /// Induced subgraph on `vertices`, relabelled `0..|S|` in increasing order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Hypergraph> {
        let mut s: Vec<usize> = vertices.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&bad) = s.iter().find(|&&x| x >= self.n) {
            return Err(Error::invalid(format!(
                "vertex {bad} out of range for n = {}",
                self.n
            )));
        }
        let mut index = vec![usize::MAX; self.n];
        for (new, &old) in s.iter().enumerate() {
            index[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&x| index[x] != usize::MAX))
            .map(|e| e.iter().map(|&x| index[x]).collect())
            .collect();
        Ok(Hypergraph::from_valid_edges(self.r, s.len(), edges))
    }

    /// `G - S`: induced subgraph on the complement of `removed`.
    pub fn without(&self, removed: &[usize]) -> Result<Hypergraph> {
        let keep: Vec<usize> = (0..self.n).filter(|v| !removed.contains(v)).collect();
        self.induced(&keep)
    }

    /// Image under the bijection `old -> perm[old]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Hypergraph> {
        if perm.len() != self.n {
            return Err(Error::invalid(format!(
                "relabelling has length {}, expected {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::invalid("relabelling is not a permutation"));
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&x| perm[x]).collect())
            .collect();
        Ok(Hypergraph::from_valid_edges(self.r, self.n, edges))
    }

    /// Exact edge density `|H| / C(n, r)` and shadow density `|dH| / C(n, r-1)`.
    pub fn densities(&self) -> Result<(Rational, Rational)> {
        if self.r < 2 {
            return Err(Error::invalid("densities need r >= 2"));
        }
        if self.n < self.r {
            return Err(Error::invalid(format!(
                "densities need n >= r, got n = {} < r = {}",
                self.n, self.r
            )));
        }
        let n = self.n as u64;
        let r = self.r as u64;
        let edge = Rational::new(self.edges.len().into(), binomial(n, r));
        let shadow = self.shadow(1)?;
        let sh = Rational::new(shadow.edges.len().into(), binomial(n, r - 1));
        Ok((edge, sh))
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_text(self))
    }
}

/// Calls `f` with every k-subset of `0..n` as an increasing index slice, in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
