//! Blowups, crossed blowups and the extremal family `gamma(t)`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{GraphPair, Hypergraph};
use crate::lagrangian::{maximize, MaximizeOptions};
use crate::polynomial::MultilinearPoly;
use crate::rational::{binomial, compositions, int, rat, Rational};

/// A base hypergraph together with one part size per base vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupSpec {
    base: Hypergraph,
    part_sizes: Vec<u64>,
}

impl BlowupSpec {
    pub fn new(base: Hypergraph, part_sizes: Vec<u64>) -> Result<Self> {
        if part_sizes.len() != base.n() {
            return Err(Error::invalid(format!(
                "{} part sizes given for {} base vertices",
                part_sizes.len(),
                base.n()
            )));
        }
        Ok(BlowupSpec { base, part_sizes })
    }

    pub fn base(&self) -> &Hypergraph {
        &self.base
    }

    pub fn part_sizes(&self) -> &[u64] {
        &self.part_sizes
    }

    pub fn total(&self) -> u64 {
        self.part_sizes.iter().sum()
    }

    /// First vertex index of every part; part `i` occupies `offsets[i]..offsets[i] + size_i`.
    pub fn offsets(&self) -> Vec<u64> {
        self.part_sizes
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect()
    }
}

pub const DEFAULT_BLOWUP_EDGE_CAP: u128 = 5_000_000;

/// Materialises `G[V_1, ..., V_m]`; part `i` is a contiguous block of indices.
pub fn blowup(spec: &BlowupSpec) -> Result<Hypergraph> {
    blowup_with_cap(spec, DEFAULT_BLOWUP_EDGE_CAP)
}

pub fn blowup_with_cap(spec: &BlowupSpec, cap: u128) -> Result<Hypergraph> {
    let needed = blowup_edge_count(spec);
    if needed > cap {
        return Err(Error::Budget {
            what: "blowup edges",
            needed,
            cap,
        });
    }
    let n = usize::try_from(spec.total()).map_err(|_| Error::Overflow("blowup vertex count"))?;
    let offsets = spec.offsets();
    let mut edges = Vec::with_capacity(needed as usize);
    for e in spec.base.edges() {
        let ranges: Vec<(usize, usize)> = e
            .iter()
            .map(|&v| (offsets[v] as usize, spec.part_sizes[v] as usize))
            .collect();
        if ranges.iter().any(|&(_, s)| s == 0) {
            continue;
        }
        let mut pick = vec![0usize; ranges.len()];
        'product: loop {
            edges.push(
                ranges
                    .iter()
                    .zip(&pick)
                    .map(|(&(o, _), &k)| o + k)
                    .collect(),
            );
            let mut pos = ranges.len();
            loop {
                if pos == 0 {
                    break 'product;
                }
                pos -= 1;
                pick[pos] += 1;
                if pick[pos] < ranges[pos].1 {
                    break;
                }
                pick[pos] = 0;
            }
        }
    }
    Ok(Hypergraph::from_valid_edges(spec.base.r(), n, edges))
}

/// `sum over edges E of prod_{i in E} |V_i|`, without materialising the blowup.
/// Saturates at `u128::MAX`.
pub fn blowup_edge_count(spec: &BlowupSpec) -> u128 {
    edge_count_for(spec.base.edges(), &spec.part_sizes)
}

fn edge_count_for(edges: &[Vec<usize>], sizes: &[u64]) -> u128 {
    edges.iter().fold(0u128, |acc, e| {
        let prod = e
            .iter()
            .fold(1u128, |p, &v| p.saturating_mul(sizes[v] as u128));
        acc.saturating_add(prod)
    })
}

fn require_three_graph(g: &Hypergraph) -> Result<()> {
    if g.r() != 3 {
        return Err(Error::UnsupportedUniformity {
            expected: 3,
            found: g.r(),
        });
    }
    Ok(())
}

/// Edges through neither vertex of the pair-removal step, and the sorted
/// common neighbours `u_1 < ... < u_d` of the pair.
fn split_pair(g: &Hypergraph, pair: GraphPair) -> Result<(Vec<Vec<usize>>, Vec<usize>)> {
    require_three_graph(g)?;
    if pair.v() >= g.n() {
        return Err(Error::invalid(format!(
            "pair {pair} out of range for n = {}",
            g.n()
        )));
    }
    let mut neighbours = g.codegree(pair)?.vertices();
    neighbours.sort_unstable();
    let kept = g
        .edges()
        .iter()
        .filter(|e| !(e.contains(&pair.u()) && e.contains(&pair.v())))
        .cloned()
        .collect();
    Ok((kept, neighbours))
}

/// The crossed blowup `G ⊞ {v1, v2}` of a 3-graph, `v1 = pair.u()`, `v2 = pair.v()`.
///
/// 1. Every edge containing both `v1` and `v2` is removed.
/// 2. Clones `v1'` (index `n`) and `v2'` (index `n + 1`) copy the links of
///    `v1` and `v2` in the remaining graph.
/// 3. For the common neighbours `u_1 < ... < u_d` of the pair, each `u_i`
///    with `i < d` gains the edges `u_i (v1 + v1')(v2 + v2')` and `u_d` gains
///    `u_d (v1 + v2)(v1' + v2')`.
pub fn crossed_blowup(g: &Hypergraph, pair: GraphPair) -> Result<Hypergraph> {
    let (kept, neighbours) = split_pair(g, pair)?;
    let d = neighbours.len();
    if d < 2 {
        return Err(Error::Precondition(format!(
            "pair {pair} has codegree {d} < 2"
        )));
    }
    let n = g.n();
    let (v1, v2, c1, c2) = (pair.u(), pair.v(), n, n + 1);
    let mut edges = kept.clone();
    for e in &kept {
        for (orig, clone) in [(v1, c1), (v2, c2)] {
            if e.contains(&orig) {
                edges.push(
                    e.iter()
                        .map(|&x| if x == orig { clone } else { x })
                        .collect(),
                );
            }
        }
    }
    for (idx, &u) in neighbours.iter().enumerate() {
        let (left, right) = if idx + 1 < d {
            ([v1, c1], [v2, c2])
        } else {
            ([v1, v2], [c1, c2])
        };
        for a in left {
            for b in right {
                edges.push(vec![u, a, b]);
            }
        }
    }
    Ok(Hypergraph::from_valid_edges(3, n + 2, edges))
}

/// The k-crossed blowup: `v1` and `v2` are replaced by the `2^k` vertices of
/// the cube `{0,1}^k`.
///
/// The other vertices keep their relative order and are renumbered
/// `0..n-2`; cube vertex `q` gets index `n - 2 + q`, and its `i`-th coordinate
/// (1-based, read from the left of the `k`-bit binary string of `q`) is bit
/// `k - i` of `q`. `Q(i, b)` is the set of cube vertices whose `i`-th
/// coordinate is `b`. Vertices of `Q(1, 0)` copy the link of `v1` and those of
/// `Q(1, 1)` the link of `v2` (after removing the edges through the pair).
/// The common neighbour `u_i` (ascending order) gains the complete bipartite
/// link between `Q(i, 0)` and `Q(i, 1)` when `i < k`, and between `Q(k, 0)` and
/// `Q(k, 1)` when `i >= k`.
pub fn k_crossed_blowup(g: &Hypergraph, pair: GraphPair, k: usize) -> Result<Hypergraph> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be at least 2, got {k}")));
    }
    if k > 20 {
        return Err(Error::invalid(format!(
            "k = {k} gives too many cube vertices"
        )));
    }
    let (kept, neighbours) = split_pair(g, pair)?;
    let d = neighbours.len();
    if d < k {
        return Err(Error::Precondition(format!(
            "pair {pair} has codegree {d} < k = {k}"
        )));
    }
    let n = g.n();
    let (v1, v2) = (pair.u(), pair.v());
    let compact = |w: usize| w - usize::from(w > v1) - usize::from(w > v2);
    let base = n - 2;
    let cube = 1usize << k;
    let coordinate = |q: usize, i: usize| (q >> (k - i)) & 1;
    let part = |i: usize, b: usize| -> Vec<usize> {
        (0..cube)
            .filter(|&q| coordinate(q, i) == b)
            .map(|q| base + q)
            .collect()
    };
    let mut edges = Vec::new();
    for e in &kept {
        let source = if e.contains(&v1) {
            Some(0)
        } else if e.contains(&v2) {
            Some(1)
        } else {
            None
        };
        match source {
            None => edges.push(e.iter().map(|&x| compact(x)).collect()),
            Some(b) => {
                let orig = if b == 0 { v1 } else { v2 };
                let rest: Vec<usize> = e
                    .iter()
                    .filter(|&&x| x != orig)
                    .map(|&x| compact(x))
                    .collect();
                for c in part(1, b) {
                    let mut edge = rest.clone();
                    edge.push(c);
                    edges.push(edge);
                }
            }
        }
    }
    for (idx, &u) in neighbours.iter().enumerate() {
        let axis = (idx + 1).min(k);
        for a in part(axis, 0) {
            for b in part(axis, 1) {
                edges.push(vec![compact(u), a, b]);
            }
        }
    }
    Ok(Hypergraph::from_valid_edges(3, base + cube, edges))
}

fn gamma_base(t: usize) -> Result<(Hypergraph, GraphPair)> {
    match t {
        0 => Err(Error::invalid("gamma needs t >= 1")),
        1 => Ok((
            Hypergraph::new(3, 4, [[0, 2, 3], [1, 2, 3]])?,
            GraphPair::new(2, 3)?,
        )),
        _ => Ok((Hypergraph::complete(3, t + 2)?, GraphPair::new(t, t + 1)?)),
    }
}

/// Index of the first of the four special vertices of `gamma(t)`: `t` for
/// `t >= 2` and `2` for `t = 1`, whose base `{023, 123}` has two other vertices.
pub fn gamma_special_start(t: usize) -> usize {
    if t == 1 {
        2
    } else {
        t
    }
}

/// Permutation from the raw crossed-blowup order `(.., v1, v2, v1', v2')` to the
/// canonical order `(.., v1, v1', v2, v2')` used by [`gamma`].
pub fn gamma_canonical_perm(t: usize) -> Result<Vec<usize>> {
    let (base, _) = gamma_base(t)?;
    let s = base.n() - 2;
    let mut perm: Vec<usize> = (0..base.n() + 2).collect();
    perm.swap(s + 1, s + 2);
    Ok(perm)
}

/// `gamma(t)` in the raw vertex order produced by [`crossed_blowup`].
pub fn gamma_raw(t: usize) -> Result<Hypergraph> {
    let (base, pair) = gamma_base(t)?;
    crossed_blowup(&base, pair)
}

/// The extremal template on `t + 4` vertices (6 vertices when `t = 1`):
/// `K_{t+2}^3 ⊞ {t, t+1}` for `t >= 2` and `{023, 123} ⊞ {2, 3}` for `t = 1`.
///
/// With `s = gamma_special_start(t)`, vertices `s, s+1, s+2, s+3` are
/// `v1, v1', v2, v2'`. In this labelling (and for `t >= 2`) the codegrees of
/// the special pairs are `d(s, s+3) = d(s+1, s+2) = t`,
/// `d(s, s+2) = d(s+1, s+3) = t - 1` and `d(s, s+1) = d(s+2, s+3) = 1`.
pub fn gamma(t: usize) -> Result<Hypergraph> {
    gamma_raw(t)?.relabel(&gamma_canonical_perm(t)?)
}

/// Adds vertex `n` as a clone of `w`: same link, no edge through both.
pub fn double_vertex(g: &Hypergraph, w: usize) -> Result<Hypergraph> {
    if w >= g.n() {
        return Err(Error::invalid(format!(
            "vertex {w} out of range for n = {}",
            g.n()
        )));
    }
    let n = g.n();
    let mut edges = g.edges().to_vec();
    for e in g.edges() {
        if e.contains(&w) {
            edges.push(e.iter().map(|&x| if x == w { n } else { x }).collect());
        }
    }
    Ok(Hypergraph::from_valid_edges(g.r(), n + 1, edges))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Local,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Cap on the number of size vectors in exhaustive mode.
    pub budget: u128,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 10_000_000,
            restarts: 20,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub sizes: Vec<u64>,
    pub count: u128,
}

/// Part sizes summing to `n` that maximise the blowup edge count of `g`.
pub fn extremal_blowup_search(g: &Hypergraph, n: u64, mode: SearchMode) -> Result<SearchResult> {
    extremal_blowup_search_with(g, n, mode, &SearchOptions::default())
}

/// Exhaustive mode returns the lexicographically smallest optimal size vector.
/// Local mode runs steepest single-unit transfers from the rounded Lagrangian
/// maximizer and from randomly perturbed copies of it.
pub fn extremal_blowup_search_with(
    g: &Hypergraph,
    n: u64,
    mode: SearchMode,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    let m = g.n();
    if m == 0 {
        if n == 0 {
            return Ok(SearchResult {
                sizes: Vec::new(),
                count: 0,
            });
        }
        return Err(Error::invalid(
            "cannot distribute vertices over an empty base",
        ));
    }
    if n == 0 {
        return Ok(SearchResult {
            sizes: vec![0; m],
            count: 0,
        });
    }
    match mode {
        SearchMode::Exhaustive => exhaustive(g, n, opts.budget),
        SearchMode::Local => local(g, n, opts),
    }
}

fn better(a: &SearchResult, b: &SearchResult) -> bool {
    a.count > b.count || (a.count == b.count && a.sizes < b.sizes)
}

fn exhaustive(g: &Hypergraph, n: u64, budget: u128) -> Result<SearchResult> {
    let m = g.n();
    let needed = compositions(n, m as u64);
    if needed > budget {
        return Err(Error::Budget {
            what: "exhaustive blowup search",
            needed,
            cap: budget,
        });
    }
    let edges = g.edges();
    let best = (0..=n)
        .into_par_iter()
        .map(|first| {
            let mut sizes = vec![0u64; m];
            sizes[0] = first;
            let mut best = SearchResult {
                sizes: sizes.clone(),
                count: 0,
            };
            let mut have = false;
            enumerate(edges, &mut sizes, 1, n - first, &mut best, &mut have);
            best
        })
        .reduce_with(|a, b| if better(&b, &a) { b } else { a })
        .expect("range is nonempty");
    Ok(best)
}

fn enumerate(
    edges: &[Vec<usize>],
    sizes: &mut [u64],
    depth: usize,
    remaining: u64,
    best: &mut SearchResult,
    have: &mut bool,
) {
    let m = sizes.len();
    if depth == m || depth + 1 == m {
        if depth + 1 == m {
            sizes[depth] = remaining;
        } else if remaining != 0 {
            return;
        }
        let count = edge_count_for(edges, sizes);
        let cand = SearchResult {
            sizes: sizes.to_vec(),
            count,
        };
        if !*have || better(&cand, best) {
            *best = cand;
            *have = true;
        }
        return;
    }
    for c in 0..=remaining {
        sizes[depth] = c;
        enumerate(edges, sizes, depth + 1, remaining - c, best, have);
    }
    sizes[depth] = 0;
}

/// Largest-remainder rounding of `n * x` to integers summing to `n`.
fn round_profile(x: &[f64], n: u64) -> Vec<u64> {
    let scaled: Vec<f64> = x.iter().map(|&v| v * n as f64).collect();
    let mut sizes: Vec<u64> = scaled.iter().map(|v| v.floor().max(0.0) as u64).collect();
    let assigned: u64 = sizes.iter().sum();
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = scaled[a] - scaled[a].floor();
        let rb = scaled[b] - scaled[b].floor();
        rb.partial_cmp(&ra)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut left = n.saturating_sub(assigned);
    for &i in order.iter().cycle() {
        if left == 0 {
            break;
        }
        sizes[i] += 1;
        left -= 1;
    }
    sizes
}

fn steepest_ascent(edges: &[Vec<usize>], mut sizes: Vec<u64>) -> SearchResult {
    let m = sizes.len();
    let mut count = edge_count_for(edges, &sizes);
    loop {
        let mut step: Option<(usize, usize, u128)> = None;
        for from in 0..m {
            if sizes[from] == 0 {
                continue;
            }
            for to in 0..m {
                if to == from {
                    continue;
                }
                sizes[from] -= 1;
                sizes[to] += 1;
                let c = edge_count_for(edges, &sizes);
                sizes[to] -= 1;
                sizes[from] += 1;
                if c > step.map_or(count, |s| s.2) {
                    step = Some((from, to, c));
                }
            }
        }
        match step {
            Some((from, to, c)) => {
                sizes[from] -= 1;
                sizes[to] += 1;
                count = c;
            }
            None => return SearchResult { sizes, count },
        }
    }
}

fn local(g: &Hypergraph, n: u64, opts: &SearchOptions) -> Result<SearchResult> {
    let m = g.n();
    let lag = maximize(
        &MultilinearPoly::from_hypergraph(g),
        &MaximizeOptions {
            seed: opts.seed,
            ..MaximizeOptions::default()
        },
    )?;
    let start = round_profile(lag.maximizer.coords(), n);
    let mut best = steepest_ascent(g.edges(), start.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 1..opts.restarts.max(1) {
        let mut sizes = start.clone();
        let moves = (n / 4).max(1);
        for _ in 0..moves {
            let from = rng.gen_range(0..m);
            if sizes[from] > 0 {
                sizes[from] -= 1;
                sizes[rng.gen_range(0..m)] += 1;
            }
        }
        let cand = steepest_ascent(g.edges(), sizes);
        if better(&cand, &best) {
            best = cand;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalProfiles {
    /// `j / m` for `j = 0..=floor(m/2)`, where `m = n / (t + 2)`.
    pub alphas: Vec<Rational>,
    /// Part sizes of `gamma(t)` realising each alpha.
    pub sizes: Vec<Vec<u64>>,
    pub count: usize,
}

/// The balanced blowups of `gamma(t)` on `n` vertices: parts of size
/// `m = n/(t+2)` on `0..t`, `alpha m` on `t` and `t+3`, `(1-alpha) m` on `t+1`
/// and `t+2`, one per `alpha` in `{0, 1/m, ..., floor(m/2)/m}`.
pub fn count_extremal_profiles(t: usize, n: u64) -> Result<ExtremalProfiles> {
    if t < 2 {
        return Err(Error::invalid("extremal profiles are defined for t >= 2"));
    }
    let parts = t as u64 + 2;
    if !n.is_multiple_of(parts) {
        return Err(Error::invalid(format!(
            "n = {n} is not divisible by t + 2 = {parts}"
        )));
    }
    let m = n / parts;
    let mut alphas = Vec::new();
    let mut sizes = Vec::new();
    for j in 0..=m / 2 {
        alphas.push(if m == 0 {
            Rational::zero()
        } else {
            rat(j as i64, m as i64)
        });
        let mut s = vec![m; t];
        s.extend([j, m - j, m - j, j]);
        sizes.push(s);
    }
    Ok(ExtremalProfiles {
        count: alphas.len(),
        alphas,
        sizes,
    })
}

/// A pair of exact (shadow density, edge density).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasiblePoint {
    pub shadow_density: Rational,
    pub edge_density: Rational,
}

/// The weight profile of `gamma(t)` behind [`feasible_point`]: `1/(t+2)` on
/// each of `0..t` (`1/6` on each of `0, 1` when `t = 1`), `alpha/(t+2)` on
/// `s` and `s+3`, `(1-alpha)/(t+2)` on `s+1` and `s+2`, `s = gamma_special_start(t)`.
pub fn feasible_profile(t: usize, alpha: &Rational) -> Result<Vec<Rational>> {
    if t == 0 {
        return Err(Error::invalid("t must be at least 1"));
    }
    if alpha < &Rational::zero() || alpha > &Rational::one() {
        return Err(Error::invalid(format!("alpha = {alpha} outside [0, 1]")));
    }
    let c = rat(1, t as i64 + 2);
    let s = gamma_special_start(t);
    let mut x = vec![if t == 1 { rat(1, 6) } else { c.clone() }; s];
    let beta = Rational::one() - alpha;
    x.extend([alpha * &c, &beta * &c, &beta * &c, alpha * &c]);
    Ok(x)
}

/// Exact densities of `gamma(t)` blown up with parts `floor(x_i n)` for the
/// profile of [`feasible_profile`]; the remaining vertices are isolated, so
/// the densities are taken over all `n` vertices.
pub fn feasible_point(t: usize, alpha: &Rational, n: u64) -> Result<FeasiblePoint> {
    let profile = feasible_profile(t, alpha)?;
    if n < t as u64 + 4 {
        return Err(Error::invalid(format!("n = {n} is below t + 4")));
    }
    let g = gamma(t)?;
    let sizes: Vec<u64> = profile
        .iter()
        .map(|x| {
            (x * int(n))
                .floor()
                .to_integer()
                .try_into()
                .expect("part size fits in u64")
        })
        .collect();
    let edges = edge_count_for(g.edges(), &sizes);
    let shadow = g.shadow(1)?;
    let mut shadow_pairs: u128 = 0;
    for pair in shadow.edges() {
        let (i, j) = (pair[0], pair[1]);
        let realised = g.edges().iter().any(|e| {
            e.contains(&i) && e.contains(&j) && e.iter().all(|&k| k == i || k == j || sizes[k] > 0)
        });
        if realised {
            shadow_pairs += sizes[i] as u128 * sizes[j] as u128;
        }
    }
    let to_big = |v: u128| num_bigint::BigInt::from(v);
    Ok(FeasiblePoint {
        shadow_density: Rational::new(to_big(shadow_pairs), binomial(n, 2)),
        edge_density: Rational::new(to_big(edges), binomial(n, 3)),
    })
}

/// Limit densities of the [`feasible_point`] sequence:
/// `((t^2 + 3t + 2 + 4 alpha (1 - alpha)) / (t+2)^2, t (t+1) / (t+2)^2)`.
pub fn feasible_limit(t: usize, alpha: &Rational) -> Result<FeasiblePoint> {
    feasible_profile(t, alpha)?;
    let t = t as i64;
    let denom = int((t + 2) * (t + 2));
    let a = alpha * (Rational::one() - alpha) * int(4);
    Ok(FeasiblePoint {
        shadow_density: (int(t * t + 3 * t + 2) + a) / &denom,
        edge_density: int(t * (t + 1)) / &denom,
    })
}
