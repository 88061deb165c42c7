//! Maximising multilinear polynomials over the standard simplex.
//!
//! The Lagrangian `λ(p)` is the maximum of `p` over
//! `Δ = {x in [0,1]^m : x_1 + ... + x_m = 1}`. The optimum set `Z(p)` is not
//! computed as a whole; it is represented by certificates: a maximizer, exact
//! evaluation at snapped rational points, and exact checks along segments.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypergraph::{GraphPair, Hypergraph};
use crate::polynomial::MultilinearPoly;
use crate::rational::{compositions, int, rat, snap_rational, to_f64, Rational};

/// A point of the standard simplex, with exact or floating coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint<T = Rational> {
    coords: Vec<T>,
}

impl<T> SimplexPoint<T> {
    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }
}

impl SimplexPoint<Rational> {
    /// Exact point; coordinates must be nonnegative and sum to exactly 1.
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid(
                "simplex point needs at least one coordinate",
            ));
        }
        if coords.iter().any(Signed::is_negative) {
            return Err(Error::invalid("simplex coordinates must be nonnegative"));
        }
        let sum: Rational = coords.iter().sum();
        if !sum.is_one() {
            return Err(Error::invalid(format!("coordinates sum to {sum}, not 1")));
        }
        Ok(SimplexPoint { coords })
    }

    pub fn uniform(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid(
                "simplex point needs at least one coordinate",
            ));
        }
        Ok(SimplexPoint {
            coords: vec![rat(1, m as i64); m],
        })
    }

    pub fn to_f64(&self) -> SimplexPoint<f64> {
        SimplexPoint {
            coords: self.coords.iter().map(to_f64).collect(),
        }
    }
}

impl SimplexPoint<f64> {
    /// Floating point; coordinates must be finite and nonnegative with a
    /// positive sum, and are renormalised to sum to 1.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid(
                "simplex point needs at least one coordinate",
            ));
        }
        if coords.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::invalid(
                "simplex coordinates must be finite and nonnegative",
            ));
        }
        let sum: f64 = coords.iter().sum();
        if sum <= 0.0 {
            return Err(Error::invalid("simplex coordinates sum to zero"));
        }
        Ok(SimplexPoint {
            coords: coords.into_iter().map(|c| c / sum).collect(),
        })
    }
}

impl Serialize for SimplexPoint<f64> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(serializer)
    }
}

#[derive(Debug, Clone)]
pub struct MaximizeOptions {
    /// Number of ascent runs; `None` means `max(50, 10 m)`.
    pub starts: Option<usize>,
    /// Stop a run once the simplex stationarity residual is at most `tol`.
    pub tol: f64,
    /// Grid oracle resolution; `None` picks the finest grid with at most
    /// [`AUTO_GRID_POINTS`] points, `Some(0)` skips the oracle.
    pub grid_resolution: Option<usize>,
    pub seed: u64,
    pub max_iterations: usize,
    /// Cap on the number of grid points for an explicit resolution.
    pub grid_budget: u128,
}

impl Default for MaximizeOptions {
    fn default() -> Self {
        MaximizeOptions {
            starts: None,
            tol: 1e-12,
            grid_resolution: None,
            seed: 0,
            max_iterations: 5_000,
            grid_budget: DEFAULT_GRID_BUDGET,
        }
    }
}

pub const DEFAULT_GRID_BUDGET: u128 = 10_000_000;
pub const AUTO_GRID_POINTS: u128 = 200_000;
const SNAP_DEN: u64 = 10_000;
const SNAP_VALUE_TOL: f64 = 1e-7;
const SNAP_COORD_TOL: f64 = 1e-6;
const ACTIVE: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct LagrangianResult {
    pub value: f64,
    /// Certified exact value: the optimizer's value snapped to a rational with
    /// small denominator and attained exactly at `exact_maximizer`.
    pub exact: Option<Rational>,
    pub maximizer: SimplexPoint<f64>,
    pub exact_maximizer: Option<SimplexPoint<Rational>>,
    /// Largest deviation of a partial derivative on the support from the
    /// common value `<grad p, x>`.
    pub kkt_residual: f64,
    pub starts_used: usize,
    pub grid_lower_bound: f64,
}

impl Serialize for LagrangianResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("LagrangianResult", 5)?;
        s.serialize_field("value", &self.value)?;
        s.serialize_field("exact", &self.exact.as_ref().map(|q| q.to_string()))?;
        s.serialize_field("maximizer", &self.maximizer)?;
        s.serialize_field("kkt_residual", &self.kkt_residual)?;
        s.serialize_field("grid_lower_bound", &self.grid_lower_bound)?;
        s.end()
    }
}

struct FloatPoly {
    m: usize,
    terms: Vec<(Vec<usize>, f64)>,
}

impl FloatPoly {
    fn new(p: &MultilinearPoly) -> Self {
        FloatPoly {
            m: p.num_vars(),
            terms: p.terms().map(|(v, c)| (v.to_vec(), to_f64(c))).collect(),
        }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(vars, c)| vars.iter().fold(*c, |acc, &v| acc * x[v]))
            .sum()
    }

    fn grad(&self, x: &[f64], g: &mut [f64]) {
        g.iter_mut().for_each(|v| *v = 0.0);
        for (vars, c) in &self.terms {
            for (pos, &k) in vars.iter().enumerate() {
                let mut prod = *c;
                for (q, &v) in vars.iter().enumerate() {
                    if q != pos {
                        prod *= x[v];
                    }
                }
                g[k] += prod;
            }
        }
    }
}

/// `max_i (g_i - gbar)^+` together with `max_i x_i |g_i - gbar|`.
fn stationarity(x: &[f64], g: &[f64]) -> f64 {
    let gbar: f64 = x.iter().zip(g).map(|(a, b)| a * b).sum();
    x.iter()
        .zip(g)
        .map(|(&xi, &gi)| (gi - gbar).max(0.0).max(xi * (gi - gbar).abs()))
        .fold(0.0, f64::max)
}

fn kkt_residual(fp: &FloatPoly, x: &[f64]) -> f64 {
    let mut g = vec![0.0; fp.m];
    fp.grad(x, &mut g);
    let gbar: f64 = x.iter().zip(&g).map(|(a, b)| a * b).sum();
    x.iter()
        .zip(&g)
        .filter(|(&xi, _)| xi > ACTIVE)
        .map(|(_, &gi)| (gi - gbar).abs())
        .fold(0.0, f64::max)
}

/// Mirror ascent (multiplicative weights) with Armijo backtracking.
fn ascend(fp: &FloatPoly, mut x: Vec<f64>, tol: f64, max_iterations: usize) -> (Vec<f64>, f64) {
    const SIGMA: f64 = 1e-4;
    let m = fp.m;
    let mut f = fp.eval(&x);
    let mut g = vec![0.0; m];
    let mut cand = vec![0.0; m];
    let mut eta = 1.0;
    for _ in 0..max_iterations {
        fp.grad(&x, &mut g);
        if stationarity(&x, &g) <= tol {
            break;
        }
        let gmax = g.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut accepted = false;
        while eta > 1e-18 {
            let mut sum = 0.0;
            for k in 0..m {
                cand[k] = x[k] * (eta * (g[k] - gmax)).exp();
                sum += cand[k];
            }
            if sum > 0.0 {
                cand.iter_mut().for_each(|c| *c /= sum);
                let f_new = fp.eval(&cand);
                let predicted: f64 = (0..m).map(|k| g[k] * (cand[k] - x[k])).sum();
                if f_new >= f && f_new >= f + SIGMA * predicted {
                    accepted = true;
                    let moved = f_new > f || cand != x;
                    std::mem::swap(&mut x, &mut cand);
                    f = f_new;
                    eta = (eta * 2.0).min(1e12);
                    if !moved {
                        return (x, f);
                    }
                    break;
                }
            }
            eta *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (x, f)
}

fn start_point(m: usize, seed: u64, index: usize) -> Vec<f64> {
    if index == 0 {
        return vec![1.0 / m as f64; m];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let mut x: Vec<f64> = (0..m)
        .map(|_| -(1.0 - rng.gen::<f64>()).ln() + 1e-12)
        .collect();
    if index.is_multiple_of(2) {
        // push roughly half the coordinates towards a face
        for c in x.iter_mut() {
            if rng.gen_bool(0.5) {
                *c *= 1e-3;
            }
        }
    }
    let sum: f64 = x.iter().sum();
    x.iter_mut().for_each(|c| *c /= sum);
    x
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    Ordering::Equal
}

/// Rounds every coordinate to a nearby simple rational and repairs the sum.
fn snap_point(x: &[f64]) -> Option<Vec<Rational>> {
    let mut q: Vec<Rational> = x
        .iter()
        .map(|&c| snap_rational(c, SNAP_COORD_TOL, SNAP_DEN))
        .collect::<Option<_>>()?;
    let sum: Rational = q.iter().sum();
    let diff = Rational::one() - sum;
    if !diff.is_zero() {
        if to_f64(&diff).abs() > 1e-5 {
            return None;
        }
        let (k, _) = q
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))?;
        q[k] += diff;
        if q[k].is_negative() {
            return None;
        }
    }
    Some(q)
}

fn auto_resolution(m: usize) -> Option<usize> {
    (1..=64usize)
        .take_while(|&res| compositions(res as u64, m as u64) <= AUTO_GRID_POINTS)
        .last()
}

/// Approximates `λ(p)` by multistart mirror ascent, cross-checked against the
/// grid oracle and snapped to an exact rational where possible.
pub fn maximize(p: &MultilinearPoly, opts: &MaximizeOptions) -> Result<LagrangianResult> {
    let m = p.num_vars();
    if m == 0 {
        return Err(Error::invalid("polynomial has no variables"));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::invalid("tolerance must be positive"));
    }
    if p.is_zero() {
        let uniform = SimplexPoint::<Rational>::uniform(m)?;
        return Ok(LagrangianResult {
            value: 0.0,
            exact: Some(Rational::zero()),
            maximizer: uniform.to_f64(),
            exact_maximizer: Some(uniform),
            kkt_residual: 0.0,
            starts_used: 0,
            grid_lower_bound: 0.0,
        });
    }
    let fp = FloatPoly::new(p);
    let starts = opts.starts.unwrap_or_else(|| (10 * m).max(50)).max(1);
    let mut runs: Vec<(Vec<f64>, f64)> = (0..starts)
        .into_par_iter()
        .map(|s| {
            ascend(
                &fp,
                start_point(m, opts.seed, s),
                opts.tol,
                opts.max_iterations,
            )
        })
        .collect();
    runs.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(Ordering::Equal)
            .then_with(|| lex_cmp(&a.0, &b.0))
    });
    let (mut best_x, mut value) = runs[0].clone();

    let resolution = match opts.grid_resolution {
        Some(0) => None,
        Some(r) => Some((r, opts.grid_budget)),
        None => auto_resolution(m).map(|r| (r, AUTO_GRID_POINTS)),
    };
    let grid = match resolution {
        Some((r, cap)) => match grid_oracle_with_budget(p, r, cap) {
            Ok(g) => Some(g),
            // an explicitly requested grid must run; the automatic one is best effort
            Err(e) if opts.grid_resolution.is_some() => return Err(e),
            Err(_) => None,
        },
        None => None,
    };
    let grid_lower_bound = match &grid {
        Some((v, _)) => to_f64(v),
        None => to_f64(&p.evaluate(SimplexPoint::<Rational>::uniform(m)?.coords())?),
    };

    let mut exact = None;
    let mut exact_maximizer = None;
    let target = snap_rational(value.max(grid_lower_bound), SNAP_VALUE_TOL, SNAP_DEN);
    if let Some(q) = &target {
        let mut tried: Vec<Vec<Rational>> = Vec::new();
        for (x, v) in &runs {
            if value - v > SNAP_VALUE_TOL || tried.len() >= 32 {
                break;
            }
            let Some(snapped) = snap_point(x) else {
                continue;
            };
            if tried.contains(&snapped) {
                continue;
            }
            if &p.evaluate(&snapped)? == q {
                exact = Some(q.clone());
                exact_maximizer = Some(SimplexPoint { coords: snapped });
                break;
            }
            tried.push(snapped);
        }
        if exact.is_none() {
            if let Some((gv, gp)) = &grid {
                if gv == q {
                    exact = Some(q.clone());
                    exact_maximizer = Some(gp.clone());
                }
            }
        }
    }

    if let Some((gv, gp)) = &grid {
        if to_f64(gv) > value {
            value = to_f64(gv);
            best_x = gp.to_f64().into_coords();
        }
    }
    if let (Some(q), Some(point)) = (&exact, &exact_maximizer) {
        let qf = to_f64(q);
        if qf >= value {
            value = qf;
            best_x = point.to_f64().into_coords();
        }
    }
    let maximizer = SimplexPoint::<f64>::new(best_x)?;
    value = value.max(fp.eval(maximizer.coords()));
    Ok(LagrangianResult {
        value,
        exact,
        kkt_residual: kkt_residual(&fp, maximizer.coords()),
        maximizer,
        exact_maximizer,
        starts_used: starts,
        grid_lower_bound,
    })
}

/// Exact maximum of `p` over the grid `{0, 1/res, ..., 1}^m ∩ Δ`.
pub fn grid_oracle(p: &MultilinearPoly, resolution: usize) -> Result<(Rational, SimplexPoint)> {
    grid_oracle_with_budget(p, resolution, DEFAULT_GRID_BUDGET)
}

pub fn grid_oracle_with_budget(
    p: &MultilinearPoly,
    resolution: usize,
    budget: u128,
) -> Result<(Rational, SimplexPoint)> {
    let m = p.num_vars();
    if m == 0 {
        return Err(Error::invalid("polynomial has no variables"));
    }
    if resolution == 0 {
        return Err(Error::invalid("grid resolution must be at least 1"));
    }
    let needed = compositions(resolution as u64, m as u64);
    if needed > budget {
        return Err(Error::Budget {
            what: "grid oracle",
            needed,
            cap: budget,
        });
    }
    let grid = IntegerGrid::new(p, resolution)?;
    let mut state = GridState {
        counts: vec![0; m],
        best: None,
    };
    grid.search(0, resolution as i128, &mut state);
    let (best, counts) = state.best.expect("grid is nonempty");
    let scale = int(grid.denominator.clone());
    let value = Rational::from_integer(BigInt::from(best)) / scale;
    let coords = counts
        .into_iter()
        .map(|c| rat(c as i64, resolution as i64))
        .collect();
    Ok((value, SimplexPoint { coords }))
}

struct IntegerGrid {
    m: usize,
    /// `(variables, integer coefficient times res^(degree - |vars|))`
    terms: Vec<(Vec<usize>, i128)>,
    monotone: bool,
    denominator: BigInt,
}

struct GridState {
    counts: Vec<i128>,
    best: Option<(i128, Vec<i128>)>,
}

impl IntegerGrid {
    fn new(p: &MultilinearPoly, res: usize) -> Result<Self> {
        let degree = p.degree();
        let lcm = p
            .terms()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let res_big = BigInt::from(res);
        let mut terms = Vec::new();
        let mut magnitude = BigInt::zero();
        for (vars, c) in p.terms() {
            let scaled = (c * int(lcm.clone())).to_integer()
                * num_traits::pow(res_big.clone(), degree - vars.len());
            magnitude += scaled.abs() * num_traits::pow(res_big.clone(), vars.len());
            let v = scaled.to_i128().ok_or(Error::Overflow("grid oracle"))?;
            terms.push((vars.to_vec(), v));
        }
        // every partial or full evaluation is bounded by `magnitude`
        if magnitude.to_i128().is_none() {
            return Err(Error::Overflow("grid oracle"));
        }
        Ok(IntegerGrid {
            m: p.num_vars(),
            monotone: terms.iter().all(|(_, c)| *c >= 0),
            terms,
            denominator: lcm * num_traits::pow(res_big, degree),
        })
    }

    /// Value with coordinates `>= depth` replaced by `fill`.
    fn eval(&self, counts: &[i128], depth: usize, fill: i128) -> i128 {
        self.terms
            .iter()
            .map(|(vars, c)| {
                vars.iter()
                    .fold(*c, |acc, &v| acc * if v < depth { counts[v] } else { fill })
            })
            .sum()
    }

    fn search(&self, depth: usize, remaining: i128, state: &mut GridState) {
        if depth + 1 == self.m {
            state.counts[depth] = remaining;
            let v = self.eval(&state.counts, self.m, 0);
            if state.best.as_ref().is_none_or(|(b, _)| v > *b) {
                state.best = Some((v, state.counts.clone()));
            }
            return;
        }
        if self.monotone {
            if let Some((b, _)) = &state.best {
                if self.eval(&state.counts, depth, remaining) <= *b {
                    return;
                }
            }
        }
        for c in (0..=remaining).rev() {
            state.counts[depth] = c;
            self.search(depth + 1, remaining - c, state);
        }
        state.counts[depth] = 0;
    }
}

/// Replaces coordinates `i` and `j` of `x` by their average. When the
/// `X_iX_j` coefficient of `p` is nonnegative on the simplex this never
/// decreases `p`.
pub fn symmetrize_point(
    p: &MultilinearPoly,
    i: usize,
    j: usize,
    x: &SimplexPoint,
) -> Result<SimplexPoint> {
    if x.dim() != p.num_vars() {
        return Err(Error::invalid(format!(
            "point has dimension {}, polynomial has {} variables",
            x.dim(),
            p.num_vars()
        )));
    }
    let dec = p.symmetric_decompose(i, j)?;
    debug_assert!(
        dec.p3.has_nonnegative_coefficients()
            || (0..dec.p3.num_vars()).all(|k| {
                let mut e = vec![Rational::zero(); dec.p3.num_vars()];
                e[k] = Rational::one();
                !dec.p3.evaluate(&e).map_or(true, |v| v.is_negative())
            }),
        "p3 must be nonnegative on the simplex"
    );
    let mut coords = x.coords.clone();
    let mean = (&coords[i] + &coords[j]) / int(2);
    coords[i] = mean.clone();
    coords[j] = mean;
    Ok(SimplexPoint { coords })
}

/// Exact first-order optimality: every partial on the support equals
/// `r p(z)`-style common value `<grad p, z>` and no partial exceeds it.
pub fn is_kkt_point(p: &MultilinearPoly, z: &SimplexPoint) -> Result<bool> {
    let g = p.gradient_exact(z.coords())?;
    let gbar: Rational = g.iter().zip(z.coords()).map(|(a, b)| a * b).sum();
    Ok(g.iter().zip(z.coords()).all(|(gi, zi)| {
        if zi.is_zero() {
            gi <= &gbar
        } else {
            gi == &gbar
        }
    }))
}

/// Endpoints of the segment of optimal points of `crossed_blowup(g, pair)`
/// obtained from an optimal point `z` of `g`.
///
/// Coordinates follow the crossed blowup's vertex order: the clones of
/// `v1 = pair.u()` and `v2 = pair.v()` are the appended indices `n` and
/// `n + 1`. With `zbar = (z_v1 + z_v2) / 2`, the first endpoint puts `zbar`
/// on `v1` and on the clone of `v2`, the second on the clone of `v1` and on
/// `v2`; every other vertex keeps its weight from `z`.
pub fn predicted_segment(
    g: &Hypergraph,
    pair: GraphPair,
    z: &SimplexPoint,
) -> Result<(SimplexPoint, SimplexPoint)> {
    if g.r() != 3 {
        return Err(Error::UnsupportedUniformity {
            expected: 3,
            found: g.r(),
        });
    }
    let n = g.n();
    if pair.v() >= n {
        return Err(Error::invalid(format!(
            "pair {pair} out of range for n = {n}"
        )));
    }
    if z.dim() != n {
        return Err(Error::invalid(format!(
            "point has dimension {}, graph has {n} vertices",
            z.dim()
        )));
    }
    if !g.is_symmetric_pair(pair)? {
        return Err(Error::Precondition(format!("pair {pair} is not symmetric")));
    }
    let d = g.codegree(pair)?.count;
    if d < 2 {
        return Err(Error::Precondition(format!(
            "pair {pair} has codegree {d} < 2"
        )));
    }
    if !is_kkt_point(&MultilinearPoly::from_hypergraph(g), z)? {
        return Err(Error::Precondition(
            "z is not a stationary point of p_G on the simplex".into(),
        ));
    }
    let (v1, v2) = (pair.u(), pair.v());
    let zbar = (&z.coords[v1] + &z.coords[v2]) / int(2);
    let mut y = z.coords.clone();
    y.extend([Rational::zero(), Rational::zero()]);
    let mut w = y.clone();
    y[v1] = zbar.clone();
    y[v2] = Rational::zero();
    y[n] = Rational::zero();
    y[n + 1] = zbar.clone();
    w[v1] = Rational::zero();
    w[v2] = zbar.clone();
    w[n] = zbar;
    w[n + 1] = Rational::zero();
    Ok((SimplexPoint { coords: y }, SimplexPoint { coords: w }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentCheck {
    pub holds: bool,
    /// First sampled `α` (weight on `y`) where the value differs from the target.
    pub first_failure: Option<Rational>,
}

/// Evaluates `p` exactly at `samples` equally spaced points `α y + (1 - α) z`,
/// `α = 0, 1/(samples-1), ..., 1`, and compares each value with `target`.
pub fn verify_segment(
    p: &MultilinearPoly,
    y: &SimplexPoint,
    z: &SimplexPoint,
    samples: usize,
    target: &Rational,
) -> Result<SegmentCheck> {
    if samples < 2 {
        return Err(Error::invalid("need at least two samples"));
    }
    if y.dim() != z.dim() {
        return Err(Error::invalid(
            "segment endpoints have different dimensions",
        ));
    }
    let steps = (samples - 1) as i64;
    for k in 0..=steps {
        let alpha = rat(k, steps);
        let beta = Rational::one() - &alpha;
        let point: Vec<Rational> = y
            .coords
            .iter()
            .zip(&z.coords)
            .map(|(a, b)| &alpha * a + &beta * b)
            .collect();
        if &p.evaluate(&point)? != target {
            return Ok(SegmentCheck {
                holds: false,
                first_failure: Some(alpha),
            });
        }
    }
    Ok(SegmentCheck {
        holds: true,
        first_failure: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightFit {
    pub alpha: f64,
    pub max_deviation: f64,
}

/// The optimal weight template of `gamma(t)` at parameter `alpha`: weight
/// `1/(t+2)` on each of `0..t`, `alpha/(t+2)` on `t` and `t+3`, and
/// `(1-alpha)/(t+2)` on `t+1` and `t+2`.
pub fn weight_template(t: usize, alpha: f64) -> Vec<f64> {
    let c = 1.0 / (t as f64 + 2.0);
    let mut x = vec![c; t + 4];
    x[t] = alpha * c;
    x[t + 3] = alpha * c;
    x[t + 1] = (1.0 - alpha) * c;
    x[t + 2] = (1.0 - alpha) * c;
    x
}

/// Least-squares fit of [`weight_template`] to `x`, with `alpha` clamped to
/// `[0, 1]`. Returns `None` when some coordinate is off by more than `eps`.
///
/// The squared error is strictly convex in `alpha`, so the fit is unique and
/// no tie between `alpha` and `1 - alpha` can arise.
pub fn fit_weight_profile(t: usize, x: &[f64], eps: f64) -> Result<Option<WeightFit>> {
    if t < 2 {
        return Err(Error::invalid("weight profiles are defined for t >= 2"));
    }
    if x.len() != t + 4 {
        return Err(Error::invalid(format!(
            "point has dimension {}, expected t + 4 = {}",
            x.len(),
            t + 4
        )));
    }
    let c = 1.0 / (t as f64 + 2.0);
    let a = x[t] + x[t + 3];
    let b = x[t + 1] + x[t + 2];
    let alpha = ((a - b + 2.0 * c) / (4.0 * c)).clamp(0.0, 1.0);
    let max_deviation = weight_template(t, alpha)
        .iter()
        .zip(x)
        .map(|(u, v)| (u - v).abs())
        .fold(0.0, f64::max);
    Ok((max_deviation <= eps).then_some(WeightFit {
        alpha,
        max_deviation,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::crossed_blowup;

    fn c5() -> Hypergraph {
        Hypergraph::new(
            3,
            5,
            [[0, 1, 2], [1, 2, 3], [2, 3, 4], [0, 3, 4], [0, 1, 4]],
        )
        .unwrap()
    }

    fn pg(g: &Hypergraph) -> MultilinearPoly {
        MultilinearPoly::from_hypergraph(g)
    }

    fn point(c: &[(i64, i64)]) -> SimplexPoint {
        SimplexPoint::<Rational>::new(c.iter().map(|&(a, b)| rat(a, b)).collect()).unwrap()
    }

    #[test]
    fn simplex_point_validation() {
        assert!(SimplexPoint::<Rational>::new(vec![rat(1, 2), rat(1, 3)]).is_err());
        assert!(SimplexPoint::<Rational>::new(vec![rat(3, 2), rat(-1, 2)]).is_err());
        let f = SimplexPoint::<f64>::new(vec![2.0, 2.0]).unwrap();
        assert_eq!(f.coords(), &[0.5, 0.5]);
        assert!(SimplexPoint::<f64>::new(vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn lagrangian_of_k4_and_c5() {
        let opts = MaximizeOptions::default();
        let k4 = maximize(&pg(&Hypergraph::complete(3, 4).unwrap()), &opts).unwrap();
        assert!((k4.value - 1.0 / 16.0).abs() < 1e-9);
        assert_eq!(k4.exact, Some(rat(1, 16)));
        let c5 = maximize(&pg(&c5()), &opts).unwrap();
        assert!((c5.value - 0.04).abs() < 1e-9);
        assert_eq!(c5.exact, Some(rat(1, 25)));
        assert!(c5.value >= c5.grid_lower_bound - 1e-12);
    }

    #[test]
    fn lagrangian_of_crossed_c5() {
        let g = crossed_blowup(&c5(), GraphPair::new(3, 4).unwrap()).unwrap();
        let res = maximize(&pg(&g), &MaximizeOptions::default()).unwrap();
        assert!((res.value - 4.0 / 81.0).abs() < 1e-9, "{}", res.value);
        assert_eq!(res.exact, Some(rat(4, 81)));
    }

    #[test]
    fn degenerate_inputs() {
        let zero = MultilinearPoly::zero(3);
        let res = maximize(&zero, &MaximizeOptions::default()).unwrap();
        assert_eq!(res.value, 0.0);
        assert_eq!(res.maximizer.coords(), &[1.0 / 3.0; 3]);
        assert!(maximize(&MultilinearPoly::zero(0), &MaximizeOptions::default()).is_err());
    }

    #[test]
    fn grid_oracle_examples() {
        let xyz = MultilinearPoly::from_terms(3, [(vec![0, 1, 2], rat(1, 1))]).unwrap();
        let (v, x) = grid_oracle(&xyz, 3).unwrap();
        assert_eq!(v, rat(1, 27));
        assert_eq!(x, point(&[(1, 3), (1, 3), (1, 3)]));
        let (v, x) = grid_oracle(&pg(&Hypergraph::complete(3, 4).unwrap()), 4).unwrap();
        assert_eq!(v, rat(1, 16));
        assert_eq!(x, SimplexPoint::<Rational>::uniform(4).unwrap());
        let x0 = MultilinearPoly::variable(1, 0).unwrap();
        for res in [1, 5, 17] {
            assert_eq!(grid_oracle(&x0, res).unwrap().0, rat(1, 1));
        }
        assert!(matches!(
            grid_oracle_with_budget(&xyz, 100, 10),
            Err(Error::Budget {
                needed: 5151,
                cap: 10,
                ..
            })
        ));
    }

    #[test]
    fn grid_oracle_handles_negative_coefficients() {
        // x0 - x0 x1 is maximised at the vertex e0
        let p = MultilinearPoly::from_terms(2, [(vec![0], rat(1, 1)), (vec![0, 1], rat(-1, 1))])
            .unwrap();
        let (v, x) = grid_oracle(&p, 6).unwrap();
        assert_eq!(v, rat(1, 1));
        assert_eq!(x, point(&[(1, 1), (0, 1)]));
    }

    #[test]
    fn symmetrize_examples() {
        let p = pg(&Hypergraph::complete(3, 4).unwrap());
        let x = point(&[(3, 10), (1, 5), (1, 4), (1, 4)]);
        let s = symmetrize_point(&p, 0, 1, &x).unwrap();
        assert_eq!(s, SimplexPoint::<Rational>::uniform(4).unwrap());
        assert!(p.evaluate(s.coords()).unwrap() > p.evaluate(x.coords()).unwrap());
        let same = symmetrize_point(&p, 0, 1, &s).unwrap();
        assert_eq!(same, s);
        let y = point(&[(1, 4), (1, 4), (1, 2), (0, 1)]);
        assert_eq!(
            symmetrize_point(&p, 2, 3, &y).unwrap(),
            SimplexPoint::<Rational>::uniform(4).unwrap()
        );
        assert!(symmetrize_point(
            &pg(&c5()),
            3,
            4,
            &SimplexPoint::<Rational>::uniform(5).unwrap()
        )
        .is_err());
    }

    #[test]
    fn segment_on_k4() {
        let k4 = Hypergraph::complete(3, 4).unwrap();
        let pair = GraphPair::new(2, 3).unwrap();
        let z = SimplexPoint::<Rational>::uniform(4).unwrap();
        let (y, w) = predicted_segment(&k4, pair, &z).unwrap();
        let q = rat(1, 4);
        let mut sorted = y.coords().to_vec();
        sorted.sort();
        assert_eq!(
            sorted,
            vec![rat(0, 1), rat(0, 1), q.clone(), q.clone(), q.clone(), q]
        );
        let blown = pg(&crossed_blowup(&k4, pair).unwrap());
        let check = verify_segment(&blown, &y, &w, 11, &rat(1, 16)).unwrap();
        assert!(check.holds);
        assert!(
            verify_segment(&pg(&k4), &z, &z, 2, &rat(1, 16))
                .unwrap()
                .holds
        );
    }

    #[test]
    fn segment_preconditions() {
        let pair = GraphPair::new(3, 4).unwrap();
        let z = SimplexPoint::<Rational>::uniform(5).unwrap();
        assert!(matches!(
            predicted_segment(&c5(), pair, &z),
            Err(Error::Precondition(_))
        ));
        let k4 = Hypergraph::complete(3, 4).unwrap();
        let off = point(&[(1, 2), (1, 2), (0, 1), (0, 1)]);
        assert!(matches!(
            predicted_segment(&k4, GraphPair::new(2, 3).unwrap(), &off),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn failing_segment_reports_alpha() {
        let k4 = pg(&Hypergraph::complete(3, 4).unwrap());
        let u = SimplexPoint::<Rational>::uniform(4).unwrap();
        let e0 = point(&[(1, 1), (0, 1), (0, 1), (0, 1)]);
        let check = verify_segment(&k4, &e0, &u, 5, &rat(1, 16)).unwrap();
        assert!(!check.holds);
        assert_eq!(check.first_failure, Some(rat(1, 4)));
    }

    #[test]
    fn weight_profile_examples() {
        let fit = fit_weight_profile(2, &[0.25, 0.25, 0.125, 0.125, 0.125, 0.125], 1e-12)
            .unwrap()
            .unwrap();
        assert_eq!((fit.alpha, fit.max_deviation), (0.5, 0.0));
        let fit = fit_weight_profile(2, &[0.25, 0.25, 0.25, 0.0, 0.0, 0.25], 1e-12)
            .unwrap()
            .unwrap();
        assert_eq!((fit.alpha, fit.max_deviation), (1.0, 0.0));
        assert_eq!(
            fit_weight_profile(2, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0], 0.01).unwrap(),
            None
        );
        assert!(fit_weight_profile(2, &[0.5, 0.5], 0.01).is_err());
        assert!(fit_weight_profile(1, &[0.2; 5], 0.01).is_err());
    }
}
