//! Multilinear polynomials with exact rational coefficients.
//!
//! A term is a strictly increasing list of variable indices; the empty list is
//! the constant term. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearPoly {
    m: usize,
    terms: BTreeMap<Vec<usize>, Rational>,
}

/// `p = p1 + p2 (X_i + X_j) + p3 X_i X_j` with none of p1, p2, p3 involving X_i or X_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricDecomposition {
    pub i: usize,
    pub j: usize,
    pub p1: MultilinearPoly,
    pub p2: MultilinearPoly,
    pub p3: MultilinearPoly,
}

impl SymmetricDecomposition {
    /// Rebuilds `p1 + p2 (X_i + X_j) + p3 X_i X_j`.
    pub fn reconstruct(&self) -> MultilinearPoly {
        let (i, j) = (self.i, self.j);
        &(&self.p1 + &self.p2.times_sum(&[i, j])) + &self.p3.times_monomial(&[i, j])
    }
}

impl MultilinearPoly {
    pub fn zero(m: usize) -> Self {
        MultilinearPoly {
            m,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from `(variables, coefficient)` pairs. Repeated
    /// subsets are summed; a subset with a repeated index is rejected.
    pub fn from_terms<I, V>(m: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (V, Rational)>,
        V: AsRef<[usize]>,
    {
        let mut p = Self::zero(m);
        for (vars, coef) in terms {
            let mut vars = vars.as_ref().to_vec();
            vars.sort_unstable();
            if vars.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("term {vars:?} is not multilinear")));
            }
            if let Some(&bad) = vars.iter().find(|&&x| x >= m) {
                return Err(Error::invalid(format!(
                    "variable X{bad} out of range for m = {m}"
                )));
            }
            p.add_term(vars, coef);
        }
        Ok(p)
    }

    /// The single variable `X_k`.
    pub fn variable(m: usize, k: usize) -> Result<Self> {
        Self::from_terms(m, [(vec![k], Rational::one())])
    }

    /// `p_G = sum over edges E of prod_{i in E} X_i`.
    pub fn from_hypergraph(g: &Hypergraph) -> Self {
        let terms = g
            .edges()
            .iter()
            .map(|e| (e.clone(), Rational::one()))
            .collect();
        MultilinearPoly { m: g.n(), terms }
    }

    fn add_term(&mut self, vars: Vec<usize>, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(vars);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Rational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, vars: &[usize]) -> Rational {
        let mut key = vars.to_vec();
        key.sort_unstable();
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Same polynomial viewed in `m` variables (`m` may only grow past used indices).
    pub fn with_num_vars(&self, m: usize) -> Result<Self> {
        if let Some(bad) = self.terms.keys().flatten().find(|&&x| x >= m) {
            return Err(Error::invalid(format!(
                "variable X{bad} does not fit in m = {m}"
            )));
        }
        Ok(MultilinearPoly {
            m,
            terms: self.terms.clone(),
        })
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.m {
            return Err(Error::invalid(format!(
                "point has dimension {len}, polynomial has {} variables",
                self.m
            )));
        }
        Ok(())
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational> {
        self.check_dim(x.len())?;
        let mut total = Rational::zero();
        for (vars, coef) in &self.terms {
            let mut prod = coef.clone();
            for &v in vars {
                if x[v].is_zero() {
                    prod.set_zero();
                    break;
                }
                prod *= &x[v];
            }
            total += prod;
        }
        Ok(total)
    }

    /// Floating-point value; coefficients are rounded to the nearest `f64`
    /// before evaluation and each product and sum rounds to nearest.
    pub fn evaluate_f64(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        Ok(self.eval_f64_unchecked(x))
    }

    pub(crate) fn eval_f64_unchecked(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(vars, coef)| {
                vars.iter()
                    .fold(coef.to_f64().unwrap_or(f64::NAN), |acc, &v| acc * x[v])
            })
            .sum()
    }

    /// Partial derivatives at `x`.
    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x.len())?;
        let mut g = vec![0.0; self.m];
        for (vars, coef) in &self.terms {
            let c = coef.to_f64().unwrap_or(f64::NAN);
            for (pos, &k) in vars.iter().enumerate() {
                let others: f64 = vars
                    .iter()
                    .enumerate()
                    .filter(|&(q, _)| q != pos)
                    .map(|(_, &v)| x[v])
                    .product();
                g[k] += c * others;
            }
        }
        Ok(g)
    }

    /// Exact partial derivatives at a rational point.
    pub fn gradient_exact(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        self.check_dim(x.len())?;
        let mut g = vec![Rational::zero(); self.m];
        for (vars, coef) in &self.terms {
            for (pos, &k) in vars.iter().enumerate() {
                let mut prod = coef.clone();
                for (q, &v) in vars.iter().enumerate() {
                    if q != pos {
                        prod *= &x[v];
                    }
                }
                g[k] += prod;
            }
        }
        Ok(g)
    }

    /// Image under `X_k -> X_{perm[k]}` in `new_m` variables.
    pub fn rename(&self, perm: &[usize], new_m: usize) -> Result<Self> {
        if perm.len() != self.m {
            return Err(Error::invalid("renaming must cover every variable"));
        }
        let terms = self.terms.iter().map(|(vars, c)| {
            let mapped: Vec<usize> = vars.iter().map(|&v| perm[v]).collect();
            (mapped, c.clone())
        });
        Self::from_terms(new_m, terms)
    }

    /// Swapping `X_i` and `X_j` leaves the polynomial unchanged.
    pub fn is_symmetric_in(&self, i: usize, j: usize) -> bool {
        self.asymmetry_witness(i, j).is_none()
    }

    fn asymmetry_witness(&self, i: usize, j: usize) -> Option<Vec<usize>> {
        let swap = |v: usize| {
            if v == i {
                j
            } else if v == j {
                i
            } else {
                v
            }
        };
        for (vars, coef) in &self.terms {
            let mut swapped: Vec<usize> = vars.iter().map(|&v| swap(v)).collect();
            swapped.sort_unstable();
            if self.terms.get(&swapped) != Some(coef) {
                return Some(vars.clone());
            }
        }
        None
    }

    /// Splits a polynomial symmetric in `X_i`, `X_j` as `p1 + p2 (X_i + X_j) + p3 X_i X_j`.
    pub fn symmetric_decompose(&self, i: usize, j: usize) -> Result<SymmetricDecomposition> {
        if i == j || i >= self.m || j >= self.m {
            return Err(Error::invalid(format!(
                "need distinct variables below {}, got ({i}, {j})",
                self.m
            )));
        }
        if let Some(witness) = self.asymmetry_witness(i, j) {
            return Err(Error::Asymmetric { i, j, witness });
        }
        let mut p1 = Self::zero(self.m);
        let mut p2 = Self::zero(self.m);
        let mut p3 = Self::zero(self.m);
        for (vars, coef) in &self.terms {
            let has_i = vars.contains(&i);
            let has_j = vars.contains(&j);
            let rest: Vec<usize> = vars.iter().copied().filter(|&v| v != i && v != j).collect();
            match (has_i, has_j) {
                (false, false) => p1.add_term(rest, coef.clone()),
                (true, false) => p2.add_term(rest, coef.clone()),
                // mirrored by the X_i term
                (false, true) => {}
                (true, true) => p3.add_term(rest, coef.clone()),
            }
        }
        Ok(SymmetricDecomposition { i, j, p1, p2, p3 })
    }

    /// `self * (X_a + X_b + ...)`; the variables must not occur in `self`.
    fn times_sum(&self, vars: &[usize]) -> Self {
        let mut out = Self::zero(self.m);
        for (term, coef) in &self.terms {
            for &v in vars {
                debug_assert!(!term.contains(&v));
                let mut t = term.clone();
                t.push(v);
                t.sort_unstable();
                out.add_term(t, coef.clone());
            }
        }
        out
    }

    /// `self * X_a X_b ...`; the variables must not occur in `self`.
    fn times_monomial(&self, vars: &[usize]) -> Self {
        let mut out = Self::zero(self.m);
        for (term, coef) in &self.terms {
            let mut t = term.clone();
            t.extend_from_slice(vars);
            t.sort_unstable();
            out.add_term(t, coef.clone());
        }
        out
    }

    /// `self * (X_a + X_b) * (X_c + X_d)`.
    fn times_sums(&self, first: [usize; 2], second: [usize; 2]) -> Self {
        self.times_sum(&first).times_sum(&second)
    }

    /// Lift to `m + 2` variables by splitting the symmetric pair `(X_i, X_j)`:
    ///
    /// `p1 + p2 (X_i + X_i' + X_j + X_j') + p4 (X_i + X_i')(X_j + X_j') + p5 (X_i + X_j)(X_i' + X_j')`
    ///
    /// where `p4 + p5` must equal the `p3` of the decomposition. The new
    /// variables are appended: `X_i'` is index `m` and `X_j'` is index `m + 1`.
    pub fn hat(&self, i: usize, j: usize, p4: &Self, p5: &Self) -> Result<Self> {
        let dec = self.symmetric_decompose(i, j)?;
        let p4 = p4.with_num_vars(self.m)?;
        let p5 = p5.with_num_vars(self.m)?;
        if &p4 + &p5 != dec.p3 {
            return Err(Error::SplitMismatch);
        }
        let m = self.m + 2;
        let (ip, jp) = (self.m, self.m + 1);
        let lift = |p: &Self| p.with_num_vars(m).expect("grows");
        let p1 = lift(&dec.p1);
        let p2 = lift(&dec.p2);
        let p4 = lift(&p4);
        let p5 = lift(&p5);
        let out = &(&p1 + &p2.times_sum(&[i, ip, j, jp])) + &p4.times_sums([i, ip], [j, jp]);
        Ok(&out + &p5.times_sums([i, j], [ip, jp]))
    }
}

impl Add for &MultilinearPoly {
    type Output = MultilinearPoly;

    fn add(self, rhs: &MultilinearPoly) -> MultilinearPoly {
        let mut out = self.clone();
        out.m = self.m.max(rhs.m);
        for (vars, coef) in &rhs.terms {
            out.add_term(vars.clone(), coef.clone());
        }
        out
    }
}

impl Neg for &MultilinearPoly {
    type Output = MultilinearPoly;

    fn neg(self) -> MultilinearPoly {
        MultilinearPoly {
            m: self.m,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl Sub for &MultilinearPoly {
    type Output = MultilinearPoly;

    fn sub(self, rhs: &MultilinearPoly) -> MultilinearPoly {
        self + &(-rhs)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    m: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    vars: Vec<usize>,
    coef: String,
}

impl Serialize for MultilinearPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(vars, c)| TermJson {
                    vars: vars.clone(),
                    coef: c.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultilinearPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(deserializer)?;
        let terms = raw
            .terms
            .into_iter()
            .map(|t| {
                if t.coef.contains('.') {
                    return Err(D::Error::custom(format!(
                        "coefficient `{}` must be p/q",
                        t.coef
                    )));
                }
                parse_rational(&t.coef)
                    .map(|c| (t.vars, c))
                    .map_err(D::Error::custom)
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        MultilinearPoly::from_terms(raw.m, terms).map_err(D::Error::custom)
    }
}
