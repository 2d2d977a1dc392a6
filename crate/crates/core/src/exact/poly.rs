//! Sparse multivariate polynomials over the rationals, with optional
//! weighted-degree truncation.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::scalar::*;

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

/// `Σ c_α x^α` with no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, ExactScalar>,
}

pub fn weighted_degree(e: &[u32], weights: &[u32]) -> u32 {
    e.iter().zip(weights).map(|(a, w)| a * w).sum()
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: ExactScalar, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, ExactScalar::one())
    }

    pub fn monomial(e: Exponent, c: ExactScalar) -> Self {
        let mut p = Self::zero(e.len());
        p.add_term(e, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, ExactScalar)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> ExactScalar {
        self.terms.get(e).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn add_term(&mut self, e: Exponent, c: ExactScalar) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn constant_term(&self) -> ExactScalar {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn without_constant(&self) -> Self {
        let mut p = self.clone();
        p.terms.remove(&vec![0; self.nvars]);
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }

    pub fn neg(&self) -> Self {
        self.scale(&-ExactScalar::one())
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_impl(other, None)
    }

    /// Product keeping only monomials of weighted degree `<= max`.
    pub fn mul_trunc(&self, other: &Self, weights: &[u32], max: u32) -> Self {
        self.mul_impl(other, Some((weights, max)))
    }

    fn mul_impl(&self, other: &Self, trunc: Option<(&[u32], u32)>) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if let Some((w, max)) = trunc {
                    if weighted_degree(&e, w) > max {
                        continue;
                    }
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(ExactScalar::one(), self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn truncate(&self, weights: &[u32], max: u32) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| weighted_degree(e, weights) <= max)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Does any monomial involve variable `i`?
    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    /// The part of (unweighted) total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients of `x_i^k` as polynomials in the remaining variables
    /// (variable `i` kept in the exponent vector with value 0).
    pub fn split_var(&self, i: usize) -> Vec<MPoly> {
        let deg = self.degree_in(i) as usize;
        let mut parts = vec![Self::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[i] as usize;
            f[i] = 0;
            parts[k].add_term(f, c.clone());
        }
        parts
    }

    /// Sets the listed variables to zero.
    pub fn restrict_zero(&self, vars: &[usize]) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| vars.iter().all(|&i| e[i] == 0))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, x: &[ExactScalar]) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    m *= xi;
                }
            }
            acc += m;
        }
        acc
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| to_f64(c) * x.iter().zip(e).map(|(xi, &k)| xi.powi(k as i32)).product::<f64>())
            .sum()
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * int(e[i] as i64));
        }
        out
    }

    /// Substitutes `x_i := q` (where `q` does not involve `x_i`), truncating.
    pub fn substitute(&self, i: usize, q: &MPoly, weights: &[u32], max: u32) -> Self {
        let parts = self.split_var(i);
        // Horner in x_i
        let mut acc = Self::zero(self.nvars);
        for part in parts.iter().rev() {
            acc = acc.mul_trunc(q, weights, max).add(part);
        }
        acc.truncate(weights, max)
    }

    /// Substitutes every variable `x_i := images[i]`, truncating; the images may
    /// live in a different number of variables.
    pub fn compose(&self, images: &[MPoly], weights: &[u32], max: u32) -> Self {
        let m = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::constant(ExactScalar::one(), m), p.clone()]).collect();
        let mut out = Self::zero(m);
        for (e, c) in &self.terms {
            let mut mono = MPoly::constant(c.clone(), m);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap().mul_trunc(&images[i], weights, max);
                    cache[i].push(next);
                }
                mono = mono.mul_trunc(&cache[i][k as usize], weights, max);
                if mono.is_zero() {
                    break;
                }
            }
            out = out.add(&mono);
        }
        out
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    pub fn all_coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|c| *c >= ExactScalar::zero())
    }
}
