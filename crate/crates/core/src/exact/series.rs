//! Truncated series in one complex variable `ζ`.
//!
//! [`TruncSeries`] holds holomorphic jets `Σ c_k ζ^k`, [`HermSeries`] holds
//! real-valued jets `Σ c_{j,k} ζ^j ζ̄^k` with `c_{j,k} = conj(c_{k,j})`. Both
//! carry an explicit truncation order and never read beyond it.

use num_traits::{One, Zero};

use super::scalar::*;
use crate::error::{Error, Result};

/// Order of vanishing at `ζ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vanishing {
    Order(usize),
    /// Every stored coefficient vanishes; carries the truncation order.
    ZeroUpTo(usize),
}

impl Vanishing {
    pub fn finite(self) -> Option<usize> {
        match self {
            Vanishing::Order(k) => Some(k),
            Vanishing::ZeroUpTo(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<ExactComplex>,
}

impl TruncSeries {
    pub fn new(mut coeffs: Vec<ExactComplex>, order: usize) -> Self {
        coeffs.resize(order + 1, czero());
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: ExactComplex, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `c ζ^k`.
    pub fn monomial(c: ExactComplex, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactComplex] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ExactComplex {
        self.coeffs.get(k).cloned().unwrap_or_else(czero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().take(order + 1).cloned().collect(), order)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(is_czero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(), n)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(), n)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect(), self.order())
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect(), self.order())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![czero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if is_czero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !is_czero(b) {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out, n)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(cone(), self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Smallest power with a nonzero coefficient.
    pub fn vanishing_order(&self) -> Vanishing {
        match self.coeffs.iter().position(|c| !is_czero(c)) {
            Some(k) => Vanishing::Order(k),
            None => Vanishing::ZeroUpTo(self.order()),
        }
    }

    /// Truncated `exp(s)`; `s` must have zero constant term so the result stays rational.
    pub fn exp(&self) -> Result<Self> {
        if !is_czero(&self.coeffs[0]) {
            return Err(Error::Domain("exp of a series with nonzero constant term is not rational".into()));
        }
        let n = self.order();
        let mut e = vec![czero(); n + 1];
        e[0] = cone();
        for m in 1..=n {
            let mut acc = czero();
            for k in 1..=m {
                if !is_czero(&self.coeffs[k]) {
                    acc += cmul_scalar(&(&self.coeffs[k] * &e[m - k]), &int(k as i64));
                }
            }
            e[m] = cmul_scalar(&acc, &rat(1, m as i64));
        }
        Ok(Self::new(e, n))
    }

    /// Truncated `log(1 + s)`; `s` must have zero constant term.
    pub fn log1p(&self) -> Result<Self> {
        if !is_czero(&self.coeffs[0]) {
            return Err(Error::Domain("log1p requires a zero constant term".into()));
        }
        let n = self.order();
        let mut l = vec![czero(); n + 1];
        // (1 + s) L' = s'
        for m in 1..=n {
            let mut acc = cmul_scalar(&self.coeffs[m], &int(m as i64));
            for k in 1..m {
                if !is_czero(&l[k]) && !is_czero(&self.coeffs[m - k]) {
                    acc -= cmul_scalar(&(&l[k] * &self.coeffs[m - k]), &int(k as i64));
                }
            }
            l[m] = cmul_scalar(&acc, &rat(1, m as i64));
        }
        Ok(Self::new(l, n))
    }

    /// Truncated `1 / s`; `s` must have nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        if is_czero(&self.coeffs[0]) {
            return Err(Error::Domain("reciprocal of a series with zero constant term".into()));
        }
        let n = self.order();
        let inv0 = cinv(&self.coeffs[0]);
        let mut r = vec![czero(); n + 1];
        r[0] = inv0.clone();
        for m in 1..=n {
            let mut acc = czero();
            for k in 1..=m {
                if !is_czero(&self.coeffs[k]) {
                    acc += &self.coeffs[k] * &r[m - k];
                }
            }
            r[m] = -(acc * &inv0);
        }
        Ok(Self::new(r, n))
    }

    pub fn eval_f64(&self, z: (f64, f64)) -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = (acc.0 * z.0 - acc.1 * z.1, acc.0 * z.1 + acc.1 * z.0);
            acc = (acc.0 + to_f64(&c.re), acc.1 + to_f64(&c.im));
        }
        acc
    }
}

/// Elementary functions available to [`analytic_apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyticFn {
    Exp,
    Log1p,
    /// Reciprocal `1/s`.
    Recip,
}

pub fn analytic_apply(f: AnalyticFn, s: &TruncSeries) -> Result<TruncSeries> {
    match f {
        AnalyticFn::Exp => s.exp(),
        AnalyticFn::Log1p => s.log1p(),
        AnalyticFn::Recip => s.recip(),
    }
}

#[inline]
fn start(s: usize) -> usize {
    s * (s + 1) / 2
}

#[inline]
fn tri(j: usize, k: usize) -> usize {
    let s = j + k;
    s * (s + 1) / 2 + k
}

/// Real-valued jet in `(ζ, ζ̄)`, stored densely for `j + k <= order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermSeries {
    order: usize,
    coeffs: Vec<ExactComplex>,
}

impl HermSeries {
    pub fn zero(order: usize) -> Self {
        HermSeries { order, coeffs: vec![czero(); start(order + 1)] }
    }

    pub fn constant(c: ExactScalar, order: usize) -> Self {
        let mut h = Self::zero(order);
        h.coeffs[0] = real(c);
        h
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, j: usize, k: usize) -> ExactComplex {
        if j + k > self.order {
            czero()
        } else {
            self.coeffs[tri(j, k)].clone()
        }
    }

    /// Builds from explicit `(j, k) -> c` entries, symmetrising nothing; callers
    /// must supply a Hermitian family.
    pub fn from_entries(entries: &[((usize, usize), ExactComplex)], order: usize) -> Self {
        let mut h = Self::zero(order);
        for ((j, k), c) in entries {
            if j + k <= order {
                h.coeffs[tri(*j, *k)] += c;
            }
        }
        h
    }

    /// `f(ζ) · conj(g(ζ))`; Hermitian when `f == g`.
    pub fn outer(f: &TruncSeries, g: &TruncSeries, order: usize) -> Self {
        let mut h = Self::zero(order);
        for (j, a) in f.coeffs().iter().enumerate().take(order + 1) {
            if is_czero(a) {
                continue;
            }
            for (k, b) in g.coeffs().iter().enumerate().take(order + 1 - j) {
                if !is_czero(b) {
                    h.coeffs[tri(j, k)] = a * b.conj();
                }
            }
        }
        h
    }

    /// `|f|^2`.
    pub fn modulus_sqr(f: &TruncSeries, order: usize) -> Self {
        Self::outer(f, f, order)
    }

    /// `Re f = (f + conj f) / 2`.
    pub fn real_part(f: &TruncSeries, order: usize) -> Self {
        let mut h = Self::zero(order);
        let half = rat(1, 2);
        for (j, a) in f.coeffs().iter().enumerate().take(order + 1) {
            if j == 0 {
                h.coeffs[0] = real(a.re.clone());
            } else {
                h.coeffs[tri(j, 0)] = cmul_scalar(a, &half);
                h.coeffs[tri(0, j)] = cmul_scalar(&a.conj(), &half);
            }
        }
        h
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        HermSeries { order, coeffs: self.coeffs[..start(order + 1)].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order.min(other.order);
        let coeffs = (0..start(n + 1)).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        HermSeries { order: n, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order.min(other.order);
        let coeffs = (0..start(n + 1)).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        HermSeries { order: n, coeffs }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: &ExactScalar) {
        let n = self.order.min(other.order);
        self.order = n;
        self.coeffs.truncate(start(n + 1));
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !is_czero(b) {
                *a += cmul_scalar(b, c);
            }
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        HermSeries { order: self.order, coeffs: self.coeffs.iter().map(|x| cmul_scalar(x, c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order.min(other.order);
        self.mul_trunc(other, n)
    }

    /// Product truncated at `order` (which may be below both operands').
    pub fn mul_trunc(&self, other: &Self, order: usize) -> Self {
        let n = order.min(self.order).min(other.order);
        let mut out = Self::zero(n);
        let nz_a: Vec<(usize, usize, &ExactComplex)> = self.nonzero(n).collect();
        let nz_b: Vec<(usize, usize, &ExactComplex)> = other.nonzero(n).collect();
        for &(j1, k1, a) in &nz_a {
            for &(j2, k2, b) in &nz_b {
                if j1 + k1 + j2 + k2 > n {
                    // entries are stored by increasing total degree
                    break;
                }
                out.coeffs[tri(j1 + j2, k1 + k2)] += a * b;
            }
        }
        out
    }

    fn nonzero(&self, n: usize) -> impl Iterator<Item = (usize, usize, &ExactComplex)> {
        (0..=n.min(self.order)).flat_map(move |s| (0..=s).map(move |k| (s - k, k))).filter_map(move |(j, k)| {
            let c = &self.coeffs[tri(j, k)];
            (!is_czero(c)).then_some((j, k, c))
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(ExactScalar::one(), self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_hermitian(&self) -> bool {
        (0..=self.order).all(|s| (0..=s).all(|k| self.coeffs[tri(s - k, k)] == self.coeffs[tri(k, s - k)].conj()))
    }

    /// Smallest `j + k` with a nonzero coefficient.
    pub fn vanishing_order(&self) -> Vanishing {
        match self.coeffs.iter().position(|c| !is_czero(c)) {
            Some(i) => {
                let mut s = 0;
                while start(s + 1) <= i {
                    s += 1;
                }
                Vanishing::Order(s)
            }
            None => Vanishing::ZeroUpTo(self.order),
        }
    }

    pub fn eval_f64(&self, z: (f64, f64)) -> (f64, f64) {
        let (x, y) = z;
        let mut acc = (0.0, 0.0);
        for s in 0..=self.order {
            for k in 0..=s {
                let j = s - k;
                let c = &self.coeffs[tri(j, k)];
                if is_czero(c) {
                    continue;
                }
                // ζ^j ζ̄^k = r^{j+k} e^{i(j-k)θ}
                let r = (x * x + y * y).sqrt();
                let th = y.atan2(x);
                let m = r.powi((j + k) as i32);
                let ang = (j as f64 - k as f64) * th;
                let (bre, bim) = (m * ang.cos(), m * ang.sin());
                let (cre, cim) = (to_f64(&c.re), to_f64(&c.im));
                acc.0 += cre * bre - cim * bim;
                acc.1 += cre * bim + cim * bre;
            }
        }
        acc
    }
}

/// `φ^a · conj(φ)^a` for a positive integer `a`.
pub fn modulus_power(phi: &TruncSeries, a: &ExactScalar) -> Result<HermSeries> {
    if !a.is_integer() || *a <= ExactScalar::zero() {
        return Err(Error::UnsupportedExponent(fmt_scalar(a)));
    }
    let e: u32 = a
        .to_integer()
        .try_into()
        .map_err(|_| Error::UnsupportedExponent(fmt_scalar(a)))?;
    let p = phi.pow(e);
    Ok(HermSeries::modulus_sqr(&p, phi.order()))
}

/// Either kind of series, for the kind-checked arithmetic entry point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Series {
    Holo(TruncSeries),
    Herm(HermSeries),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
}

impl Series {
    fn kind(&self) -> &'static str {
        match self {
            Series::Holo(_) => "holomorphic series",
            Series::Herm(_) => "hermitian series",
        }
    }

    pub fn combine(&self, other: &Series, op: SeriesOp) -> Result<Series> {
        match (self, other) {
            (Series::Holo(a), Series::Holo(b)) => Ok(Series::Holo(match op {
                SeriesOp::Add => a.add(b),
                SeriesOp::Sub => a.sub(b),
                SeriesOp::Mul => a.mul(b),
            })),
            (Series::Herm(a), Series::Herm(b)) => Ok(Series::Herm(match op {
                SeriesOp::Add => a.add(b),
                SeriesOp::Sub => a.sub(b),
                SeriesOp::Mul => a.mul(b),
            })),
            _ => Err(Error::KindMismatch(self.kind(), other.kind())),
        }
    }

    pub fn int_pow(&self, e: u32) -> Series {
        match self {
            Series::Holo(a) => Series::Holo(a.pow(e)),
            Series::Herm(a) => Series::Herm(a.pow(e)),
        }
    }

    pub fn vanishing_order(&self) -> Vanishing {
        match self {
            Series::Holo(a) => a.vanishing_order(),
            Series::Herm(a) => a.vanishing_order(),
        }
    }
}
