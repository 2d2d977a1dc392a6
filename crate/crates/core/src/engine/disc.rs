//! Analytic discs as truncated jets.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::scalar::*;
use crate::exact::{ExactComplex, ExactScalar, TruncSeries, Vanishing};

/// Vanishing order of a component (`None` = identically equal to its base).
pub type Beta = Option<u32>;

/// `φ(ζ) = (φ_1, …, φ_n)` with `φ(0) = base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disc {
    pub base: Vec<ExactComplex>,
    pub components: Vec<TruncSeries>,
    /// Components that are identically zero.
    pub zero_flags: Vec<bool>,
    pub beta: Vec<Beta>,
}

impl Disc {
    pub fn new(components: Vec<TruncSeries>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Domain("a disc needs at least one component".into()));
        }
        let base: Vec<ExactComplex> = components.iter().map(|c| c.coeff(0)).collect();
        let zero_flags = components.iter().map(|c| c.is_zero()).collect();
        let beta = components
            .iter()
            .map(|c| match c.sub(&TruncSeries::constant(c.coeff(0), c.order())).vanishing_order() {
                Vanishing::Order(k) => Some(k as u32),
                Vanishing::ZeroUpTo(_) => None,
            })
            .collect();
        Ok(Disc { base, components, zero_flags, beta })
    }

    /// Polynomial disc `base_i + Σ_k coeffs[i][k-1] ζ^k`.
    pub fn polynomial(base: &[ExactComplex], coeffs: &[Vec<ExactComplex>], order: usize) -> Result<Self> {
        if base.len() != coeffs.len() {
            return Err(Error::DimensionMismatch { expected: base.len(), got: coeffs.len() });
        }
        let comps = base
            .iter()
            .zip(coeffs)
            .map(|(b, cs)| {
                let mut v = vec![b.clone()];
                v.extend(cs.iter().cloned());
                v.truncate(order + 1);
                TruncSeries::new(v, order)
            })
            .collect();
        Self::new(comps)
    }

    /// Line `p + b ζ`.
    pub fn line(p: &[ExactComplex], b: &[ExactComplex], order: usize) -> Result<Self> {
        let coeffs: Vec<Vec<ExactComplex>> = b.iter().map(|x| vec![x.clone()]).collect();
        Self::polynomial(p, &coeffs, order)
    }

    /// `φ_i = p_i e^{a_i ζ}` where `a_i` is given, else `b_i ζ` (for `p_i = 0`).
    pub fn exponential(p: &[ExactComplex], a: &[ExactComplex], order: usize) -> Result<Self> {
        if p.len() != a.len() {
            return Err(Error::DimensionMismatch { expected: p.len(), got: a.len() });
        }
        let comps = p
            .iter()
            .zip(a)
            .map(|(pi, ai)| {
                if is_czero(pi) {
                    return TruncSeries::monomial(ai.clone(), 1, order);
                }
                let mut v = Vec::with_capacity(order + 1);
                let mut term = pi.clone();
                for k in 0..=order {
                    v.push(term.clone());
                    term = cmul_scalar(&(&term * ai), &rat(1, k as i64 + 1));
                }
                TruncSeries::new(v, order)
            })
            .collect();
        Self::new(comps)
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn order(&self) -> usize {
        self.components.iter().map(|c| c.order()).min().unwrap_or(0)
    }

    /// `v(φ) = min β_j`; `None` for a constant disc.
    pub fn v(&self) -> Option<u32> {
        self.beta.iter().flatten().min().copied()
    }

    /// Coefficients `[k >= 1]` of each component, for reports.
    pub fn coefficient_lists(&self) -> Vec<Vec<ExactComplex>> {
        self.components
            .iter()
            .map(|c| {
                let mut v: Vec<ExactComplex> = c.coeffs().to_vec();
                while v.len() > 1 && v.last().is_some_and(is_czero) {
                    v.pop();
                }
                v
            })
            .collect()
    }

    pub fn with_order(&self, order: usize) -> Self {
        Disc {
            base: self.base.clone(),
            components: self.components.iter().map(|c| c.truncate(order)).collect(),
            zero_flags: self.zero_flags.clone(),
            beta: self.beta.clone(),
        }
    }
}

fn fmt_jet(c: &[ExactComplex]) -> String {
    let mut terms = Vec::new();
    for (k, a) in c.iter().enumerate() {
        if is_czero(a) {
            continue;
        }
        let coef = fmt_complex(a);
        let compound = coef.contains('+') || coef[1..].contains('-');
        let coef = if k > 0 && compound { format!("({coef})") } else { coef };
        terms.push(match k {
            0 => coef,
            1 if coef == "1" => "ζ".to_string(),
            1 if coef == "-1" => "-ζ".to_string(),
            1 => format!("{coef}ζ"),
            _ if coef == "1" => format!("ζ^{k}"),
            _ if coef == "-1" => format!("-ζ^{k}"),
            _ => format!("{coef}ζ^{k}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for Disc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficient_lists().iter().map(|c| fmt_jet(c)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Scalar helper used by witness builders.
pub(crate) fn real_vec(v: &[ExactScalar]) -> Vec<ExactComplex> {
    v.iter().cloned().map(real).collect()
}
