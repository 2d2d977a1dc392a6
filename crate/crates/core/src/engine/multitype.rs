//! Multitype by iterated weight optimisation over the tangential support.

use std::fmt;

use num_traits::{Signed, Zero};

use super::lp::{solve, Lp, LpOutcome, Rel};
use crate::error::{Error, Result};
use crate::exact::scalar::*;
use crate::exact::{Exponent, ExactScalar};
use crate::geometry::LocalGerm;

/// `(m_1, …, m_n)`; `None` entries are infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multitype {
    pub entries: Vec<Option<ExactScalar>>,
}

impl fmt::Display for Multitype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.as_ref().map_or("inf".into(), fmt_scalar)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Monomials not dominated componentwise by another monomial of the set.
fn minimal(support: &[Exponent]) -> Vec<Exponent> {
    support
        .iter()
        .filter(|a| !support.iter().any(|b| b != *a && b.iter().zip(a.iter()).all(|(x, y)| x <= y)))
        .cloned()
        .collect()
}

/// Minimises `max_{free} μ_m` subject to `Σ 2 α_m μ_m >= 1` with `fixed` values substituted.
fn min_max(constraints: &[Exponent], vars: &[usize], fixed: &[(usize, ExactScalar)], free: &[usize], target: Option<usize>, cap: Option<&ExactScalar>) -> Result<ExactScalar> {
    // columns: free μ's, then s
    let nf = free.len();
    let mut rows = Vec::new();
    for a in constraints {
        let mut rhs = int(1);
        for (m, v) in fixed {
            let k = vars.iter().position(|x| x == m).unwrap();
            rhs -= v * int(2 * a[k] as i64);
        }
        if !rhs.is_positive() {
            continue;
        }
        let mut row = vec![ExactScalar::zero(); nf + 1];
        for (c, m) in free.iter().enumerate() {
            let k = vars.iter().position(|x| x == m).unwrap();
            row[c] = int(2 * a[k] as i64);
        }
        if row.iter().all(|v| v.is_zero()) {
            return Err(Error::Infeasible);
        }
        rows.push((row, Rel::Ge, rhs));
    }
    for c in 0..nf {
        let mut row = vec![ExactScalar::zero(); nf + 1];
        row[c] = int(1);
        match cap {
            Some(v) => rows.push((row, Rel::Le, v.clone())),
            None => {
                row[nf] = int(-1);
                rows.push((row, Rel::Le, ExactScalar::zero()));
            }
        }
    }
    let mut objective = vec![ExactScalar::zero(); nf + 1];
    match target {
        Some(t) => objective[free.iter().position(|&m| m == t).unwrap()] = int(1),
        None => objective[nf] = int(1),
    }
    match solve(&Lp { nvars: nf + 1, objective, rows }) {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Infeasible => Err(Error::Infeasible),
        LpOutcome::Unbounded => Err(Error::Infeasible),
    }
}

/// Multitype at the base point of a local germ whose tangential variables all
/// vanish at the point (Mod variables) and whose minimal monomials are positive.
pub fn multitype(local: &LocalGerm) -> Result<Multitype> {
    if !local.log_vars().is_empty() {
        return Err(Error::OutOfScope("multitype with tangential directions off the coordinate axes".into()));
    }
    let vars = local.mod_vars();
    let mut terms: Vec<(Exponent, ExactScalar)> = Vec::new();
    for (e, c) in local.h_norm.terms() {
        let a: Exponent = vars.iter().map(|&m| e[m]).collect();
        if a.iter().all(|&k| k == 0) {
            continue;
        }
        terms.push((a, c.clone()));
    }
    let support: Vec<Exponent> = terms.iter().map(|(a, _)| a.clone()).collect();
    let constraints = minimal(&support);
    for a in &constraints {
        let c = &terms.iter().find(|(b, _)| b == a).unwrap().1;
        if c.is_negative() {
            return Err(Error::OutOfScope("negative coefficient on the Newton boundary".into()));
        }
    }
    let mut entries = vec![Some(int(1))];
    let mut fixed: Vec<(usize, ExactScalar)> = Vec::new();
    let mut free: Vec<usize> = vars.clone();
    while !free.is_empty() {
        let s = min_max(&constraints, &vars, &fixed, &free, None, None)?;
        if s.is_zero() {
            entries.extend(free.iter().map(|_| None));
            break;
        }
        entries.push(Some(int(1) / &s));
        let mut pick = free[0];
        for &m in &free {
            if min_max(&constraints, &vars, &fixed, &free, Some(m), Some(&s))? == s {
                pick = m;
                break;
            }
        }
        fixed.push((pick, s));
        free.retain(|&m| m != pick);
    }
    Ok(Multitype { entries })
}
