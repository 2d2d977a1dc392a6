//! q-types by restriction to generic slices through the point.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::compose::compose_order;
use super::disc::Disc;
use super::oracle::{OracleConfig, OracleResult};
use super::regular::variety_type;
use super::types::{Method, TypeKind, TypeValue};
use crate::error::{Error, Result};
use crate::exact::scalar::*;
use crate::exact::{ExactComplex, Vanishing};
use crate::geometry::LocalGerm;
use crate::germ::VarKind;

/// `(Δ_n, …, Δ_1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QTypes {
    pub values: Vec<TypeValue>,
    /// Seed of the draw that was used for the middle entries.
    pub seed: u64,
    pub oracle: OracleResult,
}

impl fmt::Display for QTypes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.kind.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn draw(rng: &mut ChaCha8Rng) -> ExactComplex {
    let mut part = || {
        let mut n = rng.gen_range(1..=7i64);
        if rng.gen_bool(0.5) {
            n = -n;
        }
        rat(n, rng.gen_range(1..=7i64))
    };
    cx(part(), part())
}

/// Disc through the point tangent to the complex direction `w` (on tangential
/// coordinates), with the normal exponent chosen to cancel the linear part.
fn tangent_disc(local: &LocalGerm, w: &[ExactComplex], order: usize) -> Result<Disc> {
    let n = local.n();
    let mut a = vec![czero(); n];
    let mut dot = czero();
    let tangential: Vec<usize> = (0..n).filter(|&i| i != local.normal).collect();
    for (k, &i) in tangential.iter().enumerate() {
        a[i] = w[k].clone();
        if local.kinds()[i] == VarKind::Log {
            dot += cmul_scalar(&w[k], &local.ell[i]);
        }
    }
    a[local.normal] = cmul_scalar(&dot, &(-(int(1) / &local.normal_coeff)));
    Disc::exponential(local.base_point(), &a, order)
}

fn order_kind(v: Vanishing, max_order: u32) -> TypeKind {
    match v {
        Vanishing::Order(d) => TypeKind::exact(d as u32),
        Vanishing::ZeroUpTo(_) => TypeKind::Bounds { lo: int(max_order as i64 + 1), hi: None },
    }
}

/// Generic-slice q-types. `Δ_1` is the variety type (cross-checked by the
/// oracle), `Δ_n = 1`, and the middle entries come from three seeded generic
/// tangent directions.
pub fn q_types(local: &LocalGerm, max_order: u32, seed: u64, cfg: &OracleConfig) -> Result<QTypes> {
    let n = local.n();
    let (delta1, oracle) = variety_type(local, max_order, cfg)?;
    let mut normal_b = vec![czero(); n];
    normal_b[local.normal] = local.base_point()[local.normal].clone();
    let normal = TypeValue::exact(1, Disc::line(local.base_point(), &normal_b, 2).ok(), Method::SeriesComposition);
    if n == 1 {
        return Ok(QTypes { values: vec![normal], seed, oracle });
    }
    let order = max_order as usize + 1;
    let mut generic: Option<(TypeKind, Disc, u64)> = None;
    for round in 0..3u64 {
        let s = seed.wrapping_add(round);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let mut results: Vec<(TypeKind, Disc)> = Vec::new();
        for _ in 0..3 {
            let w: Vec<ExactComplex> = (0..n - 1).map(|_| draw(&mut rng)).collect();
            let disc = tangent_disc(local, &w, order)?;
            let kind = order_kind(compose_order(&local.germ, &disc)?, max_order);
            results.push((kind, disc));
        }
        let distinct = results[0].0 != results[1].0 && results[1].0 != results[2].0 && results[0].0 != results[2].0;
        if distinct {
            continue;
        }
        let (kind, disc) = results.into_iter().reduce(|a, b| if b.0.cmp_certain(&a.0) == Some(std::cmp::Ordering::Less) { b } else { a }).unwrap();
        generic = Some((kind, disc, s));
        break;
    }
    let (gkind, gdisc, used_seed) = generic.ok_or_else(|| Error::Genericity(format!("three rounds of draws from seed {seed} disagreed")))?;
    let mut values = vec![normal];
    for q in (2..n).rev() {
        // slice with n - q tangential dimensions
        let kind = if n - q == 1 {
            gkind.clone()
        } else {
            match (gkind.lo(), delta1.kind.hi()) {
                (Some(lo), hi) => match hi {
                    Some(h) if h == lo => TypeKind::Exact(lo.clone()),
                    hi => TypeKind::Bounds { lo: lo.clone(), hi: hi.cloned() },
                },
                (None, _) => TypeKind::Infinite,
            }
        };
        values.push(TypeValue::new(kind, Some(gdisc.clone()), Method::SeriesComposition));
    }
    values.push(delta1);
    Ok(QTypes { values, seed: used_seed, oracle })
}
