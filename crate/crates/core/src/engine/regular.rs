//! Regular, line and variety type at a boundary point of a Reinhardt domain.
//!
//! The regular type is the larger of two orders: along exponential discs
//! `p_i e^{a_i ζ}` in the nonzero coordinates (the Log part) and along lines
//! `(p, b ζ)` in the zero coordinates (the Mod part).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::compose::{compose_herm, compose_order, var_image};
use super::disc::{real_vec, Disc};
use super::oracle::{jet_oracle, OracleConfig, OracleResult, Score};
use super::types::{Method, TypeKind, TypeValue};
use crate::error::{Error, Result};
use crate::exact::scalar::*;
use crate::exact::upoly::Bound;
use crate::exact::{ExactComplex, ExactScalar, HermSeries, MPoly, TruncSeries, UPoly, Vanishing};
use crate::geometry::LocalGerm;
use crate::germ::{Germ, Model, VarKind};

/// Common-zero scan of a sequence of binary forms.
enum Scan {
    /// The forms up to `at - 1` share a zero (the witness, if rational); `at` does not.
    Stops { at: u32, witness: Option<(ExactScalar, ExactScalar)> },
    Persists { witness: Option<(ExactScalar, ExactScalar)> },
}

/// Scans forms `d = lo..=hi`, given dehomogenised at `(1, y)` plus their
/// coefficient at `(0, 1)`. With `nonneg`, only `y >= 0` counts.
fn scan_binary(forms: &[(u32, UPoly, ExactScalar)], nonneg: bool) -> Scan {
    let range = if nonneg { (Bound::At(ExactScalar::zero()), Bound::PosInf) } else { (Bound::NegInf, Bound::PosInf) };
    let mut g: Option<UPoly> = None;
    let mut inf_alive = true;
    let witness = |g: &Option<UPoly>, inf_alive: bool| -> Option<(ExactScalar, ExactScalar)> {
        match g {
            None => Some((int(1), ExactScalar::zero())),
            Some(p) => match p.rational_root_in(&range.0, &range.1) {
                Some(y) => Some((int(1), y)),
                None => inf_alive.then(|| (ExactScalar::zero(), int(1))),
            },
        }
    };
    for (d, f, at_inf) in forms {
        let prev = witness(&g, inf_alive);
        if !f.is_zero() {
            g = Some(match g {
                None => f.clone(),
                Some(p) => p.gcd(f),
            });
        }
        inf_alive &= at_inf.is_zero();
        let finite_alive = match &g {
            None => true,
            Some(p) => p.degree().unwrap_or(0) > 0 && p.has_root_in(&range.0, &range.1),
        };
        if !finite_alive && !inf_alive {
            return Scan::Stops { at: *d, witness: prev };
        }
    }
    Scan::Persists { witness: witness(&g, inf_alive) }
}

/// Homogeneous part of degree `d` of `p` in the variables `(a, b)`,
/// dehomogenised at `(1, y)`, with its `(0, 1)` coefficient.
fn binary_form(p: &MPoly, a: usize, b: usize, d: u32) -> (u32, UPoly, ExactScalar) {
    let mut coeffs = vec![ExactScalar::zero(); d as usize + 1];
    for (e, c) in p.terms() {
        if e[a] + e[b] == d {
            coeffs[e[b] as usize] += c;
        }
    }
    let at_inf = coeffs[d as usize].clone();
    (d, UPoly::new(coeffs), at_inf)
}

/// Exact `√q` when `q` is a rational square.
pub fn sqrt_rational(q: &ExactScalar) -> Option<ExactScalar> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| ExactScalar::new(rn, rd))
}

/// A complex `b` with `|b|^2 = x`, when one with rational parts is found.
pub fn modulus_witness(x: &ExactScalar) -> Option<ExactComplex> {
    if let Some(r) = sqrt_rational(x) {
        return Some(real(r));
    }
    // x = m / d^2 with m = n d; look for m = a^2 + c^2
    let m: BigInt = x.numer() * x.denom();
    let limit = m.sqrt();
    if limit > BigInt::from(1_000) {
        return None;
    }
    let mut a = BigInt::zero();
    while a <= limit {
        let rest = &m - &a * &a;
        let c = rest.sqrt();
        if &c * &c == rest {
            let d = ExactScalar::from_integer(x.denom().clone());
            return Some(cx(ExactScalar::from_integer(a) / &d, ExactScalar::from_integer(c) / d));
        }
        a += BigInt::one();
    }
    None
}

/// Result of one of the two disc families.
struct Part {
    kind: TypeKind,
    /// Real direction `x` over the part's variables attaining `kind.lo()`.
    direction: Option<Vec<ExactScalar>>,
    method: Method,
}

fn first_nonzero(p: &MPoly, var: usize, from: u32, to: u32) -> Option<u32> {
    (from..=to).find(|&d| {
        let mut e = vec![0; p.nvars()];
        e[var] = d;
        !p.coeff(&e).is_zero()
    })
}

/// Does `ρ` vanish identically along the exponential disc with exponents `a`
/// (zero coordinates are held at zero)?
fn flat_exponential(domain: &Germ, p: &[ExactComplex], a: &[ExactScalar]) -> bool {
    let poly = domain.poly();
    match domain.model() {
        Some(Model::Log) => {
            // ρ(a s) as a polynomial in s
            let images: Vec<MPoly> = a.iter().map(|ai| MPoly::monomial(vec![1], ai.clone())).collect();
            poly.compose(&images, &[1], u32::MAX).is_zero()
        }
        Some(Model::Mod) => {
            // Σ c_α τ^α e^{2⟨α,a⟩ s}, grouped by exponent
            let mut groups: std::collections::BTreeMap<ExactScalar, ExactScalar> = Default::default();
            for (e, c) in poly.terms() {
                let mut coef = c.clone();
                let mut rate = ExactScalar::zero();
                for (i, &k) in e.iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    if is_czero(&p[i]) {
                        coef = ExactScalar::zero();
                        break;
                    }
                    coef *= num_traits::pow(norm_sqr(&p[i]), k as usize);
                    rate += &a[i] * int(k as i64);
                }
                *groups.entry(rate).or_insert_with(ExactScalar::zero) += coef;
            }
            groups.values().all(|c| c.is_zero())
        }
        None => false,
    }
}

/// Does `ρ` vanish identically along `(p_L, p_j, b ζ)` with `|b_m|^2 = x_m`?
fn flat_mod_line(domain: &Germ, p: &[ExactComplex], mods: &[usize], x: &[ExactScalar]) -> bool {
    if domain.model() != Some(Model::Mod) {
        return false;
    }
    let n = domain.n();
    let images: Vec<MPoly> = (0..n)
        .map(|i| match mods.iter().position(|&m| m == i) {
            Some(k) => MPoly::monomial(vec![1], x[k].clone()),
            None => MPoly::constant(norm_sqr(&p[i]), 1),
        })
        .collect();
    domain.poly().compose(&images, &[1], u32::MAX).is_zero()
}

fn beyond(max_order: u32) -> TypeKind {
    TypeKind::Bounds { lo: int(max_order as i64 + 1), hi: None }
}

/// Order of `H(x s)` for a real direction `x` over `vars`: first nonzero degree.
fn order_along(p: &MPoly, vars: &[usize], x: &[ExactScalar], max_deg: u32) -> Option<u32> {
    let n = p.nvars();
    (1..=max_deg).find(|&d| {
        let part = p.homogeneous_part(d);
        let mut pt = vec![ExactScalar::zero(); n];
        for (k, &v) in vars.iter().enumerate() {
            pt[v] = x[k].clone();
        }
        !part.eval(&pt).is_zero()
    })
}

fn small_directions(dim: usize, nonneg: bool) -> Vec<Vec<ExactScalar>> {
    let vals: Vec<i64> = if nonneg { vec![0, 1, 2] } else { vec![-2, -1, 0, 1, 2] };
    let mut out = Vec::new();
    let total = vals.len().pow(dim as u32);
    for mut idx in 0..total {
        let mut v = Vec::with_capacity(dim);
        for _ in 0..dim {
            v.push(int(vals[idx % vals.len()]));
            idx /= vals.len();
        }
        if v.iter().any(|x| !x.is_zero()) {
            out.push(v);
        }
    }
    out
}

/// Log part: `max_x ord H_A(x s)` over real `x` on the tangential Log variables.
fn log_part(local: &LocalGerm, max_order: u32) -> Option<Part> {
    let logs = local.log_vars();
    if logs.is_empty() {
        return None;
    }
    let ha = local.h_norm.restrict_zero(&local.mod_vars());
    let persist_kind = |x: &[ExactScalar]| {
        let a = exponents(local, x);
        if local.original_chart && flat_exponential(&local.domain, local.base_point(), &a) {
            TypeKind::Infinite
        } else {
            beyond(max_order)
        }
    };
    match logs.len() {
        1 => {
            let x = vec![int(1)];
            Some(match first_nonzero(&ha, logs[0], 1, max_order) {
                Some(d) => Part { kind: TypeKind::exact(d), direction: Some(x), method: Method::Elimination },
                None => Part { kind: persist_kind(&x), direction: Some(x), method: Method::Elimination },
            })
        }
        2 => {
            let forms: Vec<_> = (1..=max_order).map(|d| binary_form(&ha, logs[0], logs[1], d)).collect();
            Some(match scan_binary(&forms, false) {
                Scan::Stops { at, witness } => Part {
                    kind: TypeKind::exact(at),
                    direction: witness.map(|(a, b)| vec![a, b]),
                    method: Method::Elimination,
                },
                Scan::Persists { witness } => match witness {
                    Some((a, b)) => {
                        let x = vec![a, b];
                        Part { kind: persist_kind(&x), direction: Some(x), method: Method::Elimination }
                    }
                    None => Part { kind: beyond(max_order), direction: None, method: Method::Elimination },
                },
            })
        }
        _ => {
            let mut best: Option<(u32, Vec<ExactScalar>)> = None;
            for x in small_directions(logs.len(), false) {
                let d = order_along(&ha, &logs, &x, max_order).unwrap_or(max_order + 1);
                if best.as_ref().is_none_or(|(b, _)| d > *b) {
                    best = Some((d, x));
                }
            }
            let (d, x) = best.expect("at least one direction");
            let quad = ha.homogeneous_part(2);
            let definite = {
                let h = crate::germ::model::hessian(&quad, &vec![ExactScalar::zero(); ha.nvars()]);
                let sub: Vec<Vec<ExactScalar>> = logs.iter().map(|&a| logs.iter().map(|&b| h[a][b].clone()).collect()).collect();
                (1..=sub.len()).all(|k| {
                    let m: Vec<Vec<ExactScalar>> = sub[..k].iter().map(|r| r[..k].to_vec()).collect();
                    crate::geometry::convex::determinant(&m).is_positive()
                })
            };
            let kind = if definite { TypeKind::exact(2) } else { TypeKind::Bounds { lo: int(d as i64), hi: None } };
            Some(Part { kind, direction: Some(x), method: Method::SeriesComposition })
        }
    }
}

/// Mod part: `max_x ord H_B(x |ζ|^2)` over `x >= 0` on the zero coordinates.
fn mod_part(local: &LocalGerm, max_order: u32) -> Option<Part> {
    let mods = local.mod_vars();
    if mods.is_empty() {
        return None;
    }
    let mut zeroed = local.log_vars();
    zeroed.push(local.normal);
    let hb = local.h_norm.restrict_zero(&zeroed);
    let dmax = max_order / 2;
    let persist_kind = |x: &[ExactScalar]| {
        if local.original_chart && flat_mod_line(&local.domain, local.base_point(), &mods, x) {
            TypeKind::Infinite
        } else {
            beyond(max_order)
        }
    };
    let exact2 = |d: u32| TypeKind::exact(2 * d);
    match mods.len() {
        1 => {
            let x = vec![int(1)];
            Some(match first_nonzero(&hb, mods[0], 1, dmax) {
                Some(d) => Part { kind: exact2(d), direction: Some(x), method: Method::Elimination },
                None => Part { kind: persist_kind(&x), direction: Some(x), method: Method::Elimination },
            })
        }
        2 => {
            let forms: Vec<_> = (1..=dmax).map(|d| binary_form(&hb, mods[0], mods[1], d)).collect();
            Some(match scan_binary(&forms, true) {
                Scan::Stops { at, witness } => Part {
                    kind: exact2(at),
                    direction: witness.map(|(a, b)| vec![a, b]),
                    method: Method::Elimination,
                },
                Scan::Persists { witness } => match witness {
                    Some((a, b)) => {
                        let x = vec![a, b];
                        Part { kind: persist_kind(&x), direction: Some(x), method: Method::Elimination }
                    }
                    None => Part { kind: beyond(max_order), direction: None, method: Method::Elimination },
                },
            })
        }
        k => {
            if hb.all_coeffs_nonnegative() {
                // no cancellation: a single coordinate axis is best
                let mut best: Option<(Option<u32>, usize)> = None;
                for (idx, &m) in mods.iter().enumerate() {
                    let d = first_nonzero(&hb, m, 1, dmax);
                    let better = match &best {
                        None => true,
                        Some((bd, _)) => match (d, bd) {
                            (None, Some(_)) => true,
                            (Some(a), Some(b)) => a > *b,
                            _ => false,
                        },
                    };
                    if better {
                        best = Some((d, idx));
                    }
                }
                let (d, idx) = best.unwrap();
                let mut x = vec![ExactScalar::zero(); k];
                x[idx] = int(1);
                let kind = match d {
                    Some(d) => exact2(d),
                    None => persist_kind(&x),
                };
                Some(Part { kind, direction: Some(x), method: Method::NewtonFastPath })
            } else {
                let mut best: Option<(u32, Vec<ExactScalar>)> = None;
                for x in small_directions(k, true) {
                    let d = order_along(&hb, &mods, &x, dmax).unwrap_or(dmax + 1);
                    if best.as_ref().is_none_or(|(b, _)| d > *b) {
                        best = Some((d, x));
                    }
                }
                let (d, x) = best.unwrap();
                Some(Part { kind: TypeKind::Bounds { lo: int(2 * d as i64), hi: None }, direction: Some(x), method: Method::SeriesComposition })
            }
        }
    }
}

/// Exponents `a` of the exponential disc for a Log-part direction `x`:
/// `a_L = x`, `a_j = -(ℓ·x)/c`, zero on the Mod coordinates.
fn exponents(local: &LocalGerm, x: &[ExactScalar]) -> Vec<ExactScalar> {
    let n = local.n();
    let logs = local.log_vars();
    let mut a = vec![ExactScalar::zero(); n];
    let mut dot = ExactScalar::zero();
    for (k, &l) in logs.iter().enumerate() {
        a[l] = x[k].clone();
        dot += &local.ell[l] * &x[k];
    }
    a[local.normal] = -dot / &local.normal_coeff;
    if let Some(first) = a.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            a.iter_mut().for_each(|v| *v = -v.clone());
        }
    }
    a
}

fn witness_order(max_order: u32) -> usize {
    max_order as usize + 1
}

fn log_witness(local: &LocalGerm, x: &[ExactScalar], max_order: u32) -> Option<Disc> {
    let a = exponents(local, x);
    Disc::exponential(local.base_point(), &real_vec(&a), witness_order(max_order)).ok()
}

fn mod_witness(local: &LocalGerm, x: &[ExactScalar], max_order: u32) -> Option<Disc> {
    let mods = local.mod_vars();
    let mut b = vec![czero(); local.n()];
    for (k, &m) in mods.iter().enumerate() {
        b[m] = modulus_witness(&x[k])?;
    }
    Disc::line(local.base_point(), &b, witness_order(max_order)).ok()
}

/// Regular type at the local germ's base point, deciding orders up to `max_order`.
pub fn regular_type(local: &LocalGerm, max_order: u32) -> Result<TypeValue> {
    check_trunc(local, max_order)?;
    let a = log_part(local, max_order);
    let b = mod_part(local, max_order);
    let a_val = a.map(|p| {
        let w = p.direction.as_ref().and_then(|x| log_witness(local, x, max_order));
        TypeValue::new(p.kind, w, p.method)
    });
    let b_val = b.map(|p| {
        let w = p.direction.as_ref().and_then(|x| mod_witness(local, x, max_order));
        TypeValue::new(p.kind, w, p.method)
    });
    Ok(match (a_val, b_val) {
        (None, None) => {
            // one complex dimension: only the normal direction
            let mut b = vec![czero(); local.n()];
            b[local.normal] = local.base_point()[local.normal].clone();
            TypeValue::exact(1, Disc::line(local.base_point(), &b, 2).ok(), Method::Elimination)
        }
        (Some(v), None) | (None, Some(v)) => v,
        (Some(a), Some(b)) => {
            let kind = a.kind.max(&b.kind);
            let pick_b = matches!(b.kind.cmp_certain(&a.kind), Some(std::cmp::Ordering::Greater))
                || (b.kind.is_infinite() && !a.kind.is_infinite());
            let (w, m) = if pick_b { (b.witness, b.method) } else { (a.witness, a.method) };
            TypeValue::new(kind, w, m)
        }
    })
}

fn check_trunc(local: &LocalGerm, max_order: u32) -> Result<()> {
    if local.trunc < max_order {
        return Err(Error::Domain(format!("local germ truncated at {} but max order is {}", local.trunc, max_order)));
    }
    Ok(())
}

/// Line `p + b ζ` with `b_i = p_i w_i` on Log coordinates and `b_m` on Mod ones.
fn line_disc(local: &LocalGerm, w: &[ExactComplex], b_mod: &[ExactComplex], order: usize) -> Result<Disc> {
    let p = local.base_point();
    let mods = local.mod_vars();
    let mut b = vec![czero(); local.n()];
    for i in 0..local.n() {
        if let Some(k) = mods.iter().position(|&m| m == i) {
            b[i] = b_mod[k].clone();
        } else {
            b[i] = &p[i] * &w[i];
        }
    }
    Disc::line(p, &b, order)
}

/// Normal slope `w_j` cancelling the linear part along tangential slopes `w_L`.
fn normal_slope(local: &LocalGerm, w: &mut [ExactComplex]) {
    let mut dot = czero();
    for l in local.log_vars() {
        dot += cmul_scalar(&w[l], &local.ell[l]);
    }
    w[local.normal] = cmul_scalar(&dot, &(-(int(1) / &local.normal_coeff)));
}

/// Does `ρ` vanish identically along the polynomial line (MOD domains only)?
fn flat_line(local: &LocalGerm, line: &Disc) -> bool {
    let domain = &local.domain;
    if !local.original_chart || domain.model() != Some(Model::Mod) {
        return false;
    }
    let deg = 2 * domain.poly().total_degree() as usize;
    let l = line.with_order(deg.max(1));
    let comps: Vec<TruncSeries> = l.components.iter().map(|c| TruncSeries::new(c.coeffs().to_vec(), deg.max(1))).collect();
    matches!(super::compose::mod_order(&domain.poly(), &comps, deg), Vanishing::ZeroUpTo(_))
}

/// Interpolates values at `x = 0, 1, …` into a polynomial.
fn interpolate(values: &[ExactScalar]) -> UPoly {
    // Newton divided differences on nodes 0..m
    let m = values.len();
    let mut dd: Vec<ExactScalar> = values.to_vec();
    for k in 1..m {
        for i in (k..m).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / int(k as i64);
        }
    }
    let mut acc = UPoly::new(vec![dd[m - 1].clone()]);
    for i in (0..m - 1).rev() {
        // acc = acc * (x - i) + dd[i]
        acc = acc.mul(&UPoly::new(vec![int(-(i as i64)), int(1)])).sub(&UPoly::new(vec![-dd[i].clone()]));
    }
    acc
}

/// Line type at the local germ's base point.
pub fn line_type(local: &LocalGerm, max_order: u32) -> Result<TypeValue> {
    check_trunc(local, max_order)?;
    let logs = local.log_vars();
    let mods = local.mod_vars();
    let order = witness_order(max_order);
    // lines with no Log-tangential slope: the Mod part
    let b_branch = mod_part(local, max_order).map(|p| {
        let w = p.direction.as_ref().and_then(|x| mod_witness(local, x, max_order));
        TypeValue::new(p.kind, w, p.method)
    });
    let n = local.n();
    match (logs.len(), mods.len()) {
        (0, _) => regular_type(local, max_order),
        (1, 0) => {
            let mut w = vec![czero(); n];
            w[logs[0]] = cone();
            normal_slope(local, &mut w);
            let line = line_disc(local, &w, &[], order)?;
            let kind = match compose_order(&local.germ, &line)? {
                Vanishing::Order(d) => TypeKind::exact(d as u32),
                Vanishing::ZeroUpTo(_) if flat_line(local, &line) => TypeKind::Infinite,
                Vanishing::ZeroUpTo(_) => beyond(max_order),
            };
            Ok(TypeValue::new(kind, Some(line), Method::SeriesComposition))
        }
        (1, 1) => {
            let slope_branch = line_family_one_mod(local, max_order)?;
            let b = b_branch.expect("one Mod coordinate");
            if matches!(b.kind.cmp_certain(&slope_branch.kind), Some(std::cmp::Ordering::Greater)) {
                Ok(b)
            } else {
                let kind = slope_branch.kind.max(&b.kind);
                Ok(TypeValue::new(kind, slope_branch.witness, slope_branch.method))
            }
        }
        _ => {
            // bounded search over a small set of slopes
            let reg = regular_type(local, max_order)?;
            let mut best: Option<(TypeKind, Disc)> = b_branch.as_ref().and_then(|b| b.witness.clone().map(|w| (b.kind.clone(), w)));
            let slopes = [cone(), real(int(-1)), real(int(2)), real(rat(1, 2)), cx(int(0), int(1)), cx(int(1), int(1)), czero()];
            let mut choices: Vec<Vec<ExactComplex>> = vec![vec![]];
            for (k, _) in logs.iter().enumerate() {
                let mut next = Vec::new();
                for c in &choices {
                    for s in &slopes {
                        if k == 0 && !(is_czero(s) || *s == cone()) {
                            continue;
                        }
                        let mut v = c.clone();
                        v.push(s.clone());
                        next.push(v);
                    }
                }
                choices = next;
            }
            let mod_choices: Vec<Vec<ExactComplex>> = small_directions(mods.len(), true)
                .into_iter()
                .map(|x| x.into_iter().map(real).collect())
                .chain(std::iter::once(vec![czero(); mods.len()]))
                .collect();
            for wl in choices.iter().filter(|c| c.iter().any(|s| !is_czero(s))) {
                for bm in &mod_choices {
                    let mut w = vec![czero(); n];
                    for (k, &l) in logs.iter().enumerate() {
                        w[l] = wl[k].clone();
                    }
                    normal_slope(local, &mut w);
                    let line = line_disc(local, &w, bm, order)?;
                    let kind = match compose_order(&local.germ, &line)? {
                        Vanishing::Order(d) => TypeKind::exact(d as u32),
                        Vanishing::ZeroUpTo(_) => beyond(max_order),
                    };
                    let better = match &best {
                        None => true,
                        Some((k, _)) => matches!(kind.cmp_certain(k), Some(std::cmp::Ordering::Greater)),
                    };
                    if better {
                        best = Some((kind, line));
                    }
                }
            }
            let (lo_kind, w) = best.expect("nonempty search");
            let lo = lo_kind.lo().cloned().unwrap_or_else(|| int(max_order as i64 + 1));
            let hi = reg.kind.hi().cloned();
            let kind = match hi {
                Some(h) if h == lo => TypeKind::Exact(lo),
                hi => TypeKind::Bounds { lo, hi },
            };
            Ok(TypeValue::new(kind, Some(w), Method::SeriesComposition))
        }
    }
}

/// Lines with tangential Log slope 1 and one Mod coordinate `|b|^2 = x`:
/// the composition's coefficients are polynomials in `x`, recovered by
/// interpolation and scanned for common nonnegative roots.
fn line_family_one_mod(local: &LocalGerm, max_order: u32) -> Result<TypeValue> {
    let n = local.n();
    let logs = local.log_vars();
    let mods = local.mod_vars();
    let order = max_order as usize;
    let mut w = vec![czero(); n];
    w[logs[0]] = cone();
    normal_slope(local, &mut w);
    let p = local.base_point();
    let poly = local.germ.poly();
    let nodes = order / 2 + 2;
    let mut samples: Vec<HermSeries> = Vec::with_capacity(nodes);
    for xv in 0..nodes {
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            if i == mods[0] {
                images.push(HermSeries::from_entries(&[((1, 1), real(int(xv as i64)))], order));
            } else if !poly.depends_on(i) {
                images.push(HermSeries::zero(order));
            } else {
                let comp = TruncSeries::new(vec![p[i].clone(), &p[i] * &w[i]], order);
                images.push(var_image(VarKind::Log, &p[i], &comp, i)?);
            }
        }
        samples.push(compose_herm(&poly, &images, order));
    }
    // coefficient polynomials per total degree
    let mut forms: Vec<Vec<UPoly>> = vec![Vec::new(); order + 1];
    for s in 1..=order {
        for k in 0..=s {
            let j = s - k;
            let re: Vec<ExactScalar> = samples.iter().map(|h| h.coeff(j, k).re).collect();
            let im: Vec<ExactScalar> = samples.iter().map(|h| h.coeff(j, k).im).collect();
            for vals in [re, im] {
                let pl = interpolate(&vals);
                if !pl.is_zero() {
                    forms[s].push(pl);
                }
            }
        }
    }
    let range = (Bound::At(ExactScalar::zero()), Bound::PosInf);
    let root_of = |g: &Option<UPoly>| -> Option<ExactScalar> {
        match g {
            None => Some(ExactScalar::zero()),
            Some(p) if p.eval(&ExactScalar::zero()).is_zero() => Some(ExactScalar::zero()),
            Some(p) => p.rational_root_in(&range.0, &range.1),
        }
    };
    let make_line = |x: Option<ExactScalar>| -> Option<Disc> {
        let b = modulus_witness(&x?)?;
        line_disc(local, &w, &[b], order + 1).ok()
    };
    let mut g: Option<UPoly> = None;
    for (s, fs) in forms.iter().enumerate().skip(1) {
        let prev = root_of(&g);
        for f in fs {
            g = Some(match g {
                None => f.clone(),
                Some(q) => q.gcd(f),
            });
        }
        let alive = match &g {
            None => true,
            Some(q) => q.degree().unwrap_or(0) > 0 && q.has_root_in(&range.0, &range.1),
        };
        if !alive {
            return Ok(TypeValue::new(TypeKind::exact(s as u32), make_line(prev), Method::Elimination));
        }
    }
    let x = root_of(&g);
    let line = make_line(x);
    let kind = match &line {
        Some(l) if flat_line(local, l) => TypeKind::Infinite,
        _ => beyond(max_order),
    };
    Ok(TypeValue::new(kind, line, Method::Elimination))
}

/// Variety type: the regular type, cross-checked against the jet oracle on
/// the domain's own defining function.
pub fn variety_type(local: &LocalGerm, max_order: u32, cfg: &OracleConfig) -> Result<(TypeValue, OracleResult)> {
    let reg = regular_type(local, max_order)?;
    let oracle = jet_oracle(&local.domain, &local.domain_point, cfg)?;
    if let (Some(score), Some(hi)) = (&oracle.best, reg.kind.hi()) {
        let exceeds = match score {
            Score::Ratio(r) => r > hi,
            Score::Unbounded { .. } => true,
        };
        if exceeds && !reg.kind.is_infinite() {
            return Err(Error::Inconsistency {
                oracle: score.to_string(),
                regular: reg.kind.to_string(),
                oracle_witness: oracle.witness.as_ref().map(|d| d.to_string()).unwrap_or_default(),
                regular_witness: reg.witness.as_ref().map(|d| d.to_string()).unwrap_or_default(),
            });
        }
    }
    Ok((reg, oracle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{local_germ_at, BoundaryPoint, DomainSpec};
    use crate::germ::{parse_expr, to_germ};

    fn local(text: &str, p: Vec<ExactComplex>) -> LocalGerm {
        let g = to_germ(&parse_expr(text, p.len()).unwrap(), p.clone()).unwrap();
        let d = DomainSpec::new(g, None).unwrap();
        let bp = BoundaryPoint::new(&d, p).unwrap();
        local_germ_at(&d, &bp, 13).unwrap()
    }

    fn diagonal_quartic() -> LocalGerm {
        local("log|z1| + log|z2| + (log|z1| - log|z2|)^4", vec![cone(), cone()])
    }

    fn mixed_sextic() -> LocalGerm {
        local("|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1", vec![cone(), czero(), czero()])
    }

    #[test]
    fn diagonal_quartic_types() {
        let l = diagonal_quartic();
        let reg = regular_type(&l, 12).unwrap();
        assert_eq!(reg.kind, TypeKind::exact(4));
        let w = reg.witness.unwrap();
        assert_eq!(w.components[0].coeff(1), cone());
        assert_eq!(w.components[1].coeff(1), real(int(-1)));
        assert_eq!(compose_order(&l.germ, &w).unwrap(), Vanishing::Order(4));
        assert_eq!(line_type(&l, 12).unwrap().kind, TypeKind::exact(2));
    }

    #[test]
    fn mixed_sextic_types() {
        let l = mixed_sextic();
        let reg = regular_type(&l, 12).unwrap();
        assert_eq!(reg.kind, TypeKind::exact(6));
        assert_eq!(reg.witness.as_ref().unwrap().to_string(), "(1, ζ, 0)");
        assert_eq!(line_type(&l, 12).unwrap().kind, TypeKind::exact(6));
    }

    #[test]
    fn sphere_is_two() {
        let l = local("|z1|^2 + |z2|^2 - 1", vec![cone(), czero()]);
        assert_eq!(regular_type(&l, 12).unwrap().kind, TypeKind::exact(2));
        assert_eq!(line_type(&l, 12).unwrap().kind, TypeKind::exact(2));
    }

    #[test]
    fn flat_direction_is_infinite() {
        let l = local("|z1|^2 + |z2|^2 - 1", vec![cone(), czero(), czero()]);
        let reg = regular_type(&l, 12).unwrap();
        assert_eq!(reg.kind, TypeKind::Infinite);
        assert_eq!(reg.witness.unwrap().to_string(), "(1, 0, ζ)");
    }

    #[test]
    fn mixed_case() {
        let l = local("|z1|^2 + |z2|^2 + |z2|^2*|z3|^4 + |z3|^6 - 2", vec![cone(), cone(), czero()]);
        let reg = regular_type(&l, 12).unwrap();
        assert_eq!(reg.kind, TypeKind::exact(4));
        assert_eq!(compose_order(&l.germ, reg.witness.as_ref().unwrap()).unwrap(), Vanishing::Order(4));
        assert_eq!(line_type(&l, 12).unwrap().kind, TypeKind::exact(4));
    }

    #[test]
    fn modulus_witnesses() {
        assert_eq!(modulus_witness(&rat(9, 4)), Some(real(rat(3, 2))));
        let b = modulus_witness(&int(2)).unwrap();
        assert_eq!(norm_sqr(&b), int(2));
        assert_eq!(modulus_witness(&int(3)), None);
    }

    #[test]
    fn interpolation_roundtrip() {
        let p = UPoly::new(vec![int(1), int(-2), rat(1, 3)]);
        let vals: Vec<ExactScalar> = (0..4).map(|x| p.eval(&int(x))).collect();
        assert_eq!(interpolate(&vals), p);
    }
}
