//! Exact composition of germs with discs.

use num_traits::Zero;

use super::disc::Disc;
use crate::error::{Error, Result};
use crate::exact::scalar::*;
use crate::exact::{ExactComplex, HermSeries, MPoly, TruncSeries, Vanishing};
use crate::germ::{Germ, VarKind};

/// Image of one chart variable along a component: `|φ_i|^2` or `log|φ_i/p_i|`.
pub fn var_image(kind: VarKind, p_i: &ExactComplex, comp: &TruncSeries, index: usize) -> Result<HermSeries> {
    let order = comp.order();
    match kind {
        VarKind::Mod => Ok(HermSeries::modulus_sqr(comp, order)),
        VarKind::Log => {
            let c0 = comp.coeff(0);
            if is_czero(&c0) {
                return Err(Error::Chart(index + 1));
            }
            if norm_sqr(&c0) != norm_sqr(p_i) {
                return Err(Error::NotBased(format!("component {} starts off the base point", index + 1)));
            }
            let w = comp.scale(&cinv(&c0)).sub(&TruncSeries::constant(cone(), order));
            Ok(HermSeries::real_part(&w.log1p()?, order))
        }
    }
}

/// `Σ c_α Π images_i^{α_i}` truncated at `order`.
pub fn compose_herm(poly: &MPoly, images: &[HermSeries], order: usize) -> HermSeries {
    let mut cache: Vec<Vec<HermSeries>> = images.iter().map(|im| vec![HermSeries::constant(int(1), order), im.truncate(order)]).collect();
    let mut out = HermSeries::zero(order);
    for (e, c) in poly.terms() {
        let mut mono: Option<HermSeries> = None;
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            while cache[i].len() <= k as usize {
                let next = cache[i].last().unwrap().mul_trunc(&images[i], order);
                cache[i].push(next);
            }
            let f = &cache[i][k as usize];
            mono = Some(match mono {
                None => f.clone(),
                Some(m) => m.mul_trunc(f, order),
            });
        }
        match mono {
            None => out.add_assign_scaled(&HermSeries::constant(int(1), order), c),
            Some(m) => out.add_assign_scaled(&m, c),
        }
    }
    out
}

/// `g ∘ φ` as a Hermitian jet, truncated at the disc's order.
pub fn compose_series(g: &Germ, phi: &Disc) -> Result<HermSeries> {
    let n = g.n();
    if phi.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: phi.n() });
    }
    let order = phi.order();
    let poly = g.poly();
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        if !poly.depends_on(i) {
            images.push(HermSeries::zero(order));
            continue;
        }
        let p_i = g.base_point().get(i).cloned().unwrap_or_else(czero);
        images.push(var_image(g.kind(i), &p_i, &phi.components[i], i)?);
    }
    Ok(compose_herm(&poly, &images, order))
}

/// `v(g ∘ φ)`.
pub fn compose_order(g: &Germ, phi: &Disc) -> Result<Vanishing> {
    if g.kinds().iter().all(|&k| k == VarKind::Mod) {
        if phi.n() != g.n() {
            return Err(Error::DimensionMismatch { expected: g.n(), got: phi.n() });
        }
        return Ok(mod_order(&g.poly(), &phi.components, phi.order()));
    }
    Ok(compose_series(g, phi)?.vanishing_order())
}

/// `v(Σ c_α |φ^α|^2)` degree by degree, stopping at the first nonzero degree.
pub fn mod_order(poly: &MPoly, comps: &[TruncSeries], cap: usize) -> Vanishing {
    let mut powers: Vec<Vec<TruncSeries>> = comps.iter().map(|c| vec![TruncSeries::constant(cone(), cap), c.truncate(cap)]).collect();
    let mut prods: Vec<(TruncSeries, &crate::exact::ExactScalar)> = Vec::with_capacity(poly.len());
    for (e, c) in poly.terms() {
        let mut m = TruncSeries::constant(cone(), cap);
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            while powers[i].len() <= k as usize {
                let next = powers[i].last().unwrap().mul(&powers[i][1]);
                powers[i].push(next);
            }
            m = m.mul(&powers[i][k as usize]);
        }
        prods.push((m, c));
    }
    for s in 0..=cap {
        for b in 0..=s / 2 {
            let a = s - b;
            let mut acc = czero();
            for (m, c) in &prods {
                let x = m.coeff(a);
                if is_czero(&x) {
                    continue;
                }
                let y = m.coeff(b);
                if is_czero(&y) {
                    continue;
                }
                acc += cmul_scalar(&(x * y.conj()), c);
            }
            if !acc.re.is_zero() || !acc.im.is_zero() {
                return Vanishing::Order(s);
            }
        }
    }
    Vanishing::ZeroUpTo(cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::{parse_expr, to_germ, Model};

    fn germ(text: &str, p: Vec<ExactComplex>) -> Germ {
        to_germ(&parse_expr(text, p.len()).unwrap(), p).unwrap()
    }

    #[test]
    fn diagonal_quartic_exponential_disc() {
        let g = germ("log|z1| + log|z2| + (log|z1| - log|z2|)^4", vec![cone(), cone()]);
        let phi = Disc::exponential(&[cone(), cone()], &[cone(), real(int(-1))], 8).unwrap();
        assert_eq!(compose_order(&g, &phi).unwrap(), Vanishing::Order(4));
    }

    #[test]
    fn tangential_mixed_sextic() {
        let h = Germ::pure(
            Model::Mod,
            MPoly::from_terms(2, [(vec![3, 0], int(1)), (vec![0, 3], int(1)), (vec![1, 1], int(1))]),
            vec![czero(); 2],
        );
        let phi = Disc::line(&[czero(), czero()], &[cone(), cone()], 8).unwrap();
        assert_eq!(compose_order(&h, &phi).unwrap(), Vanishing::Order(4));
        let via_series = compose_series(&h, &phi).unwrap().vanishing_order();
        assert_eq!(via_series, Vanishing::Order(4));
    }

    #[test]
    fn log_chart_rejects_vanishing_component() {
        let g = germ("log|z1|", vec![cone()]);
        let phi = Disc::line(&[czero()], &[cone()], 4).unwrap();
        assert_eq!(compose_order(&g, &phi), Err(Error::Chart(1)));
    }

    #[test]
    fn infinite_direction() {
        let g = germ("|z1|^2 + |z2|^2 - 1", vec![cone(), czero(), czero()]);
        let phi = Disc::line(&[cone(), czero(), czero()], &[czero(), czero(), cone()], 6).unwrap();
        assert_eq!(compose_order(&g, &phi).unwrap(), Vanishing::ZeroUpTo(6));
    }
}
