//! Local defining germ `r = c·u_j + h` at a boundary point, and the monomial
//! change of coordinates that absorbs the Log-linear part of `h`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::convex::principal_minor_witness;
use super::{BoundaryPoint, DomainSpec, Region};
use crate::error::{Error, Result};
use crate::exact::scalar::*;
use crate::exact::{ExactComplex, ExactScalar, MPoly};
use crate::germ::model::{gradient, hessian};
use crate::germ::{Germ, Model, VarKind};

/// Which of the three local normal-form properties hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalFlags {
    /// `h` vanishes at the point together with its differential.
    pub first_order: bool,
    /// The normal direction is carried by `u_j` alone.
    pub normal_only: bool,
    /// Hessian of `h` in the Log variables at the point is PSD (`None` without Log variables).
    pub convex: Option<bool>,
}

/// The germ `r = c·u_j + h` near `p`, where `h` does not involve `u_j`.
///
/// Nonzero coordinates of `p` use Log charts `u_i = log|z_i| - log|p_i|`, zero
/// coordinates use `t_i = |z_i|^2`. `h` is a weighted truncation (Log weight 1,
/// Mod weight 2) at `trunc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalGerm {
    pub germ: Germ,
    /// The domain's defining function this germ was derived from.
    pub domain: Germ,
    /// The boundary point in the domain's coordinates.
    pub domain_point: Vec<ExactComplex>,
    /// False once a monomial coordinate change has been applied.
    pub original_chart: bool,
    pub normal: usize,
    pub normal_coeff: ExactScalar,
    pub h: MPoly,
    /// Coefficients of the Log-linear part of `h`.
    pub ell: Vec<ExactScalar>,
    /// `h` minus its Log-linear part.
    pub h_norm: MPoly,
    pub trunc: u32,
    pub flags: LocalFlags,
}

impl LocalGerm {
    pub fn n(&self) -> usize {
        self.germ.n()
    }

    pub fn kinds(&self) -> &[VarKind] {
        self.germ.kinds()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.germ.weights()
    }

    pub fn base_point(&self) -> &[ExactComplex] {
        self.germ.base_point()
    }

    /// Tangential Log variables: nonzero coordinates other than the normal one.
    pub fn log_vars(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| i != self.normal && self.kinds()[i] == VarKind::Log).collect()
    }

    /// Coordinates where `p` vanishes.
    pub fn mod_vars(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.kinds()[i] == VarKind::Mod).collect()
    }

    /// The linear form `c·e_j + ℓ` on Log variables.
    pub fn lambda(&self) -> Vec<ExactScalar> {
        let mut l = self.ell.clone();
        l[self.normal] = self.normal_coeff.clone();
        l
    }

    fn assemble(domain: Germ, kinds: Vec<VarKind>, p: Vec<ExactComplex>, normal: usize, c: ExactScalar, h: MPoly, trunc: u32) -> Self {
        let n = kinds.len();
        let mut ell = vec![ExactScalar::zero(); n];
        let mut h_norm = h.clone();
        for i in 0..n {
            if i == normal || kinds[i] != VarKind::Log {
                continue;
            }
            let mut e = vec![0; n];
            e[i] = 1;
            ell[i] = h.coeff(&e);
            if !ell[i].is_zero() {
                h_norm.add_term(e, -ell[i].clone());
            }
        }
        let logs: Vec<usize> = (0..n).filter(|&i| i != normal && kinds[i] == VarKind::Log).collect();
        let convex = if logs.is_empty() {
            None
        } else {
            let hs = hessian(&h, &vec![ExactScalar::zero(); n]);
            let sub: Vec<Vec<ExactScalar>> = logs.iter().map(|&a| logs.iter().map(|&b| hs[a][b].clone()).collect()).collect();
            Some(principal_minor_witness(&sub).is_none())
        };
        let flags = LocalFlags {
            first_order: h.constant_term().is_zero() && ell.iter().all(|x| x.is_zero()),
            normal_only: true,
            convex,
        };
        let mut r = h.clone();
        let mut ej = vec![0; n];
        ej[normal] = 1;
        r.add_term(ej, c.clone());
        let germ = Germ::new(kinds, r, p).with_normal_index(normal);
        let domain_point = germ.base_point().to_vec();
        LocalGerm { germ, domain, domain_point, original_chart: true, normal, normal_coeff: c, h, ell, h_norm, trunc, flags }
    }
}

/// `Σ_{k<=trunc} (a·x_i)^k / k!`.
fn exp_series(i: usize, n: usize, a: &ExactScalar, trunc: u32) -> MPoly {
    let mut out = MPoly::zero(n);
    let mut coeff = int(1);
    for k in 0..=trunc {
        let mut e = vec![0; n];
        e[i] = k;
        out.add_term(e, coeff.clone());
        coeff = coeff * a / int(k as i64 + 1);
    }
    out
}

/// `log(1 + y)` for a series `y` without constant term.
fn log1p_series(y: &MPoly, weights: &[u32], trunc: u32) -> MPoly {
    let n = y.nvars();
    let mut out = MPoly::zero(n);
    let mut pw = y.clone();
    for k in 1..=trunc {
        if pw.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { int(1) } else { int(-1) };
        out = out.add(&pw.scale(&(sign / int(k as i64))));
        pw = pw.mul_trunc(y, weights, trunc);
    }
    out
}

/// Solves `Σ_k A_k Y^k = 0` for `Y` with `Y(0) = 0`, given `A_0(0) = 0`, `A_1(0) != 0`.
fn solve_implicit(parts: &[MPoly], weights: &[u32], trunc: u32) -> MPoly {
    let n = parts[0].nvars();
    let c1 = parts[1].constant_term();
    let mut shifted: Vec<MPoly> = parts.to_vec();
    shifted[1] = shifted[1].sub(&MPoly::constant(c1.clone(), n));
    let inv = -(int(1) / c1);
    let mut y = MPoly::zero(n);
    for _ in 0..=trunc + 1 {
        let mut acc = MPoly::zero(n);
        for part in shifted.iter().rev() {
            acc = acc.mul_trunc(&y, weights, trunc).add(part);
        }
        let next = acc.truncate(weights, trunc).scale(&inv);
        if next == y {
            break;
        }
        y = next;
    }
    y
}

/// Local germ of `ρ` at the boundary point `bp`, truncated at weighted degree `trunc`.
pub fn local_germ_at(d: &DomainSpec, bp: &BoundaryPoint, trunc: u32) -> Result<LocalGerm> {
    let n = d.n;
    let rho = d.rho.poly();
    let kinds: Vec<VarKind> = (0..n).map(|i| if bp.is_zero(i) { VarKind::Mod } else { VarKind::Log }).collect();
    let weights: Vec<u32> = kinds.iter().map(|k| k.weight()).collect();
    let model = d.model();
    let (grad, scores): (Vec<ExactScalar>, Vec<ExactScalar>) = match model {
        Model::Mod => {
            let tau: Vec<ExactScalar> = bp.p.iter().map(norm_sqr).collect();
            let g = gradient(&rho, &tau);
            let s = g.iter().zip(&tau).map(|(a, b)| (a * b).abs()).collect();
            (g, s)
        }
        Model::Log => {
            let g = gradient(&rho, &vec![ExactScalar::zero(); n]);
            let s = g.iter().map(|a| a.abs()).collect();
            (g, s)
        }
    };
    let mut normal = None;
    for i in (0..n).filter(|&i| !bp.is_zero(i)) {
        if scores[i].is_zero() {
            continue;
        }
        if normal.is_none_or(|j: usize| scores[i] > scores[j]) {
            normal = Some(i);
        }
    }
    let j = normal.ok_or(Error::DegenerateBoundary)?;
    let sign = if grad[j].is_positive() { int(1) } else { int(-1) };

    let r = match model {
        Model::Log => rho.clone(),
        Model::Mod => {
            let images: Vec<MPoly> = (0..n)
                .map(|i| {
                    let tau = norm_sqr(&bp.p[i]);
                    if i == j {
                        let mut e = vec![0; n];
                        e[j] = 1;
                        MPoly::from_terms(n, [(vec![0; n], tau.clone()), (e, tau)])
                    } else if kinds[i] == VarKind::Log {
                        exp_series(i, n, &int(2), trunc).scale(&tau)
                    } else {
                        MPoly::var(i, n)
                    }
                })
                .collect();
            rho.compose(&images, &weights, trunc)
        }
    };
    let parts = r.split_var(j);
    let y = solve_implicit(&parts, &weights, trunc);
    let u = match model {
        Model::Log => y,
        Model::Mod => log1p_series(&y, &weights, trunc).scale(&rat(1, 2)),
    };
    let h = u.scale(&-sign.clone());
    Ok(LocalGerm::assemble(d.rho.clone(), kinds, bp.p.clone(), j, sign, h, trunc))
}

/// Monomial map `z ↦ (…, Π z_i^{α_i}, …)` replacing coordinate `normal`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phi {
    pub normal: usize,
    pub alpha: Vec<i64>,
}

impl Phi {
    pub fn from_alpha(normal: usize, alpha: Vec<i64>) -> Self {
        Phi { normal, alpha }
    }

    pub fn is_identity(&self) -> bool {
        self.alpha.iter().enumerate().all(|(i, &a)| a == if i == self.normal { 1 } else { 0 })
    }

    pub fn apply(&self, z: &[ExactComplex]) -> Result<Vec<ExactComplex>> {
        let mut out = z.to_vec();
        let mut w = cone();
        for (i, &a) in self.alpha.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if a < 0 && is_czero(&z[i]) {
                return Err(Error::Domain(format!("monomial map has a pole at z{}", i + 1)));
            }
            let base = if a < 0 { cinv(&z[i]) } else { z[i].clone() };
            for _ in 0..a.unsigned_abs() {
                w = &w * &base;
            }
        }
        out[self.normal] = w;
        Ok(out)
    }
}

/// Moves the normal direction onto a single coordinate: returns `Φ` and the
/// germ `u'_j + D·h_norm` in the new coordinates, based at `Φ(p)`.
pub fn normalize_coords(local: &LocalGerm) -> Result<(Phi, LocalGerm)> {
    let lambda = local.lambda();
    let den = lambda.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let nums: Vec<BigInt> = lambda.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    let g = nums.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let alpha: Vec<i64> = nums
        .iter()
        .map(|v| i64::try_from(v / &g).map_err(|_| Error::Domain("monomial exponent too large".into())))
        .collect::<Result<_>>()?;
    let scale = ExactScalar::new(den, g);
    let phi = Phi { normal: local.normal, alpha };
    let p = phi.apply(local.base_point())?;
    let h = local.h_norm.scale(&scale);
    let mut out = LocalGerm::assemble(local.domain.clone(), local.kinds().to_vec(), p, local.normal, int(1), h, local.trunc);
    out.domain_point = local.domain_point.clone();
    out.original_chart = false;
    Ok((phi, out))
}

/// Samples `h(u, t) >= h(u, 0)` near the point; returns a violating sample.
pub fn check_tail_inequality(local: &LocalGerm, samples: usize, seed: u64) -> Option<Vec<ExactScalar>> {
    let n = local.n();
    let mods = local.mod_vars();
    if mods.is_empty() {
        return None;
    }
    let lo: Vec<ExactScalar> = (0..n).map(|i| if local.kinds()[i] == VarKind::Mod { ExactScalar::zero() } else { rat(-1, 8) }).collect();
    let hi = vec![rat(1, 8); n];
    let region = Region { lo, hi };
    for mut x in region.sample_points(samples, seed) {
        x[local.normal] = ExactScalar::zero();
        let mut base = x.clone();
        for &m in &mods {
            base[m] = ExactScalar::zero();
        }
        if local.h.eval(&x) < local.h.eval(&base) {
            return Some(x);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::{parse_expr, to_germ};

    fn setup(text: &str, p: Vec<ExactComplex>) -> LocalGerm {
        let n = p.len();
        let g = to_germ(&parse_expr(text, n).unwrap(), p.clone()).unwrap();
        let d = DomainSpec::new(g, None).unwrap();
        let bp = BoundaryPoint::new(&d, p).unwrap();
        local_germ_at(&d, &bp, 8).unwrap()
    }

    #[test]
    fn sphere_leading_term() {
        let l = setup("|z1|^2 + |z2|^2 - 1", vec![cone(), czero()]);
        assert_eq!(l.normal, 0);
        assert_eq!(l.normal_coeff, int(1));
        assert_eq!(l.h.coeff(&[0, 1]), rat(1, 2));
        assert_eq!(l.h.coeff(&[0, 2]), rat(1, 4));
        assert!(l.flags.first_order);
    }

    #[test]
    fn mixed_sextic_leading_terms() {
        let l = setup("|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1", vec![cone(), czero(), czero()]);
        assert_eq!(l.h.coeff(&[0, 1, 1]), rat(1, 2));
        assert_eq!(l.h.coeff(&[0, 3, 0]), rat(1, 2));
        assert_eq!(l.h.coeff(&[0, 0, 3]), rat(1, 2));
        assert_eq!(l.h.coeff(&[0, 2, 2]), rat(1, 4));
        assert_eq!(l.h.truncate(&l.weights(), 3).len(), 0);
    }

    #[test]
    fn log_model_is_exact() {
        let l = setup("log|z1| + log|z2|^2", vec![cone(), cone()]);
        assert_eq!(l.normal, 0);
        assert_eq!(l.h, MPoly::monomial(vec![0, 2], int(1)));
        assert!(l.flags.first_order);
        assert_eq!(l.flags.convex, Some(true));
    }

    #[test]
    fn tilted_normal_is_straightened() {
        let l = setup("|z1|^2 + |z2|^2 - 2", vec![cone(), cone()]);
        assert_eq!(l.normal, 0);
        assert!(!l.flags.first_order);
        assert_eq!(l.ell[1], int(1));
        let (phi, out) = normalize_coords(&l).unwrap();
        assert_eq!(phi.alpha, vec![1, 1]);
        assert!(out.flags.first_order);
        assert!(out.h.is_zero() || out.h.truncate(&out.weights(), 1).is_zero());
    }

    #[test]
    fn phi_example() {
        let phi = Phi::from_alpha(0, vec![1, 1, 0]);
        let z = vec![real(int(2)), real(int(3)), real(int(5))];
        assert_eq!(phi.apply(&z).unwrap(), vec![real(int(6)), real(int(3)), real(int(5))]);
    }

    #[test]
    fn single_nonzero_coordinate_gives_identity() {
        let l = setup("|z1|^2 + |z2|^4 - 1", vec![cone(), czero()]);
        let (phi, _) = normalize_coords(&l).unwrap();
        assert!(phi.is_identity());
    }

    #[test]
    fn tail_inequality_holds_for_positive_germ() {
        let l = setup("|z1|^2 + |z2|^4 + |z3|^2*|z2|^2 + |z3|^2 - 2", vec![cone(), czero(), cone()]);
        assert_eq!(check_tail_inequality(&l, 32, 0), None);
    }
}
