//! Sampled log-convexity and axis-monotonicity checks.

use num_traits::{Signed, Zero};

use super::DomainSpec;
use crate::error::{Error, Result};
use crate::exact::scalar::*;
use crate::exact::{ExactScalar, MPoly};
use crate::germ::model::hessian;
use crate::germ::Model;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConvexityVerdict {
    /// Quadratic LOG germ with a PSD constant Hessian: convex everywhere.
    Certified,
    /// Every sample passed.
    Sampled { samples: usize },
    /// A principal minor of the Hessian is negative at `point`.
    NotConvex { point: Vec<ExactScalar>, minor: Vec<usize>, value: ExactScalar },
}

impl ConvexityVerdict {
    pub fn is_convex(&self) -> bool {
        !matches!(self, ConvexityVerdict::NotConvex { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxisVerdict {
    Monotone { samples: usize },
    Violated { point: Vec<ExactScalar>, derivative: ExactScalar },
}

/// Exact determinant by fraction-free elimination over Q.
pub fn determinant(m: &[Vec<ExactScalar>]) -> ExactScalar {
    let n = m.len();
    let mut a: Vec<Vec<ExactScalar>> = m.to_vec();
    let mut det = int(1);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return ExactScalar::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    det
}

/// First negative principal minor (by size, then lexicographic index set), if any.
/// A symmetric matrix is PSD exactly when this returns `None`.
pub fn principal_minor_witness(m: &[Vec<ExactScalar>]) -> Option<(Vec<usize>, ExactScalar)> {
    let n = m.len();
    let mut subsets: Vec<Vec<usize>> = (1..(1usize << n)).map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect()).collect();
    subsets.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    for s in subsets {
        let sub: Vec<Vec<ExactScalar>> = s.iter().map(|&i| s.iter().map(|&j| m[i][j].clone()).collect()).collect();
        let d = determinant(&sub);
        if d.is_negative() {
            return Some((s, d));
        }
    }
    None
}

/// Hessian in `u = ½ log t` of a MOD polynomial, at a point `t > 0`.
fn mod_log_hessian(p: &MPoly, t: &[ExactScalar]) -> Vec<Vec<ExactScalar>> {
    let n = p.nvars();
    let mut h = vec![vec![ExactScalar::zero(); n]; n];
    for (e, c) in p.terms() {
        let mono = e.iter().zip(t).fold(c.clone(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize));
        for i in 0..n {
            for j in 0..n {
                h[i][j] += &mono * int(4 * e[i] as i64 * e[j] as i64);
            }
        }
    }
    h
}

/// Checks convexity of the defining function on the log image over the
/// domain's region. For LOG germs of degree at most 2 the answer is certified.
pub fn check_log_convex(d: &DomainSpec, samples: usize, seed: u64) -> ConvexityVerdict {
    let poly = d.rho.support();
    let n = d.n;
    if d.model() == Model::Log && poly.total_degree() <= 2 {
        let origin = vec![ExactScalar::zero(); n];
        let h = hessian(poly, &origin);
        return match principal_minor_witness(&h) {
            None => ConvexityVerdict::Certified,
            Some((minor, value)) => ConvexityVerdict::NotConvex { point: origin, minor, value },
        };
    }
    let points = d.region.sample_points(samples, seed);
    for x in &points {
        let h = match d.model() {
            Model::Log => hessian(poly, x),
            Model::Mod => {
                if x.iter().any(|v| !v.is_positive()) {
                    continue;
                }
                mod_log_hessian(poly, x)
            }
        };
        if let Some((minor, value)) = principal_minor_witness(&h) {
            return ConvexityVerdict::NotConvex { point: x.clone(), minor, value };
        }
    }
    ConvexityVerdict::Sampled { samples: points.len() }
}

/// Checks `∂ρ/∂t_j >= 0` at samples of the region (MOD germs; `j` zero-based).
pub fn check_axis_monotone(d: &DomainSpec, j: usize, samples: usize, seed: u64) -> Result<AxisVerdict> {
    if d.model() != Model::Mod {
        return Err(Error::NeedsModulusModel("check_axis_monotone"));
    }
    if j >= d.n {
        return Err(Error::UnknownCoordinate { index: j + 1, n: d.n });
    }
    let dj = d.rho.support().partial(j);
    let points = d.region.sample_points(samples, seed);
    for x in &points {
        let v = dj.eval(x);
        if v.is_negative() {
            return Ok(AxisVerdict::Violated { point: x.clone(), derivative: v });
        }
    }
    Ok(AxisVerdict::Monotone { samples: points.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Region;
    use crate::germ::{parse_expr, to_germ};

    fn domain(text: &str, n: usize, region: Option<Region>) -> DomainSpec {
        let g = to_germ(&parse_expr(text, n).unwrap(), vec![czero(); n]).unwrap();
        DomainSpec::new(g, region).unwrap()
    }

    #[test]
    fn determinant_small() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        assert_eq!(determinant(&m), int(5));
    }

    #[test]
    fn planted_non_convex_log() {
        let d = domain("log|z1| + log|z2| - (log|z1| - log|z2|)^2", 2, None);
        match check_log_convex(&d, 16, 0) {
            ConvexityVerdict::NotConvex { minor, value, .. } => {
                assert_eq!(minor, vec![0]);
                assert_eq!(value, int(-2));
            }
            v => panic!("expected not convex, got {v:?}"),
        }
    }

    #[test]
    fn diagonal_quartic_log_is_certified() {
        let d = domain("log|z1| + log|z2|^2", 2, None);
        assert_eq!(check_log_convex(&d, 16, 0), ConvexityVerdict::Certified);
    }

    #[test]
    fn positive_mod_is_convex() {
        let d = domain("|z1|^2 + |z2|^6 + |z2|^2*|z3|^4 - 1", 3, None);
        assert!(check_log_convex(&d, 64, 0).is_convex());
    }

    #[test]
    fn axis_violation_at_one() {
        let region = Region::new(vec![rat(1, 16)], vec![int(1)]).unwrap();
        let d = domain("|z1|^2 - |z1|^4", 1, Some(region));
        match check_axis_monotone(&d, 0, 16, 0).unwrap() {
            AxisVerdict::Violated { point, derivative } => {
                assert_eq!(point, vec![int(1)]);
                assert_eq!(derivative, int(-1));
            }
            v => panic!("expected violation, got {v:?}"),
        }
    }

    #[test]
    fn axis_needs_mod() {
        let d = domain("log|z1|", 1, None);
        assert!(check_axis_monotone(&d, 0, 4, 0).is_err());
    }
}
