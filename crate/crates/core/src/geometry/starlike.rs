//! Star-likeness of a tangential germ along complex rays through the point.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::scalar::*;
use crate::exact::{ExactScalar, UPoly};
use crate::germ::{Germ, VarKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarlikeVerdict {
    Starlike { directions: usize },
    /// `k_a' < 0` at `at`. For Log germs the ray is the diagonal and `at` is
    /// the value of `log t` where the slope is negative.
    NotStarlike { direction: Vec<ExactScalar>, at: ExactScalar },
}

impl StarlikeVerdict {
    pub fn is_starlike(&self) -> bool {
        matches!(self, StarlikeVerdict::Starlike { .. })
    }
}

/// Checks that `t ↦ h(t·a)` is nondecreasing on `[0, δ]` for sampled complex
/// directions `a` (Mod variables; `|z_m|^2 = t^2 |a_m|^2`), or, for germs in
/// Log variables only, that `s ↦ h(s, …, s)` is nondecreasing for
/// `s <= log δ`.
pub fn check_starlike(h: &Germ, directions: usize, delta: &ExactScalar, seed: u64) -> Result<StarlikeVerdict> {
    if !delta.is_positive() {
        return Err(Error::Domain("star-likeness radius must be positive".into()));
    }
    if !h.constant().is_zero() {
        return Err(Error::NotBased("h does not vanish at the point".into()));
    }
    let n = h.n();
    let poly = h.support();
    let used: Vec<usize> = (0..n).filter(|&i| poly.depends_on(i)).collect();
    let logs: Vec<usize> = used.iter().copied().filter(|&i| h.kind(i) == VarKind::Log).collect();
    for &i in &logs {
        let mut e = vec![0; n];
        e[i] = 1;
        if !poly.coeff(&e).is_zero() {
            return Err(Error::NotBased("h has a nonzero differential at the point".into()));
        }
    }
    if !logs.is_empty() {
        if logs.len() != used.len() {
            return Err(Error::OutOfScope("star-likeness of germs mixing Log and Mod variables".into()));
        }
        return Ok(log_limit_test(h, &logs, delta));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..directions.max(1) {
        let a: Vec<ExactScalar> = (0..n)
            .map(|i| {
                if !used.contains(&i) {
                    ExactScalar::zero()
                } else if k == 0 {
                    int(1)
                } else {
                    let mut v = rng.gen_range(1..=7i64);
                    if rng.gen_bool(0.5) {
                        v = -v;
                    }
                    rat(v, 7)
                }
            })
            .collect();
        // k_a(t) = Σ c_α Π (a_m^2 t^2)^{α_m}
        let mut coeffs: Vec<ExactScalar> = Vec::new();
        for (e, c) in poly.terms() {
            let deg = 2 * e.iter().sum::<u32>() as usize;
            let mut v = c.clone();
            for (m, &k) in e.iter().enumerate() {
                v *= num_traits::pow(&a[m] * &a[m], k as usize);
            }
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, ExactScalar::zero());
            }
            coeffs[deg] += v;
        }
        let slope = UPoly::new(coeffs).derivative();
        if let Some(t) = slope.negative_point(&ExactScalar::zero(), delta) {
            return Ok(StarlikeVerdict::NotStarlike { direction: a, at: t });
        }
    }
    Ok(StarlikeVerdict::Starlike { directions: directions.max(1) })
}

fn log_limit_test(h: &Germ, logs: &[usize], delta: &ExactScalar) -> StarlikeVerdict {
    let n = h.n();
    let mut coeffs: Vec<ExactScalar> = Vec::new();
    for (e, c) in h.support().terms() {
        let deg = e.iter().sum::<u32>() as usize;
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, ExactScalar::zero());
        }
        coeffs[deg] += c;
    }
    let slope = UPoly::new(coeffs).derivative();
    let direction: Vec<ExactScalar> = (0..n).map(|i| if logs.contains(&i) { int(1) } else { ExactScalar::zero() }).collect();
    // a rational upper bound for log δ
    let top = int(1) - int(1) / delta;
    let bound = slope.coeffs().iter().map(|c| (c / slope.lead()).abs()).fold(int(1), |a, b| a + b);
    let bottom = -(bound + top.abs() + int(1));
    if slope.eval(&bottom).is_negative() {
        return StarlikeVerdict::NotStarlike { direction, at: bottom };
    }
    match slope.negative_point(&bottom, &top) {
        Some(s) => StarlikeVerdict::NotStarlike { direction, at: s },
        None => StarlikeVerdict::Starlike { directions: 1 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::{parse_expr, to_germ};

    fn germ(text: &str, n: usize) -> Germ {
        to_germ(&parse_expr(text, n).unwrap(), vec![czero(); n]).unwrap()
    }

    #[test]
    fn monotone_germ_is_starlike() {
        let h = germ("|z1|^2*|z2|^2 + |z1|^6 + |z2|^6", 2);
        assert!(check_starlike(&h, 5, &int(1), 1).unwrap().is_starlike());
    }

    #[test]
    fn dipping_germ_is_not_starlike() {
        // |z|^4 (|z|^2 - 1/2)^2 along z = t: t^4 (t^2 - 1/2)^2 decreases on (1/2, 1/√2)
        let h = germ("|z1|^4*(|z1|^2 - 1/2)^2", 1);
        match check_starlike(&h, 3, &rat(3, 4), 0).unwrap() {
            StarlikeVerdict::NotStarlike { at, .. } => {
                assert!(at > rat(1, 2) && &at * &at < rat(1, 2));
            }
            v => panic!("expected a witness, got {v:?}"),
        }
        assert!(check_starlike(&h, 3, &rat(1, 2), 0).unwrap().is_starlike());
    }

    #[test]
    fn log_germs_use_limit_test() {
        assert!(!check_starlike(&germ("log|z1|^2", 1), 1, &rat(1, 2), 0).unwrap().is_starlike());
        assert!(check_starlike(&germ("log|z1|^3", 1), 1, &rat(1, 2), 0).unwrap().is_starlike());
    }

    #[test]
    fn differential_rejected() {
        assert!(matches!(check_starlike(&germ("log|z1|", 1), 1, &int(1), 0), Err(Error::NotBased(_))));
    }
}
