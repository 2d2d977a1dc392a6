//! Composition orders in the no-cancellation regime, read off the support.

use num_traits::Signed;

use super::disc::Beta;
use crate::error::{Error, Result};
use crate::exact::MPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NewtonModel {
    /// Monomials `t^α` along components of orders `β`: weight `2⟨α, β⟩`.
    Mod,
    /// Monomials in `Re(a_j ζ^{β_j})`-type factors: weight `⟨α, β⟩`.
    LogPositive,
}

/// `min_α weight(α)` over the support; `None` when every monomial meets an
/// identically vanishing component. The constant term is ignored.
pub fn newton_order(poly: &MPoly, beta: &[Beta], model: NewtonModel) -> Result<Option<u32>> {
    if beta.len() != poly.nvars() {
        return Err(Error::DimensionMismatch { expected: poly.nvars(), got: beta.len() });
    }
    if poly.terms().any(|(_, c)| c.is_negative()) {
        return Err(Error::NotApplicable("negative coefficient in the support".into()));
    }
    let factor = match model {
        NewtonModel::Mod => 2,
        NewtonModel::LogPositive => 1,
    };
    let mut best: Option<u32> = None;
    for (e, _) in poly.terms() {
        if e.iter().all(|&k| k == 0) {
            continue;
        }
        let mut w = 0u32;
        let mut finite = true;
        for (&k, b) in e.iter().zip(beta) {
            if k == 0 {
                continue;
            }
            match b {
                Some(b) => w += k * b,
                None => {
                    finite = false;
                    break;
                }
            }
        }
        if finite {
            let w = factor * w;
            best = Some(best.map_or(w, |x| x.min(w)));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    fn mixed_sextic() -> MPoly {
        MPoly::from_terms(2, [(vec![3, 0], int(1)), (vec![0, 3], int(1)), (vec![1, 1], int(1))])
    }

    #[test]
    fn examples() {
        assert_eq!(newton_order(&mixed_sextic(), &[Some(1), None], NewtonModel::Mod).unwrap(), Some(6));
        assert_eq!(newton_order(&mixed_sextic(), &[Some(1), Some(1)], NewtonModel::Mod).unwrap(), Some(4));
        assert_eq!(newton_order(&mixed_sextic(), &[None, None], NewtonModel::Mod).unwrap(), None);
        assert_eq!(newton_order(&mixed_sextic(), &[Some(2), Some(1)], NewtonModel::LogPositive).unwrap(), Some(3));
    }

    #[test]
    fn negative_coefficient_rejected() {
        let p = MPoly::from_terms(1, [(vec![2], int(-1))]);
        assert!(matches!(newton_order(&p, &[Some(1)], NewtonModel::Mod), Err(Error::NotApplicable(_))));
    }
}
