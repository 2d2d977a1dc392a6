//! Replacing the normal component of a disc by its base value.

use num_traits::Zero;

use super::compose::compose_order;
use super::disc::Disc;
use crate::error::{Error, Result};
use crate::exact::{TruncSeries, Vanishing};
use crate::geometry::LocalGerm;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub disc: Disc,
    pub v_before: u32,
    pub v_after: u32,
    pub order_before: Vanishing,
    pub order_after: Vanishing,
}

fn at_least(a: Vanishing, b: Vanishing) -> bool {
    match (a, b) {
        (Vanishing::ZeroUpTo(_), _) => true,
        (Vanishing::Order(_), Vanishing::ZeroUpTo(_)) => false,
        (Vanishing::Order(x), Vanishing::Order(y)) => x >= y,
    }
}

fn show(v: Vanishing) -> String {
    match v {
        Vanishing::Order(k) => k.to_string(),
        Vanishing::ZeroUpTo(k) => format!("> {k}"),
    }
}

/// For `r = c·log|z_j/p_j| + h` and a disc with `v(r∘φ) > v(φ)`, returns
/// `ψ` equal to `φ` except `ψ_j ≡ p_j`, with `v(ψ) = v(φ)` and
/// `v(r∘ψ) >= v(r∘φ)` checked on the truncations. `h` must have no
/// Log-linear part (see [`normalize_coords`](crate::geometry::normalize_coords)).
pub fn reduce_disc(local: &LocalGerm, phi: &Disc) -> Result<Reduction> {
    if local.ell.iter().any(|c| !c.is_zero()) {
        return Err(Error::NotApplicable("h has a Log-linear part; normalize coordinates first".into()));
    }
    let v_before = phi.v().ok_or_else(|| Error::Domain("constant disc".into()))?;
    let order_before = compose_order(&local.germ, phi)?;
    let above = match order_before {
        Vanishing::Order(k) => k as u32 > v_before,
        Vanishing::ZeroUpTo(_) => true,
    };
    if !above {
        return Err(Error::Precondition { composed: show(order_before), disc: v_before.to_string() });
    }
    let j = local.normal;
    let mut comps = phi.components.clone();
    comps[j] = TruncSeries::constant(phi.base[j].clone(), comps[j].order());
    let psi = Disc::new(comps)?;
    let v_after = psi.v().ok_or_else(|| Error::Domain("reduced disc is constant".into()))?;
    let order_after = compose_order(&local.germ, &psi)?;
    if v_after != v_before || !at_least(order_after, order_before) {
        return Err(Error::Domain(format!(
            "reduction broke its guarantees: v {v_before} -> {v_after}, order {} -> {}",
            show(order_before),
            show(order_after)
        )));
    }
    Ok(Reduction { disc: psi, v_before, v_after, order_before, order_after })
}
