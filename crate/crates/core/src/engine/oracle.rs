//! Brute-force lower bound for the variety type: enumerate polynomial discs
//! with lattice coefficients and keep the best ratio `v(ρ∘φ) / v(φ)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::compose::{compose_series, mod_order};
use super::disc::Disc;
use crate::error::{Error, Result};
use crate::exact::scalar::*;
use crate::exact::{ExactComplex, ExactScalar, TruncSeries, Vanishing};
use crate::germ::{Germ, VarKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticePreset {
    /// `{0, ±1, ±2, ±1/2, ±i, ±i/2}`
    Default,
    /// `{0, ±1, ±1/2}`
    Small,
    /// `{0, 1}`
    Binary,
}

impl LatticePreset {
    pub fn values(self) -> Vec<ExactComplex> {
        let r = |n, d| real(rat(n, d));
        let i = |n, d| cx(int(0), rat(n, d));
        match self {
            LatticePreset::Default => vec![czero(), r(1, 1), r(-1, 1), r(2, 1), r(-2, 1), r(1, 2), r(-1, 2), i(1, 1), i(-1, 1), i(1, 2), i(-1, 2)],
            LatticePreset::Small => vec![czero(), r(1, 1), r(-1, 1), r(1, 2), r(-1, 2)],
            LatticePreset::Binary => vec![czero(), r(1, 1)],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LatticePreset::Default => "default",
            LatticePreset::Small => "small",
            LatticePreset::Binary => "binary",
        }
    }
}

impl FromStr for LatticePreset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(LatticePreset::Default),
            "small" => Ok(LatticePreset::Small),
            "binary" => Ok(LatticePreset::Binary),
            other => Err(Error::Domain(format!("unknown lattice preset `{other}` (expected default, small or binary)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_deg: usize,
    pub lattice: Vec<ExactComplex>,
    pub budget: usize,
    /// Largest ratio examined: a disc with `v(φ) = m` is composed through order `cap·m`.
    pub cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_deg: 3, lattice: LatticePreset::Default.values(), budget: 2_000_000, cap: 26 }
    }
}

impl OracleConfig {
    pub fn new(max_deg: usize, preset: LatticePreset, budget: usize) -> Self {
        OracleConfig { max_deg, lattice: preset.values(), budget, ..Self::default() }
    }
}

/// Best ratio found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Score {
    Ratio(ExactScalar),
    /// `ρ∘φ` vanished through order `cap·v(φ)`: the ratio exceeds `cap`.
    Unbounded { cap: usize },
}

impl Score {
    fn beats(&self, other: &Score) -> bool {
        match (self, other) {
            (Score::Unbounded { .. }, Score::Unbounded { .. }) => false,
            (Score::Unbounded { .. }, _) => true,
            (_, Score::Unbounded { .. }) => false,
            (Score::Ratio(a), Score::Ratio(b)) => a > b,
        }
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Score::Ratio(r) => f.write_str(&fmt_scalar(r)),
            Score::Unbounded { cap } => write!(f, "> {cap}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub best: Option<Score>,
    pub witness: Option<Disc>,
    pub evaluated: usize,
    /// The budget ran out before the enumeration did.
    pub exhausted: bool,
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// The `rank`-th candidate: discs ordered by number of nonzero coefficients,
/// then lexicographically by slot set and by values.
struct Enumeration {
    slots: usize,
    values: usize,
}

impl Enumeration {
    fn total(&self) -> u128 {
        (1..=self.slots).map(|k| binom(self.slots, k).saturating_mul((self.values as u128).saturating_pow(k as u32))).fold(0u128, |a, b| a.saturating_add(b))
    }

    fn unrank(&self, mut rank: u128) -> Vec<(usize, usize)> {
        for k in 1..=self.slots {
            let per = (self.values as u128).pow(k as u32);
            let block = binom(self.slots, k) * per;
            if rank >= block {
                rank -= block;
                continue;
            }
            let mut combo_rank = rank / per;
            let mut val_rank = rank % per;
            let mut slots = Vec::with_capacity(k);
            let mut next = 0;
            for left in (1..=k).rev() {
                let mut c = next;
                loop {
                    let count = binom(self.slots - c - 1, left - 1);
                    if combo_rank < count {
                        break;
                    }
                    combo_rank -= count;
                    c += 1;
                }
                slots.push(c);
                next = c + 1;
            }
            let mut vals = vec![0; k];
            for v in vals.iter_mut().rev() {
                *v = (val_rank % self.values as u128) as usize;
                val_rank /= self.values as u128;
            }
            return slots.into_iter().zip(vals).collect();
        }
        Vec::new()
    }
}

const CHUNK: usize = 256;

/// Searches polynomial discs `p + Σ_{k=1}^{max_deg} c_k ζ^k` with coefficients
/// in the lattice. The result is a lower bound for the variety type at `p`.
pub fn jet_oracle(g: &Germ, p: &[ExactComplex], cfg: &OracleConfig) -> Result<OracleResult> {
    let n = g.n();
    if p.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: p.len() });
    }
    if cfg.max_deg == 0 {
        return Err(Error::Domain("max_deg must be at least 1".into()));
    }
    let nonzero: Vec<ExactComplex> = cfg.lattice.iter().filter(|c| !is_czero(c)).cloned().collect();
    if nonzero.is_empty() {
        return Err(Error::Domain("lattice has no nonzero value".into()));
    }
    let g = g.clone().with_base_point(p.to_vec());
    let en = Enumeration { slots: n * cfg.max_deg, values: nonzero.len() };
    let total = en.total();
    let limit = total.min(cfg.budget as u128) as usize;
    let all_mod = g.kinds().iter().all(|&k| k == VarKind::Mod);
    let poly = g.poly();

    let build = |rank: usize, order: usize| -> Disc {
        let mut coeffs = vec![vec![czero(); cfg.max_deg]; n];
        for (slot, v) in en.unrank(rank as u128) {
            coeffs[slot / cfg.max_deg][slot % cfg.max_deg] = nonzero[v].clone();
        }
        Disc::polynomial(p, &coeffs, order).expect("dimensions match")
    };
    let order_at = |disc: &Disc, cap: usize| -> Result<Vanishing> {
        if all_mod {
            let comps: Vec<TruncSeries> = disc.components.iter().map(|c| TruncSeries::new(c.coeffs().to_vec(), cap)).collect();
            Ok(mod_order(&poly, &comps, cap))
        } else {
            compose_series(&g, &disc.with_order(cap)).map(|h| h.vanishing_order())
        }
    };
    let evaluate = |rank: usize| -> Result<Option<Score>> {
        let disc = build(rank, cfg.cap);
        let Some(v) = disc.v() else { return Ok(None) };
        let v = v as usize;
        let mut van = Vanishing::ZeroUpTo(0);
        for step in [2, 8, cfg.cap] {
            van = order_at(&disc, step.min(cfg.cap) * v)?;
            if matches!(van, Vanishing::Order(_)) || step >= cfg.cap {
                break;
            }
        }
        Ok(Some(match van {
            Vanishing::Order(k) => Score::Ratio(rat(k as i64, v as i64)),
            Vanishing::ZeroUpTo(_) => Score::Unbounded { cap: cfg.cap },
        }))
    };

    let chunks = limit.div_ceil(CHUNK);
    let best = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<Option<(Score, usize)>> {
            let mut best: Option<(Score, usize)> = None;
            for rank in c * CHUNK..((c + 1) * CHUNK).min(limit) {
                if let Some(s) = evaluate(rank)? {
                    if best.as_ref().is_none_or(|(b, _)| s.beats(b)) {
                        best = Some((s, rank));
                    }
                }
            }
            Ok(best)
        })
        .try_reduce(
            || None,
            |a, b| {
                Ok(match (a, b) {
                    (None, x) | (x, None) => x,
                    (Some(a), Some(b)) => {
                        if b.0.beats(&a.0) || (!a.0.beats(&b.0) && b.1 < a.1) {
                            Some(b)
                        } else {
                            Some(a)
                        }
                    }
                })
            },
        )?;
    let (best, witness) = match best {
        Some((s, rank)) => (Some(s), Some(build(rank, cfg.cap))),
        None => (None, None),
    };
    Ok(OracleResult { best, witness, evaluated: limit, exhausted: total > limit as u128 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::{parse_expr, to_germ};

    fn germ(text: &str, n: usize) -> Germ {
        to_germ(&parse_expr(text, n).unwrap(), vec![czero(); n]).unwrap()
    }

    #[test]
    fn unranking_is_ordered() {
        let en = Enumeration { slots: 3, values: 2 };
        assert_eq!(en.total(), 26);
        assert_eq!(en.unrank(0), vec![(0, 0)]);
        assert_eq!(en.unrank(1), vec![(0, 1)]);
        assert_eq!(en.unrank(6), vec![(0, 0), (1, 0)]);
        assert_eq!(en.unrank(25), vec![(0, 1), (1, 1), (2, 1)]);
    }

    #[test]
    fn mixed_sextic_lower_bound() {
        let g = germ("|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1", 3);
        let cfg = OracleConfig { max_deg: 1, lattice: LatticePreset::Binary.values(), budget: 1000, cap: 12 };
        let r = jet_oracle(&g, &[cone(), czero(), czero()], &cfg).unwrap();
        assert_eq!(r.best, Some(Score::Ratio(int(6))));
        assert_eq!(r.witness.unwrap().to_string(), "(1, ζ, 0)");
        assert!(!r.exhausted);
    }

    #[test]
    fn diagonal_quartic_lower_bound() {
        let g = germ("log|z1| + log|z2| + (log|z1| - log|z2|)^4", 2);
        let cfg = OracleConfig { max_deg: 2, lattice: LatticePreset::Small.values(), budget: 10_000, cap: 8 };
        let r = jet_oracle(&g, &[cone(), cone()], &cfg).unwrap();
        assert_eq!(r.best, Some(Score::Ratio(int(4))));
    }

    #[test]
    fn sphere_is_two() {
        let g = germ("|z1|^2 + |z2|^2 - 1", 2);
        let r = jet_oracle(&g, &[cone(), czero()], &OracleConfig::new(2, LatticePreset::Small, 500)).unwrap();
        assert_eq!(r.best, Some(Score::Ratio(int(2))));
    }
}
