//! Reinhardt-domain geometry: log-convexity and axis checks, the local
//! defining germ `c·log|z_j| + h` at a boundary point, star-likeness, and the
//! monomial coordinate change that moves the normal onto one coordinate.

pub mod convex;
pub mod local;
pub mod starlike;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::scalar::*;
use crate::exact::{ExactComplex, ExactScalar};
use crate::germ::{Germ, Model};

pub use convex::{check_axis_monotone, check_log_convex, principal_minor_witness, AxisVerdict, ConvexityVerdict};
pub use local::{check_tail_inequality, local_germ_at, normalize_coords, LocalGerm, LocalFlags, Phi};
pub use starlike::{check_starlike, StarlikeVerdict};

/// Axis-aligned box in the germ's variable space (`t` for MOD, `u` for LOG).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub lo: Vec<ExactScalar>,
    pub hi: Vec<ExactScalar>,
}

impl Region {
    pub fn new(lo: Vec<ExactScalar>, hi: Vec<ExactScalar>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), got: hi.len() });
        }
        if lo.is_empty() || lo.iter().zip(&hi).any(|(a, b)| a >= b) {
            return Err(Error::EmptyRegion);
        }
        Ok(Region { lo, hi })
    }

    /// `[1/16, 1]^n` in `t` for MOD germs, `[-1, 1]^n` in `u` for LOG germs.
    pub fn default_for(model: Model, n: usize) -> Self {
        match model {
            Model::Mod => Region { lo: vec![rat(1, 16); n], hi: vec![int(1); n] },
            Model::Log => Region { lo: vec![int(-1); n], hi: vec![int(1); n] },
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    /// Radius proxy: half the smallest side.
    pub fn radius(&self) -> ExactScalar {
        self.lo.iter().zip(&self.hi).map(|(a, b)| (b - a) / int(2)).min().unwrap_or_else(ExactScalar::zero)
    }

    /// Box vertices (when `n <= 4`) followed by Halton points, `count` in total.
    pub fn sample_points(&self, count: usize, seed: u64) -> Vec<Vec<ExactScalar>> {
        let n = self.dim();
        let mut out = Vec::with_capacity(count);
        if n <= 4 {
            for mask in 0..(1usize << n) {
                if out.len() == count {
                    break;
                }
                out.push((0..n).map(|i| if mask >> i & 1 == 1 { self.hi[i].clone() } else { self.lo[i].clone() }).collect());
            }
        }
        let mut idx = 1 + seed;
        while out.len() < count {
            let x: Vec<ExactScalar> = (0..n)
                .map(|i| {
                    let h = halton(idx, PRIMES[i % PRIMES.len()]);
                    &self.lo[i] + h * (&self.hi[i] - &self.lo[i])
                })
                .collect();
            out.push(x);
            idx += 1;
        }
        out
    }
}

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Radical-inverse of `index` in `base`, exactly as a rational in `[0, 1)`.
pub fn halton(mut index: u64, base: u64) -> ExactScalar {
    let mut f = rat(1, base as i64);
    let mut r = ExactScalar::zero();
    let b = rat(1, base as i64);
    while index > 0 {
        r += &f * int((index % base) as i64);
        index /= base;
        f *= &b;
    }
    r
}

/// `Ω = {ρ < 0}` with the box over which sampled checks run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainSpec {
    pub n: usize,
    pub rho: Germ,
    pub region: Region,
}

impl DomainSpec {
    pub fn new(rho: Germ, region: Option<Region>) -> Result<Self> {
        let model = rho.model().ok_or_else(|| Error::Domain("domain germ must be a pure LOG or MOD model".into()))?;
        if rho.support().is_zero() {
            return Err(Error::Domain("empty support".into()));
        }
        let n = rho.n();
        let region = region.unwrap_or_else(|| Region::default_for(model, n));
        if region.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: region.dim() });
        }
        Ok(DomainSpec { n, rho, region })
    }

    pub fn model(&self) -> Model {
        self.rho.model().expect("checked at construction")
    }
}

/// A point `p` with `ρ(p) = 0`, `p != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPoint {
    pub p: Vec<ExactComplex>,
    /// Indices with `p_j = 0`.
    pub zero_set: Vec<usize>,
    /// Number of nonzero coordinates.
    pub k: usize,
}

impl BoundaryPoint {
    pub fn new(d: &DomainSpec, p: Vec<ExactComplex>) -> Result<Self> {
        if p.len() != d.n {
            return Err(Error::DimensionMismatch { expected: d.n, got: p.len() });
        }
        let zero_set: Vec<usize> = (0..d.n).filter(|&j| is_czero(&p[j])).collect();
        if zero_set.len() == d.n {
            return Err(Error::OriginPoint);
        }
        let value = match d.model() {
            Model::Mod => d.rho.eval(&p.iter().map(norm_sqr).collect::<Vec<_>>()),
            Model::Log => {
                if let Some(&j) = zero_set.first() {
                    return Err(Error::Chart(j + 1));
                }
                if let Some(j) = (0..d.n).find(|&j| norm_sqr(&p[j]) != int(1)) {
                    return Err(Error::LogChartModulus(j + 1));
                }
                d.rho.constant().clone()
            }
        };
        if !value.is_zero() {
            return Err(Error::NotOnBoundary(fmt_scalar(&value)));
        }
        let k = d.n - zero_set.len();
        Ok(BoundaryPoint { p, zero_set, k })
    }

    pub fn is_zero(&self, j: usize) -> bool {
        self.zero_set.contains(&j)
    }
}
