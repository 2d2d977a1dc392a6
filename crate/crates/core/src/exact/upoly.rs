//! Univariate rational polynomials with exact real-root counting.
//!
//! Root questions are answered with Sturm sequences, so every decision here is
//! exact; isolating intervals have rational endpoints.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::scalar::*;

/// `Σ c_k x^k`, trimmed so the leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<ExactScalar>,
}

/// An end of a real interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    At(ExactScalar),
    PosInf,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> ExactScalar {
        self.coeffs.last().cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect())
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        UPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        UPoly::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).cloned().unwrap_or_default() - other.coeffs.get(k).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ExactScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        let lead = d.lead();
        let mut q = vec![ExactScalar::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() / &lead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&(ExactScalar::one() / l))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Removes repeated factors (keeps the same real roots).
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    fn sign_at(&self, b: &Bound) -> i32 {
        let sgn = |q: &ExactScalar| match q.cmp(&ExactScalar::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        };
        match b {
            Bound::At(x) => sgn(&self.eval(x)),
            Bound::PosInf => sgn(&self.lead()),
            Bound::NegInf => {
                let s = sgn(&self.lead());
                if self.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        }
    }

    fn sturm_chain(&self) -> Vec<UPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
            chain.push(r.scale(&-ExactScalar::one()));
        }
        chain.pop();
        chain
    }

    fn variations(chain: &[UPoly], b: &Bound) -> usize {
        let signs: Vec<i32> = chain.iter().map(|p| p.sign_at(b)).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &Bound, hi: &Bound) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let sf = self.squarefree();
        if sf.degree() == Some(0) {
            return 0;
        }
        let chain = sf.sturm_chain();
        Self::variations(&chain, lo).saturating_sub(Self::variations(&chain, hi))
    }

    /// Is there a real root in the closed interval `[lo, hi]`?
    pub fn has_root_in(&self, lo: &Bound, hi: &Bound) -> bool {
        if self.is_zero() {
            return true;
        }
        if let Bound::At(x) = lo {
            if self.eval(x).is_zero() {
                return true;
            }
        }
        self.count_roots(lo, hi) > 0
    }

    /// Disjoint isolating intervals `[a, b]` (rational) for the distinct real
    /// roots in `(lo, hi]`, sorted. Degenerate intervals mark exact rational roots.
    pub fn isolate_roots(&self, lo: &ExactScalar, hi: &ExactScalar) -> Vec<(ExactScalar, ExactScalar)> {
        let sf = self.squarefree();
        if sf.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let chain = sf.sturm_chain();
        let mut out = Vec::new();
        let mut stack = vec![(lo.clone(), hi.clone())];
        while let Some((a, b)) = stack.pop() {
            let n = Self::variations(&chain, &Bound::At(a.clone()))
                .saturating_sub(Self::variations(&chain, &Bound::At(b.clone())));
            if n == 0 {
                continue;
            }
            if sf.eval(&b).is_zero() {
                out.push((b.clone(), b.clone()));
                if n > 1 {
                    // shrink the right end off the root
                    let mut m = (&a + &b) / int(2);
                    while sf.eval(&m).is_zero() {
                        m = (&m + &b) / int(2);
                    }
                    let cnt = Self::variations(&chain, &Bound::At(m.clone()))
                        .saturating_sub(Self::variations(&chain, &Bound::At(b.clone())));
                    stack.push((a.clone(), m.clone()));
                    if cnt > 1 {
                        stack.push((m, b.clone()));
                    }
                }
                continue;
            }
            if n == 1 {
                out.push((a, b));
                continue;
            }
            let mut m = (&a + &b) / int(2);
            if sf.eval(&m).is_zero() {
                out.push((m.clone(), m.clone()));
                let eps = (&b - &a) / int(1 << 10);
                let mut l = &m - &eps;
                let mut r = &m + &eps;
                while sf.eval(&l).is_zero() || sf.eval(&r).is_zero() || sf.count_roots(&Bound::At(l.clone()), &Bound::At(r.clone())) > 1 {
                    l = (&l + &m) / int(2);
                    r = (&r + &m) / int(2);
                }
                stack.push((a, l));
                stack.push((r, b));
                continue;
            }
            if m == a {
                m = (&a + &b) / int(2);
            }
            stack.push((a, m.clone()));
            stack.push((m, b));
        }
        out.sort();
        out
    }

    /// A rational `x` in `(lo, hi]` with `p(x) < 0`, or `None` when `p >= 0` there.
    pub fn negative_point(&self, lo: &ExactScalar, hi: &ExactScalar) -> Option<ExactScalar> {
        if self.is_zero() {
            return None;
        }
        let sf = self.squarefree();
        let roots = self.isolate_roots(lo, hi);
        let mut probes = Vec::new();
        let mut prev = lo.clone();
        for (a, b) in roots {
            if a == b {
                probes.push((&prev + &a) / int(2));
                prev = a;
                continue;
            }
            let (mut a, mut b) = (a, b);
            while a <= prev || sf.eval(&a).is_zero() {
                let m = (&a + &b) / int(2);
                if sf.eval(&m).is_zero() {
                    a = m.clone();
                    b = m;
                    break;
                }
                if sf.count_roots(&Bound::At(a.clone()), &Bound::At(m.clone())) == 1 {
                    b = m;
                } else {
                    a = m;
                }
            }
            if a == b {
                probes.push((&prev + &a) / int(2));
            } else {
                probes.push(a);
            }
            prev = b;
        }
        if &prev != hi {
            probes.push(hi.clone());
        }
        probes.into_iter().find(|x| self.eval(x) < ExactScalar::zero())
    }

    /// A rational root in `[lo, hi]` if one exists (rational root theorem on the
    /// square-free part, restricted to small candidate sets).
    pub fn rational_root_in(&self, lo: &Bound, hi: &Bound) -> Option<ExactScalar> {
        use num_bigint::BigInt;
        if self.is_zero() {
            return Some(ExactScalar::zero());
        }
        let sf = self.squarefree();
        let deg = sf.degree()?;
        if deg == 0 {
            return None;
        }
        // clear denominators
        let lcm = sf.coeffs.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let ints: Vec<BigInt> = sf.coeffs.iter().map(|c| (c * ExactScalar::from_integer(lcm.clone())).to_integer()).collect();
        let in_range = |x: &ExactScalar| {
            let ok_lo = match lo {
                Bound::At(l) => x >= l,
                _ => true,
            };
            let ok_hi = match hi {
                Bound::At(h) => x <= h,
                _ => true,
            };
            ok_lo && ok_hi
        };
        if ints[0].is_zero() {
            let z = ExactScalar::zero();
            if in_range(&z) {
                return Some(z);
            }
        }
        let a0 = ints.iter().find(|c| !c.is_zero())?.abs();
        let an = ints[deg].abs();
        let divs = |n: &BigInt| -> Vec<BigInt> {
            let mut v = Vec::new();
            let mut d = BigInt::one();
            // candidate sets stay tiny for desk inputs; cap the search
            while &d * &d <= *n && d < BigInt::from(100_000) {
                if (n % &d).is_zero() {
                    v.push(d.clone());
                    v.push(n / &d);
                }
                d += 1;
            }
            v
        };
        let mut cands: Vec<ExactScalar> = Vec::new();
        for p in divs(&a0) {
            for q in divs(&an) {
                let x = ExactScalar::new(p.clone(), q.clone());
                cands.push(x.clone());
                cands.push(-x);
            }
        }
        cands.sort();
        cands.dedup();
        cands.into_iter().find(|x| in_range(x) && sf.eval(x).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> UPoly {
        UPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2) and (x-1)(x-3)
        let a = p(&[1, -1]).scale(&int(-1)).mul(&p(&[-1, 1])).mul(&p(&[2, 1]));
        let b = p(&[-1, 1]).mul(&p(&[-3, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(a.squarefree(), p(&[-1, 1]).mul(&p(&[2, 1])));
    }

    #[test]
    fn sturm_counts() {
        // x^2 - 2 has roots ±sqrt(2)
        let q = p(&[-2, 0, 1]);
        assert_eq!(q.count_roots(&Bound::NegInf, &Bound::PosInf), 2);
        assert_eq!(q.count_roots(&Bound::At(int(0)), &Bound::PosInf), 1);
        assert!(!q.has_root_in(&Bound::At(int(2)), &Bound::PosInf));
        assert_eq!(q.rational_root_in(&Bound::NegInf, &Bound::PosInf), None);
        let iv = q.isolate_roots(&int(-4), &int(4));
        assert_eq!(iv.len(), 2);
        for (a, b) in iv {
            assert!(q.eval(&a) * q.eval(&b) <= ExactScalar::zero());
        }
    }

    #[test]
    fn rational_roots() {
        let q = p(&[-1, 0, 4]); // 4x^2 - 1
        assert_eq!(q.rational_root_in(&Bound::At(int(0)), &Bound::PosInf), Some(rat(1, 2)));
        let iv = q.isolate_roots(&int(-1), &int(1));
        assert_eq!(iv.len(), 2);
    }

    #[test]
    fn negative_points() {
        // x^2 (x - 1/2)^2 is nonnegative; its derivative dips below zero on (1/4, 1/2)
        let k = UPoly::new(vec![int(0), int(0), rat(1, 4), int(-1), int(1)]);
        assert_eq!(k.negative_point(&int(0), &int(1)), None);
        let x = k.derivative().negative_point(&int(0), &int(1)).unwrap();
        assert!(x > rat(1, 4) && x < rat(1, 2));
        assert_eq!(p(&[-1, 0, 1]).negative_point(&int(1), &int(3)), None);
        assert!(p(&[0, 1, 0, -1]).negative_point(&int(0), &int(1)).is_none());
        assert!(p(&[0, -1]).negative_point(&int(0), &rat(1, 100)).is_some());
    }
}
