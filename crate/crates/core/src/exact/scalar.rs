//! Exact rational and Gaussian-rational scalars.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type ExactScalar = BigRational;

/// Gaussian rational `re + im*i`.
pub type ExactComplex = Complex<ExactScalar>;

pub fn rat(num: i64, den: i64) -> ExactScalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn cx(re: ExactScalar, im: ExactScalar) -> ExactComplex {
    Complex::new(re, im)
}

pub fn real(re: ExactScalar) -> ExactComplex {
    Complex::new(re, ExactScalar::zero())
}

pub fn czero() -> ExactComplex {
    Complex::new(ExactScalar::zero(), ExactScalar::zero())
}

pub fn cone() -> ExactComplex {
    Complex::new(ExactScalar::one(), ExactScalar::zero())
}

pub fn is_czero(z: &ExactComplex) -> bool {
    z.re.is_zero() && z.im.is_zero()
}

/// `|z|^2`, exact.
pub fn norm_sqr(z: &ExactComplex) -> ExactScalar {
    &z.re * &z.re + &z.im * &z.im
}

pub fn cmul_scalar(z: &ExactComplex, s: &ExactScalar) -> ExactComplex {
    Complex::new(&z.re * s, &z.im * s)
}

pub fn cinv(z: &ExactComplex) -> ExactComplex {
    let n = norm_sqr(z);
    Complex::new(&z.re / &n, -&z.im / &n)
}

pub fn to_f64(q: &ExactScalar) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn fmt_scalar(q: &ExactScalar) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical text form of a Gaussian rational: `a`, `bi`, `a+bi`, `a-bi`.
pub fn fmt_complex(z: &ExactComplex) -> String {
    if z.im.is_zero() {
        return fmt_scalar(&z.re);
    }
    let im = if z.im.abs().is_one() {
        if z.im.is_negative() { "-".to_string() } else { String::new() }
    } else {
        fmt_scalar(&z.im)
    };
    if z.re.is_zero() {
        format!("{im}i")
    } else if z.im.is_negative() {
        format!("{}{}i", fmt_scalar(&z.re), im)
    } else {
        format!("{}+{}i", fmt_scalar(&z.re), im)
    }
}

/// Parses `INT`, `INT/INT`, with optional sign.
pub fn parse_scalar(text: &str) -> Result<ExactScalar> {
    let t = text.trim();
    let bad = || Error::Domain(format!("invalid rational literal {t:?}"));
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Parses exact complex literals such as `3/5+4/5i`, `-i`, `1/2i`, `2`.
pub fn parse_complex(text: &str) -> Result<ExactComplex> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Domain(format!("invalid complex literal {t:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(real(parse_scalar(&t)?));
    };
    // split at the last sign that is not the leading one
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last();
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => ExactScalar::one(),
        "-" => -ExactScalar::one(),
        s => parse_scalar(s.strip_prefix('+').unwrap_or(s)).map_err(|_| bad())?,
    };
    Ok(cx(parse_scalar(re).map_err(|_| bad())?, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_form() {
        let q = rat(6, -4);
        assert_eq!(fmt_scalar(&q), "-3/2");
        assert!(q.denom() > &BigInt::zero());
        assert_eq!(fmt_scalar(&rat(0, 7)), "0");
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("3/5+4/5i").unwrap(), cx(rat(3, 5), rat(4, 5)));
        assert_eq!(parse_complex("-i").unwrap(), cx(int(0), int(-1)));
        assert_eq!(parse_complex("1/2i").unwrap(), cx(int(0), rat(1, 2)));
        assert_eq!(parse_complex("-2").unwrap(), real(int(-2)));
        assert_eq!(parse_complex("1-i").unwrap(), cx(int(1), int(-1)));
        assert!(parse_complex("abc").is_err());
        for s in ["3/5+4/5i", "-i", "1/2i", "-2", "1-i", "i"] {
            let z = parse_complex(s).unwrap();
            assert_eq!(parse_complex(&fmt_complex(&z)).unwrap(), z);
        }
    }

    #[test]
    fn conj_involution() {
        let z = cx(rat(1, 3), rat(-2, 7));
        assert_eq!(z.conj().conj(), z);
        assert_eq!(&z * cinv(&z), cone());
    }
}
