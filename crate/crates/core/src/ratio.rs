//! Arbitrary-precision integers and rationals plus small numeric helpers.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

pub fn rat_frac(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

/// Largest integer not exceeding `r`.
pub fn rat_floor(r: &Rat) -> Int {
    r.floor().to_integer()
}

pub fn rat_ceil(r: &Rat) -> Int {
    r.ceil().to_integer()
}

pub fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut num = Int::one();
    let mut den = Int::one();
    for j in 0..k {
        num *= Int::from(n - j);
        den *= Int::from(j + 1);
    }
    num / den
}

pub fn factorial(n: usize) -> Int {
    let mut r = Int::one();
    for j in 2..=n {
        r *= Int::from(j);
    }
    r
}

pub fn pow_int(base: &Int, exp: usize) -> Int {
    num::pow::pow(base.clone(), exp)
}

pub fn pow_rat(base: &Rat, exp: usize) -> Rat {
    num::pow::pow(base.clone(), exp)
}

/// Formats a rational as "p" or "p/q".
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses "p" or "p/q" (denominator positive after normalization).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num = Int::from_str(p.trim()).map_err(|e| Error::Parse(e.to_string()))?;
        let den = Int::from_str(q.trim()).map_err(|e| Error::Parse(e.to_string()))?;
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Rat::new(num, den))
    } else {
        let num = Int::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Rat::from_integer(num))
    }
}

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r.clone() * &r == *n {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["3", "-7", "1/2", "-22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(format_rat(&parse_rat("2/4").unwrap()), "1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(4, 0), int(1));
        assert_eq!(binomial(3, 5), int(0));
        assert_eq!(factorial(5), int(120));
    }

    #[test]
    fn sqrt_detection() {
        assert_eq!(exact_sqrt(&int(49)), Some(int(7)));
        assert_eq!(exact_sqrt(&int(2)), None);
        assert_eq!(exact_sqrt(&int(-4)), None);
    }
}
