//! Exact rational scalars.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};

/// Rationals in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || AlgebraError::BadRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let p: BigInt = num.parse().map_err(|_| bad())?;
    let q: BigInt = den.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// n (n-1) ... (n-k+1)
pub fn falling(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Writes `c` as the coefficient in front of a monomial: `""` for 1, `"-"` for -1.
pub(crate) fn coeff_prefix(c: &Rational) -> String {
    if c.is_one() {
        String::new()
    } else if (-c).is_one() {
        "-".to_string()
    } else {
        format!("{} ", c)
    }
}

pub(crate) fn is_negative(c: &Rational) -> bool {
    c.is_negative()
}

/// Joins `(coefficient, monomial)` pairs into `a - b + 1/2 c`. Empty input renders as `0`.
pub(crate) fn render_sum<'a>(items: impl IntoIterator<Item = (&'a Rational, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in items {
        let (neg, abs) = if is_negative(c) { (true, -c.clone()) } else { (false, c.clone()) };
        let body = if mono.is_empty() {
            abs.to_string()
        } else {
            format!("{}{}", coeff_prefix(&abs), mono)
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-2/4").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational(" 6 / 3 ").unwrap(), int(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn lowest_terms() {
        let r = frac(4, -6);
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
        assert_eq!(format_rational(&frac(0, 5)), "0");
    }

    #[test]
    fn combinatorics() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(falling(5, 3), BigInt::from(60));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}

