//! Truncated formal power series in the commuting variables `∂¹, …, ∂ⁿ`.
//!
//! Every series carries its truncation order `N`; terms of total order above
//! `N` are never stored. Binary operations require matching dimension and
//! truncation order. The `checked_*` methods report a mismatch as an error,
//! the operator impls panic on it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{AlgebraError, Result};
use crate::lie::OrderingSpec;
use crate::multi_index::MultiIndex;
use crate::rational::{binomial, factorial, format_rational, parse_rational, render_sum, Rational};
use crate::terms::Terms;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries {
    dim: usize,
    trunc: u32,
    terms: Terms<MultiIndex>,
}

impl PowerSeries {
    pub fn zero(dim: usize, trunc: u32) -> Self {
        PowerSeries { dim, trunc, terms: Terms::new() }
    }

    pub fn constant(dim: usize, trunc: u32, c: Rational) -> Self {
        let mut s = Self::zero(dim, trunc);
        s.terms.add_term(MultiIndex::zero(dim), c);
        s
    }

    pub fn one(dim: usize, trunc: u32) -> Self {
        Self::constant(dim, trunc, Rational::one())
    }

    /// The variable `∂^{l+1}` (0-based slot `l`).
    pub fn var(dim: usize, trunc: u32, l: usize) -> Self {
        Self::monomial(dim, trunc, MultiIndex::unit(dim, l), Rational::one())
    }

    /// `c · ∂^α`, or zero if `|α| > trunc`.
    pub fn monomial(dim: usize, trunc: u32, exp: MultiIndex, c: Rational) -> Self {
        let mut s = Self::zero(dim, trunc);
        s.push(exp, c);
        s
    }

    pub fn from_terms(dim: usize, trunc: u32, terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Self {
        let mut s = Self::zero(dim, trunc);
        for (e, c) in terms {
            s.push(e, c);
        }
        s
    }

    fn push(&mut self, exp: MultiIndex, c: Rational) {
        debug_assert_eq!(exp.dim(), self.dim);
        if exp.degree() <= self.trunc {
            self.terms.add_term(exp, c);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> &Terms<MultiIndex> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, exp: &MultiIndex) -> Rational {
        self.terms.coeff(exp)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.coeff(&MultiIndex::zero(self.dim))
    }

    /// Lowest total order present, `None` for the zero series.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(MultiIndex::degree)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(AlgebraError::DimMismatch { left: self.dim, right: other.dim });
        }
        if self.trunc != other.trunc {
            return Err(AlgebraError::TruncMismatch { left: self.trunc, right: other.trunc });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        out.terms.add_assign(&other.terms);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        out.terms.sub_assign(&other.terms);
        Ok(out)
    }

    /// Cauchy product, discarding every term of total order above the truncation.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = Self::zero(self.dim, self.trunc);
        for (ea, ca) in &self.terms {
            let room = self.trunc - ea.degree();
            for (eb, cb) in &other.terms {
                if eb.degree() > room {
                    // keys ascend by degree
                    break;
                }
                out.terms.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        PowerSeries { dim: self.dim, trunc: self.trunc, terms: self.terms.scaled(s) }
    }

    /// Multiplicative inverse up to the truncation order.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(AlgebraError::ZeroConstantTerm);
        }
        let c0_inv = c0.recip();
        // a = c0 (1 + e) with ord(e) >= 1, so 1/a = c0^{-1} Σ (-e)^k
        let mut minus_e = self.scale(&-c0_inv.clone());
        minus_e.terms.add_term(MultiIndex::zero(self.dim), Rational::one());
        let mut acc = Self::one(self.dim, self.trunc);
        let mut power = Self::one(self.dim, self.trunc);
        for _ in 0..self.trunc {
            power = &power * &minus_e;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&c0_inv))
    }

    /// Formal partial derivative `∂/∂(∂^{l+1})`. The truncation order is kept,
    /// although the coefficients of order `trunc` are no longer reliable.
    pub fn dvar(&self, l: usize) -> Result<Self> {
        if l >= self.dim {
            return Err(AlgebraError::IndexOutOfRange { index: l + 1, dim: self.dim });
        }
        let mut out = Self::zero(self.dim, self.trunc);
        for (e, c) in &self.terms {
            let k = e.get(l);
            if k > 0 {
                out.terms.add_term(e.with_decremented(l).unwrap(), c * Rational::from_integer(BigInt::from(k)));
            }
        }
        Ok(out)
    }

    /// Drops terms above `order` and records `order` as the new truncation.
    pub fn truncate(&self, order: u32) -> Self {
        PowerSeries {
            dim: self.dim,
            trunc: order,
            terms: self.terms.filtered(|e| e.degree() <= order),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "trunc": self.trunc,
            "terms": self.terms.iter().map(|(e, c)| json!({
                "exp": e.exponents(),
                "coeff": format_rational(c),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| AlgebraError::Json(m.to_string());
        let trunc = v["trunc"].as_u64().ok_or_else(|| bad("missing trunc"))? as u32;
        let terms = v["terms"].as_array().ok_or_else(|| bad("missing terms"))?;
        let mut dim = v["dim"].as_u64().map(|d| d as usize);
        let mut parsed = Vec::new();
        for t in terms {
            let exp: Vec<u16> = serde_json::from_value(t["exp"].clone())?;
            let coeff = parse_rational(t["coeff"].as_str().ok_or_else(|| bad("coeff must be a string"))?)?;
            match dim {
                None => dim = Some(exp.len()),
                Some(d) if d != exp.len() => return Err(AlgebraError::DimMismatch { left: d, right: exp.len() }),
                _ => {}
            }
            parsed.push((MultiIndex::from_slice(&exp), coeff));
        }
        let dim = dim.ok_or_else(|| bad("cannot infer dim of empty series"))?;
        Ok(Self::from_terms(dim, trunc, parsed))
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_sum(self.terms.iter().map(|(e, c)| (c, e.render("D")))))
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        self.checked_add(rhs).expect("power series shape mismatch")
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        self.checked_sub(rhs).expect("power series shape mismatch")
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        self.checked_mul(rhs).expect("power series shape mismatch")
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries { dim: self.dim, trunc: self.trunc, terms: self.terms.neg() }
    }
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`, from
/// `Σ_{k≤m} binom(m+1, k) B_k = 0`.
pub fn bernoulli_numbers(n: u32) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n as usize + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let mut s = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += Rational::from_integer(binomial(m + 1, k as u32)) * bk;
        }
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// The first `trunc + 1` Taylor coefficients of the ordering generating function.
///
/// The symmetric ordering uses `g(t) = t / (1 - e^{-t})`, i.e. `c_k = (-1)^k B_k / k!`,
/// so that `c_1 = +1/2`.
pub fn bernoulli_like_series(spec: &OrderingSpec, trunc: u32) -> Result<Vec<Rational>> {
    let len = trunc as usize + 1;
    let coeffs = match spec {
        OrderingSpec::Classical => {
            let mut v = vec![Rational::zero(); len];
            v[0] = Rational::one();
            v
        }
        OrderingSpec::Symmetric => bernoulli_numbers(trunc)
            .into_iter()
            .enumerate()
            .map(|(k, b)| {
                let c = b / Rational::from_integer(factorial(k as u32));
                if k % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect(),
        OrderingSpec::Series(cs) => {
            let lead = cs.first().cloned().unwrap_or_else(Rational::zero);
            if !lead.is_one() {
                return Err(AlgebraError::BadLeadingCoefficient(lead.to_string()));
            }
            let mut v: Vec<Rational> = cs.iter().take(len).cloned().collect();
            v.resize(len, Rational::zero());
            v
        }
    };
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn d(dim: usize, n: u32, l: usize) -> PowerSeries {
        PowerSeries::var(dim, n, l)
    }

    #[test]
    fn add_examples() {
        let one = PowerSeries::one(2, 3);
        let a = &one + &d(2, 3, 0);
        assert_eq!(&a + &(-&d(2, 3, 0)), one);
        assert_eq!(&a + &PowerSeries::zero(2, 3), a);
        assert_eq!((&d(2, 3, 0) + &d(2, 3, 1)).to_string(), "D2 + D1");
    }

    #[test]
    fn mul_examples() {
        let one = PowerSeries::one(2, 3);
        let x = d(2, 3, 0);
        let p = &(&one + &x) * &(&one - &x);
        assert_eq!(p, &one - &(&x * &x));
        assert_eq!(&p * &one, p);
        assert!((&d(2, 1, 0) * &d(2, 1, 1)).is_zero());
    }

    #[test]
    fn mismatch_is_an_error() {
        assert_eq!(
            PowerSeries::one(2, 3).checked_add(&PowerSeries::one(2, 4)),
            Err(AlgebraError::TruncMismatch { left: 3, right: 4 })
        );
        assert_eq!(
            PowerSeries::one(2, 3).checked_mul(&PowerSeries::one(3, 3)),
            Err(AlgebraError::DimMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn invert_examples() {
        let x = d(1, 3, 0);
        let one = PowerSeries::one(1, 3);
        let inv = (&one + &x).invert().unwrap();
        let x2 = &x * &x;
        let expected = &(&(&one - &x) + &x2) - &(&x2 * &x);
        assert_eq!(inv, expected);
        assert_eq!(one.invert().unwrap(), one);
        assert_eq!(PowerSeries::constant(1, 3, int(2)).invert().unwrap(), PowerSeries::constant(1, 3, frac(1, 2)));
        assert_eq!(x.invert(), Err(AlgebraError::ZeroConstantTerm));
    }

    #[test]
    fn dvar_examples() {
        let a = &d(2, 3, 0) * &d(2, 3, 1);
        assert_eq!(a.dvar(1).unwrap(), d(2, 3, 0));
        let sq = &d(2, 3, 0) * &d(2, 3, 0);
        assert_eq!(sq.dvar(0).unwrap(), d(2, 3, 0).scale(&int(2)));
        assert!(PowerSeries::one(2, 3).dvar(0).unwrap().is_zero());
        assert_eq!(
            PowerSeries::one(2, 3).dvar(2),
            Err(AlgebraError::IndexOutOfRange { index: 3, dim: 2 })
        );
    }

    #[test]
    fn bernoulli_recurrence() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[1], frac(-1, 2));
        assert_eq!(b[2], frac(1, 6));
        assert_eq!(b[3], int(0));
        assert_eq!(b[4], frac(-1, 30));
        assert_eq!(b[6], frac(1, 42));
        assert_eq!(b[8], frac(-1, 30));
    }

    #[test]
    fn ordering_coefficients() {
        let classical = bernoulli_like_series(&OrderingSpec::Classical, 3).unwrap();
        assert_eq!(classical, vec![int(1), int(0), int(0), int(0)]);
        let sym = bernoulli_like_series(&OrderingSpec::Symmetric, 4).unwrap();
        assert_eq!(sym, vec![int(1), frac(1, 2), frac(1, 12), int(0), frac(-1, 720)]);
        let user = bernoulli_like_series(&OrderingSpec::Series(vec![int(1), frac(1, 3)]), 3).unwrap();
        assert_eq!(user, vec![int(1), frac(1, 3), int(0), int(0)]);
        assert!(bernoulli_like_series(&OrderingSpec::Series(vec![int(2)]), 3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = &PowerSeries::one(2, 3) + &d(2, 3, 1).scale(&frac(-1, 2));
        let v = s.to_json();
        assert_eq!(v["terms"][1]["coeff"], "-1/2");
        assert_eq!(PowerSeries::from_json(&v).unwrap(), s);
    }
}
