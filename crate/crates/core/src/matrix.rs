//! `n × n` matrices over truncated power series.
//!
//! Entry `(row, col)` stores `A^{row}_{col}`: the row is the upper index.

use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{AlgebraError, Result};
use crate::linalg::RationalMatrix;
use crate::rational::Rational;
use crate::series::PowerSeries;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesMatrix {
    dim: usize,
    trunc: u32,
    entries: Vec<PowerSeries>,
}

impl SeriesMatrix {
    pub fn zero(dim: usize, trunc: u32) -> Self {
        SeriesMatrix { dim, trunc, entries: vec![PowerSeries::zero(dim, trunc); dim * dim] }
    }

    pub fn identity(dim: usize, trunc: u32) -> Self {
        let mut m = Self::zero(dim, trunc);
        for i in 0..dim {
            m.entries[i * dim + i] = PowerSeries::one(dim, trunc);
        }
        m
    }

    pub fn from_fn(dim: usize, trunc: u32, mut f: impl FnMut(usize, usize) -> PowerSeries) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                let e = f(r, c);
                assert!(e.dim() == dim && e.trunc() == trunc, "entry shape mismatch");
                entries.push(e);
            }
        }
        SeriesMatrix { dim, trunc, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// `A^{row}_{col}`.
    pub fn get(&self, row: usize, col: usize) -> &PowerSeries {
        &self.entries[row * self.dim + col]
    }

    pub fn constant_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.dim, self.dim, |r, c| self.get(r, c).constant_term())
    }

    /// Constant-term matrix equals the identity.
    pub fn is_close_to_identity(&self) -> bool {
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| {
                let want = if r == c { Rational::one() } else { Rational::zero() };
                self.get(r, c).constant_term() == want
            })
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(AlgebraError::DimMismatch { left: self.dim, right: other.dim });
        }
        if self.trunc != other.trunc {
            return Err(AlgebraError::TruncMismatch { left: self.trunc, right: other.trunc });
        }
        let n = self.dim;
        Ok(Self::from_fn(n, self.trunc, |r, c| {
            let mut acc = PowerSeries::zero(n, self.trunc);
            for m in 0..n {
                acc = &acc + &(self.get(r, m) * other.get(m, c));
            }
            acc
        }))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.dim, self.trunc, |r, c| self.get(r, c) + other.get(r, c))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_fn(self.dim, self.trunc, |r, c| self.get(r, c).scale(s))
    }

    /// Inverse up to the truncation order: `A = A₀(I + E)` with `ord(E) ≥ 1`,
    /// so `A⁻¹ = (Σ_k (-E)^k) A₀⁻¹`.
    pub fn invert(&self) -> Result<Self> {
        let n = self.dim;
        let a0_inv = self.constant_matrix().inverse().ok_or(AlgebraError::SingularMatrix)?;
        let a0_inv = Self::from_fn(n, self.trunc, |r, c| PowerSeries::constant(n, self.trunc, a0_inv.get(r, c).clone()));
        // -E = I - A₀⁻¹ A
        let minus_e = Self::identity(n, self.trunc).add(&a0_inv.checked_mul(self)?.scale(&-Rational::one()));
        let mut acc = Self::identity(n, self.trunc);
        let mut power = Self::identity(n, self.trunc);
        for _ in 0..self.trunc {
            power = power.checked_mul(&minus_e)?;
            if power.entries.iter().all(PowerSeries::is_zero) {
                break;
            }
            acc = acc.add(&power);
        }
        acc.checked_mul(&a0_inv)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "trunc": self.trunc,
            "entries": (0..self.dim).map(|r| (0..self.dim).map(|c| self.get(r, c).to_json()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SeriesMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim {
            for c in 0..self.dim {
                writeln!(f, "[{}][{}] = {}", r + 1, c + 1, self.get(r, c))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn identity_inverts_to_itself() {
        let i = SeriesMatrix::identity(3, 4);
        assert_eq!(i.invert().unwrap(), i);
        assert!(i.is_close_to_identity());
    }

    #[test]
    fn neumann_series() {
        // A = I + E with E = [[0, D1], [D2, 0]]
        let n = 2;
        let t = 4;
        let e = SeriesMatrix::from_fn(n, t, |r, c| match (r, c) {
            (0, 1) => PowerSeries::var(n, t, 0),
            (1, 0) => PowerSeries::var(n, t, 1),
            _ => PowerSeries::zero(n, t),
        });
        let a = SeriesMatrix::identity(n, t).add(&e);
        let inv = a.invert().unwrap();
        assert_eq!(a.checked_mul(&inv).unwrap(), SeriesMatrix::identity(n, t));
        assert_eq!(inv.checked_mul(&a).unwrap(), SeriesMatrix::identity(n, t));
        let mut expected = SeriesMatrix::identity(n, t);
        let mut p = SeriesMatrix::identity(n, t);
        let minus_e = e.scale(&int(-1));
        for _ in 0..t {
            p = p.checked_mul(&minus_e).unwrap();
            expected = expected.add(&p);
        }
        assert_eq!(inv, expected);
    }

    #[test]
    fn singular_constant_term() {
        let z = SeriesMatrix::zero(2, 3);
        assert_eq!(z.invert(), Err(AlgebraError::SingularMatrix));
    }
}
