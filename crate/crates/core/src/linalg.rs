//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.get(row, col).recip();
            for c in col..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c) - &factor * self.get(row, c);
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel `{v : A v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<RationalMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = RationalMatrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(RationalMatrix::from_fn(n, n, |r, c| aug.get(r, c + n).clone()))
    }

    /// Solves `A x = b`. On success returns `x`; otherwise returns the part of `b`
    /// left over after reduction against the column span (nonzero iff `b ∉ span A`).
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>, Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = RationalMatrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            let remainder = (0..self.rows).map(|r| aug.get(r, self.cols).clone()).collect::<Vec<_>>();
            let leftover = (0..self.rows)
                .map(|r| {
                    if (0..self.cols).all(|c| aug.get(r, c).is_zero()) {
                        remainder[r].clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            return Err(leftover);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols).clone();
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn inverse_2x2() {
        let m = RationalMatrix::from_fn(2, 2, |r, c| int([[2, 1], [1, 1]][r][c]));
        let inv = m.inverse().unwrap();
        assert_eq!(inv, RationalMatrix::from_fn(2, 2, |r, c| int([[1, -1], [-1, 2]][r][c])));
        let singular = RationalMatrix::from_fn(2, 2, |r, c| int([[1, 2], [2, 4]][r][c]));
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn rank_and_kernel() {
        let m = RationalMatrix::from_fn(2, 3, |r, c| int([[1, 2, 3], [2, 4, 6]][r][c]));
        assert_eq!(m.rank(), 1);
        let ker = m.nullspace();
        assert_eq!(ker.len(), 2);
        for v in ker {
            let s: Rational = (0..3).map(|c| m.get(0, c) * &v[c]).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = RationalMatrix::from_fn(3, 2, |r, c| int([[1, 0], [0, 2], [1, 1]][r][c]));
        let x = m.solve(&[int(1), int(1), frac(3, 2)]).unwrap();
        assert_eq!(x, vec![int(1), frac(1, 2)]);
        assert!(m.solve(&[int(1), int(0), int(0)]).is_err());
    }
}
