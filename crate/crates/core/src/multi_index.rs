//! Exponent vectors for monomials in n commuting (or PBW-ordered) variables.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector `(α₁, …, αₙ)`.
///
/// Ordered graded-lexicographically: total degree first, then lexicographic
/// on the exponents so that `x1 > x2 > … > xn`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(SmallVec<[u16; 6]>);

impl MultiIndex {
    pub fn zero(dim: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, dim))
    }

    /// The unit exponent for the 0-based slot `i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut m = Self::zero(dim);
        m.0[i] = 1;
        m
    }

    pub fn from_slice(exps: &[u16]) -> Self {
        MultiIndex(SmallVec::from_slice(exps))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn get(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self.dim(), other.dim());
        let mut out = SmallVec::with_capacity(self.dim());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(MultiIndex(out))
    }

    pub fn with_incremented(&self, i: usize) -> Self {
        let mut m = self.clone();
        m.0[i] += 1;
        m
    }

    pub fn with_decremented(&self, i: usize) -> Option<Self> {
        let mut m = self.clone();
        m.0[i] = m.0[i].checked_sub(1)?;
        Some(m)
    }

    /// Largest 0-based slot with a nonzero exponent.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e != 0)
    }

    /// Expands the monomial into its generator word `x_1^{α₁} x_2^{α₂} …`
    /// as a list of 0-based slots.
    pub fn word(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }

    pub fn from_word(dim: usize, word: &[usize]) -> Self {
        let mut m = Self::zero(dim);
        for &i in word {
            m.0[i] += 1;
        }
        m
    }

    /// All exponent vectors of total degree exactly `d`, ascending.
    pub fn of_degree(dim: usize, d: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u16; dim];
        fill(&mut out, &mut cur, 0, d);
        out.sort();
        out
    }

    /// All exponent vectors of total degree `<= d`, ascending.
    pub fn up_to_degree(dim: usize, d: u32) -> Vec<MultiIndex> {
        (0..=d).flat_map(|k| Self::of_degree(dim, k)).collect()
    }

    /// Writes the monomial with the given variable prefix, e.g. `x1^2 x3`.
    pub fn render(&self, var: &str) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("{}{}", var, i + 1)
                } else {
                    format!("{}{}^{}", var, i + 1, e)
                }
            })
            .collect();
        parts.join(" ")
    }
}

fn fill(out: &mut Vec<MultiIndex>, cur: &mut Vec<u16>, slot: usize, remaining: u32) {
    if cur.is_empty() {
        if remaining == 0 {
            out.push(MultiIndex(SmallVec::new()));
        }
        return;
    }
    if slot == cur.len() - 1 {
        cur[slot] = remaining as u16;
        out.push(MultiIndex::from_slice(cur));
        cur[slot] = 0;
        return;
    }
    for e in 0..=remaining {
        cur[slot] = e as u16;
        fill(out, cur, slot + 1, remaining - e);
    }
    cur[slot] = 0;
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}
