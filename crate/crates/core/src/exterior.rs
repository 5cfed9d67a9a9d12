//! Monomials of the exterior algebra on `n` anonymous generators.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// How exterior slots are printed: `dx_i` or the hatted `dX_i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisLabel {
    #[default]
    Dx,
    DxHat,
}

impl BasisLabel {
    pub fn prefix(self) -> &'static str {
        match self {
            BasisLabel::Dx => "dx",
            BasisLabel::DxHat => "dX",
        }
    }
}

/// A wedge of distinct generators, stored as a bitmask (bit `i` is slot `i`, 0-based).
///
/// Ordered by degree, then lexicographically on the sorted index list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ExteriorMonomial(u64);

impl ExteriorMonomial {
    pub const ONE: ExteriorMonomial = ExteriorMonomial(0);

    pub fn from_mask(mask: u64) -> Self {
        ExteriorMonomial(mask)
    }

    pub fn generator(i: usize) -> Self {
        assert!(i < 64, "exterior slot out of range");
        ExteriorMonomial(1 << i)
    }

    pub fn from_indices(indices: &[usize]) -> Option<Self> {
        let mut mask = 0u64;
        for &i in indices {
            let bit = 1u64 << i;
            if mask & bit != 0 {
                return None;
            }
            mask |= bit;
        }
        Some(ExteriorMonomial(mask))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..64).filter(move |i| mask & (1 << i) != 0)
    }

    /// `self ∧ other` as `(sign, monomial)`, or `None` if a generator repeats.
    /// The sign is that of the permutation sorting the concatenated indices.
    pub fn mul(self, other: Self) -> Option<(i8, ExteriorMonomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        for j in other.indices() {
            // generators of `self` sitting above j must move past it
            swaps += (self.0 >> (j + 1)).count_ones();
        }
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, ExteriorMonomial(self.0 | other.0)))
    }

    /// All monomials in `dim` generators, ascending.
    pub fn all(dim: usize) -> Vec<ExteriorMonomial> {
        assert!(dim < 64);
        let mut v: Vec<_> = (0..(1u64 << dim)).map(ExteriorMonomial).collect();
        v.sort();
        v
    }

    pub fn render(self, label: BasisLabel) -> String {
        self.indices()
            .map(|i| format!("{}{}", label.prefix(), i + 1))
            .collect::<Vec<_>>()
            .join("^")
    }
}

impl Ord for ExteriorMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for ExteriorMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExteriorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{:?}", self.indices().map(|i| i + 1).collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(ix: &[usize]) -> ExteriorMonomial {
        ExteriorMonomial::from_indices(&ix.iter().map(|i| i - 1).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn product_examples() {
        assert_eq!(e(&[1, 2]).mul(e(&[1])), None);
        assert_eq!(e(&[2]).mul(e(&[1])), Some((-1, e(&[1, 2]))));
        assert_eq!(e(&[2, 3]).mul(e(&[1])), Some((1, e(&[1, 2, 3]))));
        assert_eq!(e(&[1]).mul(e(&[2])), Some((1, e(&[1, 2]))));
    }

    #[test]
    fn associative_with_signs_exhaustive() {
        for dim in 0..=5 {
            let all = ExteriorMonomial::all(dim);
            for &a in &all {
                for &b in &all {
                    for &c in &all {
                        let left = a.mul(b).and_then(|(s1, ab)| ab.mul(c).map(|(s2, m)| (s1 * s2, m)));
                        let right = b.mul(c).and_then(|(s1, bc)| a.mul(bc).map(|(s2, m)| (s1 * s2, m)));
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn graded_commutativity() {
        let all = ExteriorMonomial::all(5);
        for &a in &all {
            for &b in &all {
                if let (Some((s1, m1)), Some((s2, m2))) = (a.mul(b), b.mul(a)) {
                    assert_eq!(m1, m2);
                    let expected = if (a.degree() * b.degree()) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(s1 * s2, expected);
                }
            }
        }
    }

    #[test]
    fn ordering_and_render() {
        let all = ExteriorMonomial::all(3);
        let r: Vec<String> = all.iter().map(|m| m.render(BasisLabel::Dx)).collect();
        assert_eq!(r, vec!["", "dx1", "dx2", "dx3", "dx1^dx2", "dx1^dx3", "dx2^dx3", "dx1^dx2^dx3"]);
        assert_eq!(e(&[1, 3]).render(BasisLabel::DxHat), "dX1^dX3");
    }
}
