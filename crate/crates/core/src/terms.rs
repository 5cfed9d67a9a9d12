//! Sparse linear combinations with exact rational coefficients.

use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::Rational;

/// A finite sum `Σ c_k · k` with no zero coefficient stored, iterated in key order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Terms<K: Ord>(BTreeMap<K, Rational>);

impl<K: Ord> Default for Terms<K> {
    fn default() -> Self {
        Terms(BTreeMap::new())
    }
}

impl<K: Ord + Clone> Terms<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: Rational) -> Self {
        let mut t = Self::new();
        t.add_term(k, c);
        t
    }

    pub fn add_term(&mut self, k: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, s: &Rational) {
        if s.is_zero() {
            return;
        }
        for (k, c) in &other.0 {
            self.add_term(k.clone(), c * s);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.0 {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (k, c) in &other.0 {
            self.add_term(k.clone(), -c.clone());
        }
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::new();
        }
        Terms(self.0.iter().map(|(k, c)| (k.clone(), c * s)).collect())
    }

    pub fn neg(&self) -> Self {
        Terms(self.0.iter().map(|(k, c)| (k.clone(), -c.clone())).collect())
    }

    pub fn filtered(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Terms(
            self.0
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        )
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> Terms<K2> {
        let mut out = Terms::new();
        for (k, c) in &self.0 {
            out.add_term(f(k), c.clone());
        }
        out
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn get(&self, k: &K) -> Option<&Rational> {
        self.0.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Rational> {
        self.0.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Rational> {
        self.0.keys()
    }

    pub fn last(&self) -> Option<(&K, &Rational)> {
        self.0.iter().next_back()
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for Terms<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut t = Terms::new();
        for (k, c) in iter {
            t.add_term(k, c);
        }
        t
    }
}

impl<'a, K: Ord> IntoIterator for &'a Terms<K> {
    type Item = (&'a K, &'a Rational);
    type IntoIter = btree_map::Iter<'a, K, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn zeros_are_pruned() {
        let mut t: Terms<u32> = Terms::new();
        t.add_term(1, int(2));
        t.add_term(1, int(-2));
        t.add_term(2, int(0));
        assert!(t.is_zero());
    }
}
