use std::collections::btree_set::{self, BTreeSet};

/// A finite formal sum of terms with coefficients in F₂.
///
/// Adding a term that is already present removes it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Span<T: Ord>(BTreeSet<T>);

impl<T: Ord + Clone> F2Span<T> {
    pub fn new() -> Self {
        Self(BTreeSet::new())
    }

    pub fn toggle(&mut self, t: T) {
        if !self.0.remove(&t) {
            self.0.insert(t);
        }
    }

    pub fn add_assign(&mut self, other: &F2Span<T>) {
        for t in &other.0 {
            self.toggle(t.clone());
        }
    }

    pub fn contains(&self, t: &T) -> bool {
        self.0.contains(t)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> btree_set::Iter<'_, T> {
        self.0.iter()
    }
}

impl<T: Ord + Clone> FromIterator<T> for F2Span<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut s = Self::new();
        for t in iter {
            s.toggle(t);
        }
        s
    }
}

impl<'a, T: Ord> IntoIterator for &'a F2Span<T> {
    type Item = &'a T;
    type IntoIter = btree_set::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// `C(n, k) mod 2`, by Lucas' theorem: odd exactly when the bits of `k` are a
/// subset of the bits of `n`.
pub fn binomial_mod2(n: usize, k: usize) -> bool {
    k <= n && (n & k) == k
}
