//! Dense element sets over ids `0..128`, stored as a single `u128` word.

use std::fmt;

/// Ground sets are capped at 128 elements so every set operation is a word op.
pub const MAX_ELEMENTS: usize = 128;

/// A set of element ids in `0..128`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElemSet(u128);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn singleton(e: usize) -> Self {
        debug_assert!(e < MAX_ELEMENTS);
        ElemSet(1u128 << e)
    }

    /// The set `{0, 1, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "ground sets are capped at {MAX_ELEMENTS} elements");
        if n == MAX_ELEMENTS {
            ElemSet(u128::MAX)
        } else {
            ElemSet((1u128 << n) - 1)
        }
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, e: usize) -> bool {
        e < MAX_ELEMENTS && self.0 >> e & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        debug_assert!(e < MAX_ELEMENTS);
        self.0 |= 1u128 << e;
    }

    pub fn remove(&mut self, e: usize) {
        self.0 &= !(1u128 << e);
    }

    pub fn with(self, e: usize) -> Self {
        ElemSet(self.0 | 1u128 << e)
    }

    pub fn without(self, e: usize) -> Self {
        ElemSet(self.0 & !(1u128 << e))
    }

    pub fn union(self, other: Self) -> Self {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElemSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElemSet(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: Self) -> Self {
        ElemSet(self.0 ^ other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> ElemIter {
        ElemIter(self.0)
    }

    /// Iterate every subset of `self`, including the empty set and `self`.
    pub fn subsets(self) -> SubsetIter {
        SubsetIter { universe: self.0, current: 0, done: false }
    }

    /// All subsets of `self` with exactly `k` elements.
    pub fn subsets_of_size(self, k: usize) -> Vec<ElemSet> {
        let elems: Vec<usize> = self.iter().collect();
        let mut out = Vec::new();
        if k > elems.len() {
            return out;
        }
        let mut indices: Vec<usize> = (0..k).collect();
        loop {
            out.push(ElemSet::from_iter(indices.iter().map(|&i| elems[i])));
            // next k-combination
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if indices[i] != i + elems.len() - k {
                    break;
                }
            }
            indices[i] += 1;
            for j in i + 1..k {
                indices[j] = indices[j - 1] + 1;
            }
        }
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElemSet::from_iter(iter)
    }
}

pub struct ElemIter(u128);

impl Iterator for ElemIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let e = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(e)
        }
    }
}

pub struct SubsetIter {
    universe: u128,
    current: u128,
    done: bool,
}

impl Iterator for SubsetIter {
    type Item = ElemSet;

    fn next(&mut self) -> Option<ElemSet> {
        if self.done {
            return None;
        }
        let out = ElemSet(self.current);
        if self.current == self.universe {
            self.done = true;
        } else {
            // standard subset-stepping trick within a mask
            self.current = (self.current.wrapping_sub(self.universe)) & self.universe;
        }
        Some(out)
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", ids.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_iteration_covers_power_set() {
        let s = ElemSet::from_iter([0, 3, 5]);
        let subs: Vec<ElemSet> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.contains(&ElemSet::EMPTY));
        assert!(subs.contains(&s));
    }

    #[test]
    fn size_k_subsets() {
        let s = ElemSet::full(5);
        assert_eq!(s.subsets_of_size(2).len(), 10);
        assert_eq!(s.subsets_of_size(0), vec![ElemSet::EMPTY]);
        assert_eq!(s.subsets_of_size(6), Vec::<ElemSet>::new());
    }

    #[test]
    fn set_algebra() {
        let a = ElemSet::from_iter([1, 2, 4]);
        let b = ElemSet::from_iter([2, 3]);
        assert_eq!(a.union(b), ElemSet::from_iter([1, 2, 3, 4]));
        assert_eq!(a.intersection(b), ElemSet::singleton(2));
        assert_eq!(a.difference(b), ElemSet::from_iter([1, 4]));
        assert!(ElemSet::EMPTY.is_subset(a));
        assert_eq!(a.min(), Some(1));
    }
}
