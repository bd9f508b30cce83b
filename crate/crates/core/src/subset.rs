//! Small finite sets of indices packed into a `u64`.
//!
//! Bit `i` stands for index `i`. Matroid elements, code coordinates and
//! player labels all share this encoding; player labels are 1-based so bit 0
//! is free to carry the dealer when an access structure is extended.

use std::cmp::Ordering;
use std::fmt;

/// Largest index a [`Subset`] can hold, plus one.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    pub fn range(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "subset index out of range");
        if n == MAX_ELEMENTS {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    /// `{lo, ..., hi}` inclusive; empty when `lo > hi`.
    pub fn span(lo: usize, hi: usize) -> Self {
        if lo > hi {
            return Subset::EMPTY;
        }
        Subset::range(hi + 1).difference(Subset::range(lo))
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_ELEMENTS, "subset index out of range");
        Subset(1u64 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_ELEMENTS && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        self.union(Subset::singleton(i))
    }

    pub fn without(self, i: usize) -> Self {
        if i < MAX_ELEMENTS {
            Subset(self.0 & !(1u64 << i))
        } else {
            self
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset_of(self, other: Subset) -> bool {
        self != other && self.is_subset_of(other)
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest element, if any.
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Size first, then lexicographic on the ascending element lists.
    pub fn cmp_canonical(&self, other: &Subset) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.cmp_lex(other))
    }

    /// Lexicographic order on the ascending element lists.
    pub fn cmp_lex(&self, other: &Subset) -> Ordering {
        self.iter().cmp(other.iter())
    }

    /// Every subset of `self`, in increasing order of the packed bits.
    pub fn subsets(self) -> SubsetsOf {
        SubsetsOf {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(Subset::EMPTY, |acc, i| acc.with(i))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

pub struct SubsetIter(u64);

impl Iterator for SubsetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SubsetIter {}

pub struct SubsetsOf {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for SubsetsOf {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        // standard submask walk: (cur - mask) & mask enumerates upwards
        let succ = cur.wrapping_sub(self.mask) & self.mask;
        self.next = (succ != 0).then_some(succ);
        Some(Subset(cur))
    }
}

/// All `k`-element subsets of `within`, in lexicographic order of their
/// ascending element lists.
pub fn k_subsets(within: Subset, k: usize) -> Vec<Subset> {
    let elems = within.to_vec();
    let mut out = Vec::new();
    if k > elems.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| elems[i]).collect());
        // advance the rightmost index that still has room
        let Some(j) = (0..k).rev().find(|&j| idx[j] < elems.len() - k + j) else {
            return out;
        };
        idx[j] += 1;
        for t in j + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

/// Keep only the inclusion-minimal members, deduplicated and sorted
/// canonically.
pub fn minimalize(sets: &[Subset]) -> Vec<Subset> {
    let mut sorted: Vec<Subset> = sets.to_vec();
    sorted.sort_by(Subset::cmp_canonical);
    sorted.dedup();
    let mut out: Vec<Subset> = Vec::with_capacity(sorted.len());
    for s in sorted {
        if !out.iter().any(|m| m.is_subset_of(s)) {
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_subsets_counts_and_order() {
        let s = Subset::range(5);
        assert_eq!(k_subsets(s, 0), vec![Subset::EMPTY]);
        assert_eq!(k_subsets(s, 2).len(), 10);
        assert_eq!(k_subsets(s, 5), vec![s]);
        assert!(k_subsets(s, 6).is_empty());
        let two = k_subsets(Subset::from_iter([1, 3, 4]), 2);
        assert_eq!(
            two,
            vec![
                Subset::from_iter([1, 3]),
                Subset::from_iter([1, 4]),
                Subset::from_iter([3, 4])
            ]
        );
    }

    #[test]
    fn subsets_of_mask() {
        let s = Subset::from_iter([0, 2, 5]);
        let all: Vec<Subset> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| x.is_subset_of(s)));
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn minimalize_drops_supersets() {
        let sets = [
            Subset::from_iter([1, 2, 3]),
            Subset::from_iter([1, 2]),
            Subset::from_iter([3]),
            Subset::from_iter([1, 2]),
        ];
        assert_eq!(
            minimalize(&sets),
            vec![Subset::from_iter([3]), Subset::from_iter([1, 2])]
        );
    }

    #[test]
    fn display() {
        assert_eq!(Subset::from_iter([7, 1, 2]).to_string(), "{1,2,7}");
        assert_eq!(Subset::EMPTY.to_string(), "{}");
    }
}
