//! Fixed-width bitsets over a poset's ground set.
//!
//! Every hot operation in the dualization recursion is a word-wise
//! intersection, union or subset test over sets drawn from the same
//! universe, so the representation is a plain `Vec<u64>` with the
//! universe size fixed at construction.

use std::cmp::Ordering;
use std::fmt;

const WORD_BITS: usize = 64;

/// A subset of `{0, .., n-1}` stored as a bit vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: Vec<u64>,
    nbits: usize,
}

impl ElementSet {
    /// The empty subset of a universe of `n` elements.
    pub fn empty(n: usize) -> Self {
        Self {
            words: vec![0; n.div_ceil(WORD_BITS)],
            nbits: n,
        }
    }

    /// The full universe `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for w in &mut s.words {
            *w = !0;
        }
        s.clear_tail();
        s
    }

    pub fn from_ids(n: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for id in ids {
            s.insert(id);
        }
        s
    }

    pub fn universe_len(&self) -> usize {
        self.nbits
    }

    fn clear_tail(&mut self) {
        let extra = self.words.len() * WORD_BITS - self.nbits;
        if extra > 0 {
            let last = self.words.len() - 1;
            self.words[last] &= !0 >> extra;
        }
    }

    pub fn insert(&mut self, id: usize) {
        assert!(id < self.nbits, "element {id} out of range 0..{}", self.nbits);
        self.words[id / WORD_BITS] |= 1 << (id % WORD_BITS);
    }

    pub fn remove(&mut self, id: usize) {
        assert!(id < self.nbits);
        self.words[id / WORD_BITS] &= !(1 << (id % WORD_BITS));
    }

    pub fn contains(&self, id: usize) -> bool {
        id < self.nbits && self.words[id / WORD_BITS] & (1 << (id % WORD_BITS)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    /// Complement relative to `ground`.
    pub fn complement_in(&self, ground: &Self) -> Self {
        ground.difference(self)
    }

    /// Iterate member ids in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + bit)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Graded lexicographic order: by cardinality, then by the ascending
    /// id list. This is the deterministic order used for ideal
    /// enumeration and family canonicalization.
    pub fn cmp_graded_lex(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
