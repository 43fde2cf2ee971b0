//! Fixed-width vertex bitsets.
//!
//! Every adjacency row and every vertex subset is a `VertexSet` of
//! [`WORDS`] 64-bit words, so set algebra costs `O(WORDS)` regardless of
//! cardinality. The default build caps graphs at 64 vertices; enabling the
//! `wide` feature raises the cap to 512.

use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

/// Number of 64-bit words per set.
pub const WORDS: usize = if cfg!(feature = "wide") { 8 } else { 1 };

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = WORDS * 64;

/// A set of vertex ids in `0..MAX_VERTICES`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: [u64; WORDS],
}

impl VertexSet {
    pub const fn new() -> Self {
        VertexSet { words: [0; WORDS] }
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        let mut s = Self::new();
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            if n >= lo + 64 {
                *w = u64::MAX;
            } else if n > lo {
                *w = (1u64 << (n - lo)) - 1;
            }
        }
        s
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v >> 6] |= 1u64 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v >> 6] &= !(1u64 << (v & 63));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.words[v >> 6] & (1u64 << (v & 63)) != 0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn union(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a |= *b;
        }
        out
    }

    #[inline]
    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= *b;
        }
        out
    }

    #[inline]
    pub fn difference(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= !*b;
        }
        out
    }

    #[inline]
    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// The `k` smallest members, or `None` if the set is too small.
    pub fn smallest(&self, k: usize) -> Option<VertexSet> {
        let mut out = VertexSet::new();
        let mut it = self.iter();
        for _ in 0..k {
            out.insert(it.next()?);
        }
        Some(out)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words[0],
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

pub struct Iter<'a> {
    words: &'a [u64; WORDS],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + bit);
            }
            self.index += 1;
            if self.index >= WORDS {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}
