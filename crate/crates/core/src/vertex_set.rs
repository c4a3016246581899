//! Membership vectors over the nodes of a graph.
//!
//! A [`VertexSet`] is the candidate attack set of every measure and doubles as
//! the chromosome of the genetic search. Indices are 0-based; the 1-based
//! labels used in files and reports are produced by [`VertexSet::labels`].

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
    universe: usize,
    count: usize,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            words: vec![0; universe.div_ceil(WORD)],
            universe,
            count: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s.count = universe;
        s
    }

    /// Builds a set from 0-based indices. Panics if an index is out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Builds a set from 1-based node labels, as written in edge lists and reports.
    pub fn from_labels<I: IntoIterator<Item = usize>>(universe: usize, labels: I) -> Result<Self> {
        let mut s = Self::empty(universe);
        for label in labels {
            if label == 0 || label > universe {
                return Err(Error::LabelOutOfRange { label, n: universe });
            }
            s.insert(label - 1);
        }
        Ok(s)
    }

    /// Set over at most 64 nodes given as a bit mask (bit `i` is node `i`).
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD, "mask sets hold at most 64 nodes");
        let mut s = Self::empty(universe);
        if universe > 0 {
            s.words[0] = mask;
            s.trim();
            s.count = s.words[0].count_ones() as usize;
        }
        s
    }

    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    /// Number of nodes of the host graph.
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Cardinality |S|.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn is_full(&self) -> bool {
        self.count == self.universe
    }

    /// True for the nonempty proper subsets every minimisation ranges over.
    pub fn is_proper(&self) -> bool {
        self.count > 0 && self.count < self.universe
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.universe);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.universe, "node {i} outside a set over {} nodes", self.universe);
        let (w, b) = (i / WORD, 1u64 << (i % WORD));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        self.count += fresh as usize;
        fresh
    }

    pub fn remove(&mut self, i: usize) -> bool {
        assert!(i < self.universe, "node {i} outside a set over {} nodes", self.universe);
        let (w, b) = (i / WORD, 1u64 << (i % WORD));
        let present = self.words[w] & b != 0;
        self.words[w] &= !b;
        self.count -= present as usize;
        present
    }

    pub fn toggle(&mut self, i: usize) {
        if !self.remove(i) {
            self.insert(i);
        }
    }

    /// Members in increasing index order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn complement(&self) -> Self {
        let mut s = self.clone();
        for w in s.words.iter_mut() {
            *w = !*w;
        }
        s.trim();
        s.count = self.universe - self.count;
        s
    }

    /// Sorted 1-based labels.
    pub fn labels(&self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// Lexicographic order of the sorted member lists.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }

    /// Tie-break order for witnesses: smaller sets first, then lexicographically
    /// least member list.
    pub fn witness_cmp(&self, other: &Self) -> Ordering {
        self.count
            .cmp(&other.count)
            .then_with(|| self.lex_cmp(other))
    }

    /// Single-point crossover: each child keeps indices below `cut` from one
    /// parent and takes the rest from the other.
    pub(crate) fn crossover(&self, other: &Self, cut: usize) -> (Self, Self) {
        debug_assert_eq!(self.universe, other.universe);
        let mut a = self.clone();
        let mut b = other.clone();
        let (word, bit) = (cut / WORD, cut % WORD);
        for w in word..self.words.len() {
            let keep = if w == word { (1u64 << bit) - 1 } else { 0 };
            let (x, y) = (self.words[w], other.words[w]);
            a.words[w] = (x & keep) | (y & !keep);
            b.words[w] = (y & keep) | (x & !keep);
        }
        a.recount();
        b.recount();
        (a, b)
    }

    fn recount(&mut self) {
        self.count = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    fn trim(&mut self) {
        let tail = self.universe % WORD;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * WORD + bit);
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word];
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders the 1-based labels, e.g. `{1, 4, 7}`.
impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, label) in self.labels().into_iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{label}")?;
        }
        f.write_str("}")
    }
}

/// Mask analogue of [`VertexSet::witness_cmp`].
#[inline]
pub(crate) fn mask_witness_cmp(a: u64, b: u64) -> Ordering {
    match a.count_ones().cmp(&b.count_ones()) {
        Ordering::Equal if a == b => Ordering::Equal,
        Ordering::Equal => {
            // Equal sizes: the set owning the lowest differing node sorts first.
            let d = a ^ b;
            if d & d.wrapping_neg() & a != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        other => other,
    }
}
