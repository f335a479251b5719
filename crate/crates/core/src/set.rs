use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{bail, Result};

/// Subset of a universe `0..n`, stored as a bitset.
///
/// Ordering is lexicographic on the ascending index list, so `{0} < {0,1} < {1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    n: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        ElementSet { n, words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, items: I) -> Result<Self> {
        let mut s = Self::empty(n);
        for i in items {
            if i >= n {
                bail!(Domain, "element {i} outside universe of size {n}");
            }
            s.insert(i);
        }
        Ok(s)
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Panics when `i` is outside the universe.
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.n, "element {i} outside universe of size {}", self.n);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.n {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn same_universe(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            bail!(Domain, "universe sizes differ ({} vs {})", self.n, other.n);
        }
        Ok(())
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_universe(other)?;
        Ok(self.zip(other, |a, b| a | b))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_universe(other)?;
        Ok(self.zip(other, |a, b| a & b))
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.same_universe(other)?;
        Ok(self.zip(other, |a, b| a & !b))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.n == other.n && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// `|self \ other|` without allocating. Universes must agree.
    pub(crate) fn count_minus(&self, other: &Self) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & !b).count_ones() as usize).sum()
    }

    fn zip(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        ElementSet {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    /// Keep only the elements listed in `coords`, renumbered `0..coords.len()`.
    pub fn project(&self, coords: &[usize]) -> ElementSet {
        let mut out = ElementSet::empty(coords.len());
        for (j, &c) in coords.iter().enumerate() {
            if self.contains(c) {
                out.insert(j);
            }
        }
        out
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter()).then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    universe: usize,
    elements: Vec<usize>,
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr { universe: self.n, elements: self.to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ElementSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = Repr::deserialize(d)?;
        ElementSet::from_indices(r.universe, r.elements).map_err(serde::de::Error::custom)
    }
}
