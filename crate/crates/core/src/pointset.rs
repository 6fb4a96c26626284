//! Fixed-universe bit sets over point indices.

use smallvec::{smallvec, SmallVec};

/// A subset of `{0, .., len-1}`. Sets up to 128 points live inline.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PointSet {
    len: usize,
    words: SmallVec<[u64; 2]>,
}

impl PointSet {
    pub fn empty(len: usize) -> Self {
        PointSet { len, words: smallvec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = PointSet { len, words: smallvec![!0; len.div_ceil(64)] };
        s.trim();
        s
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut s = PointSet::empty(len);
        for i in idx {
            s.insert(i);
        }
        s
    }

    /// The set whose membership bits are the low `len` bits of `mask`
    /// starting at bit `offset` of a big little-endian bit string.
    pub fn from_bits(len: usize, bits: &[u64], offset: usize) -> Self {
        PointSet::from_indices(
            len,
            (0..len).filter(|i| {
                let b = offset + i;
                bits[b / 64] >> (b % 64) & 1 == 1
            }),
        )
    }

    fn trim(&mut self) {
        let extra = self.words.len() * 64 - self.len;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= !0u64 >> extra;
            }
        }
    }

    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "point index {i} out of range");
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn complement(&self) -> PointSet {
        let mut s = PointSet { len: self.len, words: self.words.iter().map(|w| !w).collect() };
        s.trim();
        s
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        debug_assert_eq!(self.len, other.len);
        PointSet {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        debug_assert_eq!(self.len, other.len);
        PointSet {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    /// `!self | other`.
    pub fn implication(&self, other: &PointSet) -> PointSet {
        let mut s = PointSet {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| !a | b).collect(),
        };
        s.trim();
        s
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &PointSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}
