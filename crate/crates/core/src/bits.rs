//! Fixed-width bit vectors backed by `u64` words.
//!
//! Columns of a test design and pool responses are stored as [`BitVec`]s so
//! that unions and containment checks run word-parallel. Unused high bits of
//! the last word are kept zero, which makes `Eq` and `Hash` safe to derive.

/// A fixed-length vector of bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    nbits: usize,
    words: Vec<u64>,
}

impl BitVec {
    /// An all-zero vector of `nbits` bits.
    pub fn zeros(nbits: usize) -> Self {
        let nwords = nbits.div_ceil(64);
        BitVec { nbits, words: vec![0; nwords] }
    }

    /// Number of bits.
    pub fn len(&self) -> usize {
        self.nbits
    }

    /// True when the vector has zero length.
    pub fn is_empty(&self) -> bool {
        self.nbits == 0
    }

    /// Read bit `i`.
    ///
    /// # Panics
    /// Panics if `i >= len()`.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.nbits, "bit index {i} out of range for length {}", self.nbits);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Write bit `i`.
    ///
    /// # Panics
    /// Panics if `i >= len()`.
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.nbits, "bit index {i} out of range for length {}", self.nbits);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    /// Number of set bits.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// True when at least one bit is set.
    pub fn any(&self) -> bool {
        self.words.iter().any(|&w| w != 0)
    }

    /// In-place union with another vector of the same length.
    ///
    /// # Panics
    /// Panics on length mismatch.
    pub fn union_with(&mut self, other: &BitVec) {
        assert_eq!(self.nbits, other.nbits, "length mismatch in union");
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    /// True when every set bit of `other` is also set in `self`.
    ///
    /// # Panics
    /// Panics on length mismatch.
    pub fn contains(&self, other: &BitVec) -> bool {
        assert_eq!(self.nbits, other.nbits, "length mismatch in containment check");
        self.words.iter().zip(&other.words).all(|(w, o)| o & !w == 0)
    }

    /// Size of the intersection with another vector of the same length.
    ///
    /// # Panics
    /// Panics on length mismatch.
    pub fn intersection_count(&self, other: &BitVec) -> usize {
        assert_eq!(self.nbits, other.nbits, "length mismatch in intersection");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(w, o)| (w & o).count_ones() as usize)
            .sum()
    }

    /// Reset all bits to zero.
    pub fn clear(&mut self) {
        self.words.fill(0);
    }

    /// Indices of set bits in ascending order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Build from an iterator of set-bit indices.
    ///
    /// # Panics
    /// Panics if an index is out of range.
    pub fn from_indices(nbits: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVec::zeros(nbits);
        for i in indices {
            v.set(i, true);
        }
        v
    }
}
