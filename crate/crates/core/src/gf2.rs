//! Bit-packed linear algebra over the two-element field.
//!
//! Only what homology needs: incremental row-echelon bases and ranks.

/// Dense bit vector of fixed width, packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVector {
    words: Vec<u64>,
    width: usize,
}

impl BitVector {
    pub fn zeros(width: usize) -> Self {
        BitVector {
            words: vec![0; width.div_ceil(64)],
            width,
        }
    }

    pub fn from_indices(width: usize, ones: &[usize]) -> Self {
        let mut v = Self::zeros(width);
        for &i in ones {
            v.flip(i);
        }
        v
    }

    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.width, "bit {i} out of range {}", self.width);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    /// Index of the highest set bit.
    #[inline]
    pub fn leading_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Row-echelon basis keyed by leading one.
///
/// Inserting a vector reduces it against the stored pivots; it is kept iff it
/// is independent of everything inserted so far.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    width: usize,
    pivot_row: Vec<u32>,
    rows: Vec<BitVector>,
}

const NO_PIVOT: u32 = u32::MAX;

impl EchelonBasis {
    pub fn new(width: usize) -> Self {
        EchelonBasis {
            width,
            pivot_row: vec![NO_PIVOT; width],
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Returns `true` if `v` was independent and has been added.
    pub fn insert(&mut self, mut v: BitVector) -> bool {
        debug_assert_eq!(v.width(), self.width);
        while let Some(lead) = v.leading_one() {
            match self.pivot_row[lead] {
                NO_PIVOT => {
                    self.pivot_row[lead] = self.rows.len() as u32;
                    self.rows.push(v);
                    return true;
                }
                row => v.xor_assign(&self.rows[row as usize]),
            }
        }
        false
    }

    /// Whether `v` lies in the span of the basis.
    pub fn contains(&self, v: &BitVector) -> bool {
        let mut v = v.clone();
        while let Some(lead) = v.leading_one() {
            match self.pivot_row[lead] {
                NO_PIVOT => return false,
                row => v.xor_assign(&self.rows[row as usize]),
            }
        }
        true
    }
}

/// Rank of a set of columns of common `width`.
pub fn rank<I>(width: usize, columns: I) -> usize
where
    I: IntoIterator<Item = BitVector>,
{
    let mut basis = EchelonBasis::new(width);
    for c in columns {
        basis.insert(c);
    }
    basis.rank()
}
