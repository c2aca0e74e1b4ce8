use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A fixed-width vector of bits, packed into 64-bit words.
///
/// This one type plays every bit-shaped role in the crate: assignments in
/// `{0,1}^m`, hypotheses, matrix columns viewed as sets of row indices, and
/// truth tables of predicates over an enumerated domain. Unused high bits of
/// the last word are always zero, so `Eq`/`Hash` can be derived.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    width: usize,
    words: Vec<u64>,
}

fn word_count(width: usize) -> usize {
    width.div_ceil(64)
}

impl BitVector {
    pub fn zeros(width: usize) -> Self {
        assert!(width >= 1, "bit vector width must be positive");
        BitVector {
            width,
            words: vec![0; word_count(width)],
        }
    }

    pub fn ones(width: usize) -> Self {
        let mut v = Self::zeros(width);
        for w in &mut v.words {
            *w = u64::MAX;
        }
        v.mask_tail();
        v
    }

    /// Builds the vector whose bit `j` is bit `j` of `index`; `width <= 64`.
    /// Used to sweep all `2^m` hypotheses in a fixed order.
    pub fn from_index(width: usize, index: u64) -> Self {
        assert!(width <= 64);
        let mut v = Self::zeros(width);
        v.words[0] = index;
        v.mask_tail();
        v
    }

    pub fn from_fn(width: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = Self::zeros(width);
        for i in 0..width {
            if f(i) {
                v.set(i, true);
            }
        }
        v
    }

    fn mask_tail(&mut self) {
        let rem = self.width % 64;
        if rem != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << rem) - 1;
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.width);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.width);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.width, other.width, "bit vector widths differ");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| f(a, b))
            .collect();
        let mut v = BitVector {
            width: self.width,
            words,
        };
        v.mask_tail();
        v
    }

    pub fn xor(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a ^ b)
    }

    pub fn and(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn or(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn and_not(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & !b)
    }

    pub fn not(&self) -> Self {
        let mut v = BitVector {
            width: self.width,
            words: self.words.iter().map(|&w| !w).collect(),
        };
        v.mask_tail();
        v
    }

    /// Logical implication of truth tables: every 1 of `self` is a 1 of `other`.
    pub fn implies(&self, other: &Self) -> bool {
        assert_eq!(self.width, other.width, "bit vector widths differ");
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn hamming(&self, other: &Self) -> usize {
        assert_eq!(self.width, other.width, "bit vector widths differ");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }

    /// The low word, for mask arithmetic when width <= 64.
    pub(crate) fn low_word(&self) -> u64 {
        debug_assert!(self.width <= 64);
        self.words[0]
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s.is_empty() {
            return Err(Error::Format("empty row".into()));
        }
        let mut v = BitVector::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::Format(format!(
                        "invalid character {other:?} in row {s:?}"
                    )))
                }
            }
        }
        Ok(v)
    }
}
