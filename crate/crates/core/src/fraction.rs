use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// Exact non-negative rational, kept as the raw pair it was computed from
/// (e.g. `(|B|-1)/MAMI(B)` stays `2/1`, never a float and never reduced).
/// All comparisons cross-multiply in 128 bits.
#[derive(Debug, Clone, Copy)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den >= 1, "fraction denominator must be positive");
        Fraction { num, den }
    }

    pub fn zero() -> Self {
        Fraction { num: 0, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Smallest integer >= the fraction.
    pub fn ceil(&self) -> u64 {
        self.num.div_ceil(self.den)
    }

    /// `self <= k` for an integer `k`, exactly.
    pub fn le_int(&self, k: u64) -> bool {
        u128::from(self.num) <= u128::from(k) * u128::from(self.den)
    }

    /// `self >= k` for an integer `k`, exactly.
    pub fn ge_int(&self, k: u64) -> bool {
        u128::from(self.num) >= u128::from(k) * u128::from(self.den)
    }
}

impl PartialEq for Fraction {
    fn eq(&self, other: &Self) -> bool {
        u128::from(self.num) * u128::from(other.den) == u128::from(other.num) * u128::from(self.den)
    }
}

impl Eq for Fraction {}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = u128::from(self.num) * u128::from(other.den);
        let rhs = u128::from(other.num) * u128::from(self.den);
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_multiplied_ordering() {
        let a = Fraction::new(2, 1);
        let b = Fraction::new(3, 2);
        let c = Fraction::new(4, 2);
        assert!(a > b);
        assert_eq!(a, c);
        assert!(b < c);
        assert!(a.le_int(2));
        assert!(!a.le_int(1));
        assert!(a.ge_int(2));
    }

    #[test]
    fn display_keeps_raw_pair() {
        assert_eq!(Fraction::new(2, 1).to_string(), "2/1");
        assert_eq!(Fraction::new(4, 2).to_string(), "4/2");
        assert_eq!(Fraction::zero().to_string(), "0/1");
    }

    #[test]
    fn ceil_rounds_up() {
        assert_eq!(Fraction::new(5, 3).ceil(), 2);
        assert_eq!(Fraction::new(6, 3).ceil(), 2);
        assert_eq!(Fraction::zero().ceil(), 0);
    }
}
