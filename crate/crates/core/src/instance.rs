use std::collections::HashSet;
use std::fmt;

use crate::bits::BitVector;
use crate::error::{Error, Result};

/// A duplicate-free, ordered set `A` of `n >= 1` assignments in `{0,1}^m`.
///
/// Rows keep their construction order; columns are precomputed as bit sets
/// over row indices so that column popcounts and restrictions run in
/// `O(n/64)` words. The set is immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct InstanceSet {
    width: usize,
    rows: Vec<BitVector>,
    cols: Vec<BitVector>,
}

impl InstanceSet {
    pub fn new(width: usize, rows: Vec<BitVector>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Format(
                "instance set must contain at least one row".into(),
            ));
        }
        if width == 0 {
            return Err(Error::Format("instance width must be at least 1".into()));
        }
        let mut seen = HashSet::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.width() != width {
                return Err(Error::WidthMismatch {
                    left: width,
                    right: row.width(),
                });
            }
            if !seen.insert(row.clone()) {
                return Err(Error::DuplicateRow {
                    line: i + 1,
                    row: row.to_string(),
                });
            }
        }
        Ok(Self::new_unchecked(width, rows))
    }

    fn new_unchecked(width: usize, rows: Vec<BitVector>) -> Self {
        let n = rows.len();
        let cols = (0..width)
            .map(|j| BitVector::from_fn(n, |i| rows[i].get(j)))
            .collect();
        InstanceSet { width, rows, cols }
    }

    /// Parses the matrix text format: a header line `n m`, then `n` lines of
    /// exactly `m` characters from `{0,1}`. Lines starting with `#` are
    /// comments and skipped; a trailing newline is optional.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim_start().starts_with('#'));
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Format("missing header line".into()))?;
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .ok_or_else(|| Error::Format("header must be \"n m\"".into()))?
            .parse()
            .map_err(|_| Error::Format(format!("bad row count in header {header:?}")))?;
        let m: usize = parts
            .next()
            .ok_or_else(|| Error::Format("header must be \"n m\"".into()))?
            .parse()
            .map_err(|_| Error::Format(format!("bad width in header {header:?}")))?;
        if parts.next().is_some() {
            return Err(Error::Format(format!(
                "trailing tokens in header {header:?}"
            )));
        }
        if n == 0 {
            return Err(Error::Format(
                "instance set must contain at least one row".into(),
            ));
        }
        if m == 0 {
            return Err(Error::Format("instance width must be at least 1".into()));
        }

        let mut rows = Vec::with_capacity(n);
        let mut seen: HashSet<BitVector> = HashSet::with_capacity(n);
        for (lineno, line) in &mut lines {
            let line = line.trim_end();
            if line.len() != m {
                return Err(Error::Format(format!(
                    "line {}: row has {} characters, expected {}",
                    lineno + 1,
                    line.len(),
                    m
                )));
            }
            let row: BitVector = line
                .parse()
                .map_err(|e| Error::Format(format!("line {}: {}", lineno + 1, e)))?;
            if !seen.insert(row.clone()) {
                return Err(Error::DuplicateRow {
                    line: lineno + 1,
                    row: row.to_string(),
                });
            }
            rows.push(row);
            if rows.len() == n {
                break;
            }
        }
        if rows.len() < n {
            return Err(Error::Format(format!(
                "expected {} rows, found only {}",
                n,
                rows.len()
            )));
        }
        if let Some((lineno, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::Format(format!(
                "line {}: unexpected extra row {:?}",
                lineno + 1,
                extra
            )));
        }
        Ok(Self::new_unchecked(m, rows))
    }

    /// Renders back to the matrix text format (parse/render round-trips).
    pub fn render(&self) -> String {
        let mut out = format!("{} {}\n", self.len(), self.width);
        for row in &self.rows {
            out.push_str(&row.to_string());
            out.push('\n');
        }
        out
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of rows `n`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    /// Column `j` as a bit set over row indices.
    pub fn col(&self, j: usize) -> &BitVector {
        &self.cols[j]
    }

    pub fn position(&self, row: &BitVector) -> Option<usize> {
        self.rows.iter().position(|r| r == row)
    }

    /// The shifted set `A + h`: every row XORed with `h`, order preserved.
    /// XOR is a bijection, so the result is still duplicate-free.
    pub fn xor_shift(&self, h: &BitVector) -> Result<InstanceSet> {
        if h.width() != self.width {
            return Err(Error::WidthMismatch {
                left: self.width,
                right: h.width(),
            });
        }
        let rows = self.rows.iter().map(|r| r.xor(h)).collect();
        Ok(Self::new_unchecked(self.width, rows))
    }

    /// The rows with bit `j` equal to `value`, in order. May be empty, which
    /// is why this returns a plain collection rather than an `InstanceSet`.
    pub fn restrict(&self, j: usize, value: bool) -> Result<Vec<BitVector>> {
        if j >= self.width {
            return Err(Error::IndexOutOfRange {
                index: j,
                width: self.width,
            });
        }
        Ok(self
            .rows
            .iter()
            .filter(|r| r.get(j) == value)
            .cloned()
            .collect())
    }

    /// The sub-instance on the given row indices (must be non-empty and
    /// duplicate-free, which index subsets of a set always are).
    pub fn subset(&self, indices: &[usize]) -> InstanceSet {
        assert!(!indices.is_empty(), "instance subsets must be non-empty");
        let rows = indices.iter().map(|&i| self.rows[i].clone()).collect();
        Self::new_unchecked(self.width, rows)
    }
}

impl fmt::Debug for InstanceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InstanceSet(n={}, m={})", self.len(), self.width)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(rows: &[&str]) -> InstanceSet {
        let parsed = rows.iter().map(|r| r.parse().unwrap()).collect();
        InstanceSet::new(rows[0].len(), parsed).unwrap()
    }

    #[test]
    fn parses_the_documented_format() {
        let a = InstanceSet::parse("3 2\n00\n01\n10").unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a.width(), 2);
        assert_eq!(a.row(0).to_string(), "00");
        assert_eq!(a.row(2).to_string(), "10");
    }

    #[test]
    fn parses_minimal_instance() {
        let a = InstanceSet::parse("1 1\n0").unwrap();
        assert_eq!((a.len(), a.width()), (1, 1));
    }

    #[test]
    fn comments_and_trailing_newline_are_skipped() {
        let a = InstanceSet::parse("# comment\n2 2\n# another\n01\n10\n").unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(InstanceSet::parse(&a.render()).unwrap(), a);
    }

    #[test]
    fn rejects_duplicates() {
        match InstanceSet::parse("2 2\n01\n01") {
            Err(Error::DuplicateRow { row, .. }) => assert_eq!(row, "01"),
            other => panic!("expected DuplicateRow, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(InstanceSet::parse("0 2").is_err());
        assert!(InstanceSet::parse("1 0\n").is_err());
        assert!(InstanceSet::parse("2 2\n01").is_err());
        assert!(InstanceSet::parse("1 2\n012").is_err());
        assert!(InstanceSet::parse("1 2\n0x").is_err());
        assert!(InstanceSet::parse("1 2\n01\n10").is_err());
    }

    #[test]
    fn xor_shift_examples() {
        let a = set(&["00", "01", "10"]);
        let id = a.xor_shift(&"00".parse().unwrap()).unwrap();
        assert_eq!(id.rows(), a.rows());
        let flipped = a.xor_shift(&"11".parse().unwrap()).unwrap();
        let want: Vec<BitVector> = ["11", "10", "01"]
            .iter()
            .map(|r| r.parse().unwrap())
            .collect();
        assert_eq!(flipped.rows(), &want[..]);
        assert!(matches!(
            a.xor_shift(&"101".parse().unwrap()),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn restrict_partitions_the_rows() {
        let a = set(&["00", "01", "10"]);
        let zero = a.restrict(0, false).unwrap();
        let one = a.restrict(0, true).unwrap();
        assert_eq!(zero.len(), 2);
        assert_eq!(one.len(), 1);
        assert_eq!(zero.len() + one.len(), a.len());
        assert!(set(&["11"]).restrict(1, false).unwrap().is_empty());
        assert!(matches!(
            a.restrict(2, false),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn columns_match_rows() {
        let a = set(&["110", "101", "011"]);
        assert_eq!(a.col(0).to_string(), "110");
        assert_eq!(a.col(1).to_string(), "101");
        assert_eq!(a.col(2).to_string(), "011");
    }
}
