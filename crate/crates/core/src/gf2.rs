//! Bit-packed linear algebra over GF(2).
//!
//! Vectors pack 64 coordinates per machine word; matrices are row-major
//! collections of vectors. Reduction is plain Gauss-Jordan with leftmost
//! pivots, which keeps the reduced form (and everything derived from it)
//! deterministic across runs and thread counts.

use std::fmt;

use thiserror::Error;

/// Errors produced when reading vectors or matrices from text.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing header line")]
    MissingHeader,
    #[error("malformed header: expected `{expected}`, got `{got}`")]
    BadHeader { expected: &'static str, got: String },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row} has {found} columns, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid character {c:?} in row {row}")]
    BadDigit { row: usize, c: char },
    #[error("unexpected trailing content: {0:?}")]
    TrailingContent(String),
}

/// A fixed-length vector over GF(2), packed least-significant-bit first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitVector {
    /// The all-zero vector of the given length.
    pub fn zeros(len: usize) -> Self {
        BitVector {
            words: vec![0; word_count(len)],
            len,
        }
    }

    /// The standard basis vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    /// Builds a vector from explicit coordinates.
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a row of `0`/`1` characters.
    pub fn parse_row(row: usize, expected_len: usize, text: &str) -> Result<Self, ParseError> {
        let mut v = Self::zeros(expected_len);
        let mut n = 0;
        for c in text.chars() {
            match c {
                '0' => n += 1,
                '1' => {
                    if n < expected_len {
                        v.set(n, true);
                    }
                    n += 1;
                }
                _ => return Err(ParseError::BadDigit { row, c }),
            }
        }
        if n != expected_len {
            return Err(ParseError::RaggedRow {
                row,
                expected: expected_len,
                found: n,
            });
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        assert!(
            index < self.len,
            "bit index {index} out of range {}",
            self.len
        );
        (self.words[index / 64] >> (index % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(
            index < self.len,
            "bit index {index} out of range {}",
            self.len
        );
        let mask = 1u64 << (index % 64);
        if value {
            self.words[index / 64] |= mask;
        } else {
            self.words[index / 64] &= !mask;
        }
    }

    /// Number of ones.
    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// In-place XOR with another vector of the same length.
    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// XOR of two vectors.
    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Parity of the inner product `<self, other>`.
    #[inline]
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    /// `|supp(self) ∩ supp(other)|`.
    #[inline]
    pub fn overlap(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len, "length mismatch in overlap");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `|supp(self) ∪ supp(other)|`.
    #[inline]
    pub fn union_weight(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len, "length mismatch in union_weight");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Index of the first one, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Indices of the ones, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (i, &word) in self.words.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                out.push(i * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    /// Lexicographic comparison of the coordinate strings (index 0 first).
    pub fn cmp_lex(&self, other: &BitVector) -> std::cmp::Ordering {
        assert_eq!(self.len, other.len, "length mismatch in cmp_lex");
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let pos = diff.trailing_zeros();
                return if (a >> pos) & 1 == 1 {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Less
                };
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
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

/// A dense matrix over GF(2), stored as packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<BitVector>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows: vec![BitVector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    /// Builds a matrix from rows, which must share a length.
    pub fn from_rows(rows: Vec<BitVector>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        BitMatrix { rows, cols }
    }

    /// Builds the matrix whose j-th column is `columns[j]`.
    pub fn from_columns(columns: &[BitVector], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for i in col.support() {
                m.rows[i].set(j, true);
            }
        }
        m
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    /// Matrix-vector product `M·v`, one parity per row.
    pub fn mat_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols, "length mismatch in mat_vec");
        let mut out = BitVector::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    /// Reduced row echelon form, eliminating with the leftmost available
    /// pivot at every step. Zero rows are dropped; the surviving rows are
    /// ordered by pivot column.
    pub fn rref(&self) -> BitMatrix {
        let mut rows = self.rows.clone();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let Some(src) = (pivot_row..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(pivot_row, src);
            let pivot = rows[pivot_row].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != pivot_row && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            pivot_row += 1;
            if pivot_row == rows.len() {
                break;
            }
        }
        rows.truncate(pivot_row);
        BitMatrix {
            rows,
            cols: self.cols,
        }
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        self.rref().num_rows()
    }

    /// A basis of `{v : M·v = 0}`, one vector per free column of the
    /// reduced form, ordered by free column index.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let r = self.rref();
        let mut pivot_of_row = Vec::with_capacity(r.num_rows());
        let mut is_pivot = vec![false; self.cols];
        for row in &r.rows {
            let p = row.first_one().expect("rref rows are nonzero");
            pivot_of_row.push(p);
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for (free, _) in is_pivot.iter().enumerate().filter(|&(_, &p)| !p) {
            let mut v = BitVector::zeros(self.cols);
            v.set(free, true);
            for (row, &p) in r.rows.iter().zip(&pivot_of_row) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Whether `v` lies in the row space.
    pub fn in_row_space(&self, v: &BitVector) -> bool {
        self.rref().reduces_to_zero(v)
    }

    /// Reduces `v` by the rows of an already-reduced matrix and reports
    /// whether it vanishes. Callers holding a cached [`rref`](Self::rref)
    /// use this to avoid re-reducing per query.
    pub fn reduces_to_zero(&self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.cols, "length mismatch in row space test");
        let mut rem = v.clone();
        for row in &self.rows {
            let p = row.first_one().expect("reduced rows are nonzero");
            if rem.get(p) {
                rem.xor_assign(row);
            }
        }
        rem.is_zero()
    }

    /// Greedy maximal independent subset of the rows, in row order.
    /// Returns indices into `self.rows()`.
    pub fn independent_row_indices(&self) -> Vec<usize> {
        let mut basis: Vec<BitVector> = Vec::new();
        let mut picked = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let mut rem = row.clone();
            for s in &basis {
                let p = s.first_one().expect("stored rows are nonzero");
                if rem.get(p) {
                    rem.xor_assign(s);
                }
            }
            if rem.is_zero() {
                continue;
            }
            let p_new = rem.first_one().expect("checked nonzero");
            for s in basis.iter_mut() {
                if s.get(p_new) {
                    s.xor_assign(&rem);
                }
            }
            basis.push(rem);
            basis.sort_by_key(|r| r.first_one());
            picked.push(i);
        }
        picked
    }

    /// Parses the plain text matrix format: a `<rows> <cols>` header line
    /// followed by one `0`/`1` string per row.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or(ParseError::MissingHeader)?;
        let (rows, cols) = parse_two_ints(header, "<rows> <cols>")?;
        let mut out = Vec::with_capacity(rows);
        for (i, line) in lines.by_ref().take(rows).enumerate() {
            out.push(BitVector::parse_row(i, cols, line)?);
        }
        if out.len() != rows {
            return Err(ParseError::RowCount {
                expected: rows,
                found: out.len(),
            });
        }
        if let Some(extra) = lines.next() {
            return Err(ParseError::TrailingContent(extra.to_string()));
        }
        Ok(BitMatrix { rows: out, cols })
    }

    /// Renders the matrix in the same format [`parse`](Self::parse) reads.
    pub fn render(&self) -> String {
        let mut s = format!("{} {}\n", self.rows.len(), self.cols);
        for row in &self.rows {
            s.push_str(&row.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn parse_two_ints(
    line: &str,
    expected: &'static str,
) -> Result<(usize, usize), ParseError> {
    let mut it = line.split_whitespace();
    let bad = || ParseError::BadHeader {
        expected,
        got: line.to_string(),
    };
    let a = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let b = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((a, b))
}
