//! Binary linear codes given by parity-check matrices.
//!
//! A code is the GF(2) null space of its check matrix H. The check
//! matrix may be rank-deficient; the dimension k is always recomputed
//! as n − rank(H). Minimum distance is exact: a Gray-code sweep of the
//! 2^k message space when k is small, otherwise a weight-ordered search
//! over supports.

use thiserror::Error;

use crate::combin;
use crate::exec;
use crate::gf2::{BitMatrix, BitVector};

/// Largest code dimension for which [`LinearCode::min_distance`] sweeps
/// the full message space; larger codes fall back to weight-ordered
/// support search.
pub const DEFAULT_GRAY_THRESHOLD: usize = 24;

const CHUNK: u64 = 1 << 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("code has no nonzero codeword, so its distance is undefined")]
    NoNonzeroCodeword,
    #[error("cannot pad a length-{n} code to length {m} < {n}")]
    PadTooShort { n: usize, m: usize },
}

/// A binary [n, k] linear code, the null space of a parity-check matrix.
#[derive(Debug, Clone)]
pub struct LinearCode {
    h: BitMatrix,
    rref: BitMatrix,
    kernel: Vec<BitVector>,
}

impl LinearCode {
    /// Builds the code 𝒞(H) = {v : H·v = 0}.
    pub fn from_parity_check(h: BitMatrix) -> Self {
        let rref = h.rref();
        let kernel = rref.kernel_basis();
        LinearCode { h, rref, kernel }
    }

    pub fn n(&self) -> usize {
        self.h.num_cols()
    }

    /// Code dimension, n − rank(H).
    pub fn k(&self) -> usize {
        self.kernel.len()
    }

    pub fn rank(&self) -> usize {
        self.rref.num_rows()
    }

    /// The parity-check matrix exactly as given.
    pub fn parity_check(&self) -> &BitMatrix {
        &self.h
    }

    /// A basis of the codeword space, one vector per free column of H.
    pub fn kernel_basis(&self) -> &[BitVector] {
        &self.kernel
    }

    /// Whether v is a codeword.
    pub fn contains(&self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.n(), "vector length must match code length");
        self.rref.rows().iter().all(|row| !row.dot(v))
    }

    /// Whether the error e is detected: true unless e is a nonzero
    /// codeword.
    pub fn detects(&self, e: &BitVector) -> bool {
        e.is_zero() || !self.contains(e)
    }

    /// True iff every coordinate is hit by some codeword.
    pub fn uses_all_components(&self) -> bool {
        if self.k() == 0 {
            return false;
        }
        let mut cover = BitVector::zeros(self.n());
        for v in &self.kernel {
            for i in v.support() {
                cover.set(i, true);
            }
        }
        cover.weight() == self.n()
    }

    /// The codeword for a k-bit message mask, XOR of the selected
    /// kernel basis vectors.
    pub(crate) fn encode(&self, mask: u64) -> BitVector {
        let mut v = BitVector::zeros(self.n());
        let mut m = mask;
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            v.xor_assign(&self.kernel[j]);
            m &= m - 1;
        }
        v
    }

    /// Exact minimum Hamming weight of a nonzero codeword.
    pub fn min_distance(&self) -> Result<usize, CodeError> {
        self.min_distance_with_threshold(DEFAULT_GRAY_THRESHOLD)
    }

    /// As [`min_distance`](Self::min_distance), with an explicit cutoff
    /// for the Gray-code strategy.
    pub fn min_distance_with_threshold(&self, gray_threshold: usize) -> Result<usize, CodeError> {
        let k = self.k();
        if k == 0 {
            return Err(CodeError::NoNonzeroCodeword);
        }
        if k <= gray_threshold && k < 64 {
            Ok(self.min_distance_gray())
        } else {
            Ok(self.min_distance_weight_ordered())
        }
    }

    /// Sweeps all 2^k − 1 nonzero codewords in Gray-code order, one
    /// basis-vector XOR per step.
    fn min_distance_gray(&self) -> usize {
        let k = self.k();
        let total = 1u64 << k;
        exec::min_over_chunks(total, CHUNK, |chunk| {
            let (lo, hi) = (chunk.start, chunk.end);
            let mut c = self.encode(gray(lo));
            let mut best: Option<usize> = if lo == 0 { None } else { Some(c.weight()) };
            for i in lo + 1..hi {
                c.xor_assign(&self.kernel[i.trailing_zeros() as usize]);
                let w = c.weight();
                if best.is_none_or(|b| w < b) {
                    best = Some(w);
                }
            }
            best
        })
        .expect("k >= 1 guarantees a nonzero codeword")
    }

    /// Searches supports in order of increasing size for one whose
    /// indicator vector lies in the kernel.
    fn min_distance_weight_ordered(&self) -> usize {
        let n = self.n();
        let columns = self.column_vectors();
        for w in 1..=n {
            if self.find_codeword_of_weight(&columns, w).is_some() {
                return w;
            }
        }
        unreachable!("k >= 1 guarantees a nonzero codeword of weight <= n")
    }

    fn column_vectors(&self) -> Vec<BitVector> {
        let rows = self.h.num_rows();
        (0..self.n())
            .map(|j| {
                let mut col = BitVector::zeros(rows);
                for (i, row) in self.h.rows().iter().enumerate() {
                    if row.get(j) {
                        col.set(i, true);
                    }
                }
                col
            })
            .collect()
    }

    fn find_codeword_of_weight(&self, columns: &[BitVector], w: usize) -> Option<Vec<usize>> {
        let n = self.n();
        let total = combin::binomial_u64(n as u64, w as u64);
        let chunks = total.div_ceil(CHUNK);
        exec::find_map_first(0..chunks, |chunk| {
            let lo = chunk * CHUNK;
            let hi = total.min(lo + CHUNK);
            let mut support = Vec::with_capacity(w);
            combin::unrank_combination(n, w, lo, &mut support);
            for _ in lo..hi {
                let mut acc = BitVector::zeros(self.h.num_rows());
                for &j in &support {
                    acc.xor_assign(&columns[j]);
                }
                if acc.is_zero() {
                    return Some(support.clone());
                }
                if !combin::next_combination(n, &mut support) {
                    break;
                }
            }
            None
        })
    }

    /// All codewords of minimum weight, in lexicographic order.
    pub fn min_weight_codewords(&self) -> Result<Vec<BitVector>, CodeError> {
        let d = self.min_distance()?;
        let k = self.k();
        let mut words = if k <= DEFAULT_GRAY_THRESHOLD {
            let total = 1u64 << k;
            exec::filter_map_collect(1..total, |mask| {
                let c = self.encode(mask);
                (c.weight() == d).then_some(c)
            })
        } else {
            let columns = self.column_vectors();
            let total = combin::binomial_u64(self.n() as u64, d as u64);
            exec::filter_map_collect(0..total, |rank| {
                let mut support = Vec::with_capacity(d);
                combin::unrank_combination(self.n(), d, rank, &mut support);
                let mut acc = BitVector::zeros(self.h.num_rows());
                for &j in &support {
                    acc.xor_assign(&columns[j]);
                }
                acc.is_zero().then(|| {
                    let mut v = BitVector::zeros(self.n());
                    for &j in &support {
                        v.set(j, true);
                    }
                    v
                })
            })
        };
        words.sort_by(|a, b| a.cmp_lex(b));
        Ok(words)
    }
}

fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Block-diagonal extension H ⊕ 𝕀_{m−n}: codewords of the padded code
/// are codewords of 𝒞(H) followed by m − n zeros, so the distance is
/// unchanged.
pub fn pad(h: &BitMatrix, m: usize) -> Result<BitMatrix, CodeError> {
    let n = h.num_cols();
    if m < n {
        return Err(CodeError::PadTooShort { n, m });
    }
    let extra = m - n;
    let mut rows = Vec::with_capacity(h.num_rows() + extra);
    for row in h.rows() {
        let mut r = BitVector::zeros(m);
        for i in row.support() {
            r.set(i, true);
        }
        rows.push(r);
    }
    for i in 0..extra {
        rows.push(BitVector::unit(m, n + i));
    }
    Ok(BitMatrix::from_rows(rows, m))
}

#[cfg(test)]
pub(crate) fn hamming_7_4_check() -> BitMatrix {
    BitMatrix::parse("3 7\n1010101\n0110011\n0001111").unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn repetition_3() -> LinearCode {
        LinearCode::from_parity_check(BitMatrix::parse("2 3\n110\n011").unwrap())
    }

    #[test]
    fn construction_computes_dimension_from_rank() {
        let rep = repetition_3();
        assert_eq!((rep.n(), rep.k(), rep.rank()), (3, 1, 2));
        assert_eq!(rep.kernel_basis().len(), 1);
        assert_eq!(rep.kernel_basis()[0].to_string(), "111");

        let trivial = LinearCode::from_parity_check(BitMatrix::identity(4));
        assert_eq!(trivial.k(), 0);

        let hamming = LinearCode::from_parity_check(hamming_7_4_check());
        assert_eq!((hamming.n(), hamming.k(), hamming.rank()), (7, 4, 3));

        let redundant =
            LinearCode::from_parity_check(BitMatrix::parse("3 3\n110\n011\n101").unwrap());
        assert_eq!(redundant.k(), 1);
    }

    #[test]
    fn min_distance_frozen_values() {
        assert_eq!(repetition_3().min_distance().unwrap(), 3);
        let parity = LinearCode::from_parity_check(BitMatrix::parse("1 3\n111").unwrap());
        assert_eq!(parity.min_distance().unwrap(), 2);
        let hamming = LinearCode::from_parity_check(hamming_7_4_check());
        assert_eq!(hamming.min_distance().unwrap(), 3);
        let trivial = LinearCode::from_parity_check(BitMatrix::identity(4));
        assert_eq!(trivial.min_distance(), Err(CodeError::NoNonzeroCodeword));
    }

    #[test]
    fn strategies_agree_on_all_small_checks() {
        for n in 1..=4usize {
            for bits in 0..1u32 << (2 * n) {
                let mut rows = Vec::new();
                for r in 0..2 {
                    let mut row = BitVector::zeros(n);
                    for j in 0..n {
                        row.set(j, bits >> (r * n + j) & 1 == 1);
                    }
                    rows.push(row);
                }
                let code = LinearCode::from_parity_check(BitMatrix::from_rows(rows, n));
                if code.k() == 0 {
                    continue;
                }
                assert_eq!(
                    code.min_distance_with_threshold(24).unwrap(),
                    code.min_distance_with_threshold(0).unwrap(),
                    "n={n} bits={bits:b}"
                );
            }
        }
        let hamming = LinearCode::from_parity_check(hamming_7_4_check());
        assert_eq!(hamming.min_distance_with_threshold(0).unwrap(), 3);
    }

    #[test]
    fn detects_exactly_non_codewords_and_zero() {
        let rep = repetition_3();
        assert!(rep.detects(&BitVector::zeros(3)));
        assert!(!rep.detects(&BitVector::parse_row(0, 3, "111").unwrap()));
        assert!(rep.detects(&BitVector::parse_row(0, 3, "100").unwrap()));

        let hamming = LinearCode::from_parity_check(hamming_7_4_check());
        let mut undetected = 0;
        for bits in 0..1u32 << 7 {
            let mut v = BitVector::zeros(7);
            for j in 0..7 {
                v.set(j, bits >> j & 1 == 1);
            }
            if !hamming.detects(&v) {
                undetected += 1;
                assert!(hamming.contains(&v));
                assert!(!v.is_zero());
            }
        }
        assert_eq!(undetected, (1 << hamming.k()) - 1);
    }

    #[test]
    fn uses_all_components_checks_basis_cover() {
        assert!(repetition_3().uses_all_components());
        let trivial = LinearCode::from_parity_check(BitMatrix::identity(3));
        assert!(!trivial.uses_all_components());
        let padded = LinearCode::from_parity_check(pad(repetition_3().parity_check(), 5).unwrap());
        assert!(!padded.uses_all_components());
        let hamming = LinearCode::from_parity_check(hamming_7_4_check());
        assert!(hamming.uses_all_components());
    }

    #[test]
    fn pad_appends_identity_block() {
        let h = BitMatrix::parse("2 3\n110\n011").unwrap();
        assert_eq!(pad(&h, 3).unwrap(), h);
        let padded = pad(&h, 5).unwrap();
        assert_eq!(padded.render(), "4 5\n11000\n01100\n00010\n00001\n");
        let code = LinearCode::from_parity_check(padded);
        assert_eq!(code.k(), 1);
        assert_eq!(code.kernel_basis()[0].to_string(), "11100");
        assert_eq!(code.min_distance().unwrap(), 3);
        assert_eq!(pad(&h, 2), Err(CodeError::PadTooShort { n: 3, m: 2 }));
    }

    #[test]
    fn pad_preserves_distance() {
        let hamming_padded = pad(&hamming_7_4_check(), 13).unwrap();
        let code = LinearCode::from_parity_check(hamming_padded);
        assert_eq!(code.k(), 4);
        assert_eq!(code.min_distance().unwrap(), 3);
    }

    #[test]
    fn min_weight_codewords_are_sorted_and_exact() {
        assert_eq!(
            repetition_3()
                .min_weight_codewords()
                .unwrap()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>(),
            vec!["111"]
        );
        let parity = LinearCode::from_parity_check(BitMatrix::parse("1 3\n111").unwrap());
        assert_eq!(
            parity
                .min_weight_codewords()
                .unwrap()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>(),
            vec!["011", "101", "110"]
        );
        let hamming = LinearCode::from_parity_check(hamming_7_4_check());
        let words = hamming.min_weight_codewords().unwrap();
        assert_eq!(words.len(), 7);
        for w in &words {
            assert_eq!(w.weight(), 3);
            assert!(hamming.contains(w));
        }
    }
}
