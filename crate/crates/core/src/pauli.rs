//! Phase-free n-qubit Pauli operators in symplectic form.
//!
//! An operator X(a)Z(b) is the pair of GF(2) vectors (a, b); the letter
//! at site i is I, X, Y or Z according to (a_i, b_i) = (0,0), (1,0),
//! (1,1), (0,1). Global phases are dropped throughout: composition is
//! coordinatewise XOR and commutation is the symplectic form. The
//! statevector oracle is the one place signs are reconstructed.

use std::fmt;

use thiserror::Error;

use crate::combin;
use crate::gf2::BitVector;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PauliParseError {
    #[error("invalid character {0:?}: expected I, X, Y or Z")]
    BadLetter(char),
    #[error("row {row}: expected `<a-part>|<b-part>` with one `|`")]
    BadSymplecticRow { row: usize },
    #[error("row {row}: halves have lengths {a} and {b}, expected {n}")]
    SymplecticLength {
        row: usize,
        a: usize,
        b: usize,
        n: usize,
    },
}

/// Single-site Pauli letter, ordered X < Y < Z for enumeration ties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    X,
    Y,
    Z,
}

impl Letter {
    fn bits(self) -> (bool, bool) {
        match self {
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }
}

/// A phase-free Pauli operator X(a)Z(b) on n qubits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVector,
    z: BitVector,
}

impl PauliOperator {
    /// Builds X(a)Z(b). The parts must have equal length.
    pub fn new(x: BitVector, z: BitVector) -> Self {
        assert_eq!(x.len(), z.len(), "x and z parts must have equal length");
        PauliOperator { x, z }
    }

    pub fn identity(n: usize) -> Self {
        PauliOperator {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
        }
    }

    /// The weight-1 operator acting as `letter` on `site`.
    pub fn single(n: usize, site: usize, letter: Letter) -> Self {
        let mut p = Self::identity(n);
        let (xb, zb) = letter.bits();
        if xb {
            p.x.set(site, true);
        }
        if zb {
            p.z.set(site, true);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &BitVector {
        &self.x
    }

    pub fn z(&self) -> &BitVector {
        &self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Number of sites acted on non-trivially: |supp(a) ∪ supp(b)|.
    pub fn weight(&self) -> usize {
        self.x.union_weight(&self.z)
    }

    /// Whether the operators commute, i.e. the symplectic form
    /// ⟨P.x, Q.z⟩ ⊕ ⟨Q.x, P.z⟩ vanishes.
    pub fn commutes(&self, other: &PauliOperator) -> bool {
        assert_eq!(self.n(), other.n(), "length mismatch in commutes");
        self.x.dot(&other.z) == other.x.dot(&self.z)
    }

    /// Phase-free product: coordinatewise XOR of both parts.
    pub fn compose(&self, other: &PauliOperator) -> PauliOperator {
        assert_eq!(self.n(), other.n(), "length mismatch in compose");
        PauliOperator {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        }
    }

    /// Parses a string over {I, X, Y, Z}.
    pub fn parse(s: &str) -> Result<Self, PauliParseError> {
        let n = s.chars().count();
        let mut x = BitVector::zeros(n);
        let mut z = BitVector::zeros(n);
        for (i, c) in s.chars().enumerate() {
            match c {
                'I' => {}
                'X' => x.set(i, true),
                'Y' => {
                    x.set(i, true);
                    z.set(i, true);
                }
                'Z' => z.set(i, true),
                _ => return Err(PauliParseError::BadLetter(c)),
            }
        }
        Ok(PauliOperator { x, z })
    }

    /// The 2n-bit concatenation (a | b), used for row-space tests on
    /// stabilizer matrices.
    pub fn symplectic_row(&self) -> BitVector {
        let n = self.n();
        let mut v = BitVector::zeros(2 * n);
        for i in self.x.support() {
            v.set(i, true);
        }
        for i in self.z.support() {
            v.set(n + i, true);
        }
        v
    }

    /// Inverse of [`symplectic_row`](Self::symplectic_row).
    pub fn from_symplectic_row(v: &BitVector) -> Self {
        assert_eq!(v.len() % 2, 0, "symplectic row must have even length");
        let n = v.len() / 2;
        let mut x = BitVector::zeros(n);
        let mut z = BitVector::zeros(n);
        for i in v.support() {
            if i < n {
                x.set(i, true);
            } else {
                z.set(i - n, true);
            }
        }
        PauliOperator { x, z }
    }

    /// Parses one `<a-part>|<b-part>` line of the symplectic text format.
    pub fn parse_symplectic_row(row: usize, n: usize, line: &str) -> Result<Self, PauliParseError> {
        let Some((a, b)) = line.split_once('|') else {
            return Err(PauliParseError::BadSymplecticRow { row });
        };
        if a.len() != n || b.len() != n || line.matches('|').count() != 1 {
            return Err(PauliParseError::SymplecticLength {
                row,
                a: a.len(),
                b: b.len(),
                n,
            });
        }
        let parse_half = |s: &str| -> Result<BitVector, PauliParseError> {
            BitVector::parse_row(row, n, s).map_err(|e| match e {
                crate::gf2::ParseError::BadDigit { c, .. } => PauliParseError::BadLetter(c),
                _ => PauliParseError::BadSymplecticRow { row },
            })
        };
        Ok(PauliOperator {
            x: parse_half(a)?,
            z: parse_half(b)?,
        })
    }

    /// Renders the `<a-part>|<b-part>` form.
    pub fn render_symplectic_row(&self) -> String {
        format!("{}|{}", self.x, self.z)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n() {
            let c = match (self.x.get(i), self.z.get(i)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (true, true) => 'Y',
                (false, true) => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOperator({self})")
    }
}

/// Builds the operator with the given support and per-site letters.
pub fn from_support(n: usize, support: &[usize], letters: &[Letter]) -> PauliOperator {
    assert_eq!(support.len(), letters.len());
    let mut x = BitVector::zeros(n);
    let mut z = BitVector::zeros(n);
    for (&site, &letter) in support.iter().zip(letters) {
        let (xb, zb) = letter.bits();
        if xb {
            x.set(site, true);
        }
        if zb {
            z.set(site, true);
        }
    }
    PauliOperator::new(x, z)
}

/// Number of operators [`enumerate_paulis`] yields: Σ_{w=1..w_max} C(n,w)·3^w.
pub fn enumerate_count(n: usize, w_max: usize) -> u128 {
    combin::pauli_count(n as u64, w_max as u64)
}

/// Streams every non-identity operator of weight ≤ w_max exactly once,
/// in non-decreasing weight order; ties are broken by support
/// (lexicographic as sorted index tuples) and then by the per-site
/// letter word with X < Y < Z, leftmost site most significant.
pub fn enumerate_paulis(n: usize, w_max: usize) -> WeightOrderedPaulis {
    WeightOrderedPaulis::new(n, w_max)
}

pub struct WeightOrderedPaulis {
    n: usize,
    w_max: usize,
    support: Vec<usize>,
    letters: Vec<u8>,
    exhausted: bool,
}

impl WeightOrderedPaulis {
    fn new(n: usize, w_max: usize) -> Self {
        let w_max = w_max.min(n);
        let exhausted = w_max == 0;
        WeightOrderedPaulis {
            n,
            w_max,
            support: (0..1.min(n)).collect(),
            letters: vec![0; 1.min(n)],
            exhausted,
        }
    }

    fn advance(&mut self) {
        for d in self.letters.iter_mut().rev() {
            if *d < 2 {
                *d += 1;
                return;
            }
            *d = 0;
        }
        if combin::next_combination(self.n, &mut self.support) {
            return;
        }
        let w = self.support.len() + 1;
        if w > self.w_max {
            self.exhausted = true;
            return;
        }
        self.support = (0..w).collect();
        self.letters = vec![0; w];
    }
}

impl Iterator for WeightOrderedPaulis {
    type Item = PauliOperator;

    fn next(&mut self) -> Option<PauliOperator> {
        if self.exhausted {
            return None;
        }
        const LETTERS: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];
        let letters: Vec<Letter> = self.letters.iter().map(|&d| LETTERS[d as usize]).collect();
        let item = from_support(self.n, &self.support, &letters);
        self.advance();
        Some(item)
    }
}
