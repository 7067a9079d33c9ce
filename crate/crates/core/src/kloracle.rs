//! Brute-force statevector oracle for the error-detection conditions.
//!
//! Everything here is exact. Graph-basis states have amplitudes ±1
//! under an implicit global scale 2^{−n/2}, and applying a Pauli only
//! permutes amplitudes and multiplies by powers of i, so amplitudes
//! stay Gaussian integers and inner products are Gaussian integers
//! under an implicit scale 2^{−n}. The detection matrix is compared to
//! f·Identity by integer equality; no tolerances are involved.
//!
//! This is the only module that tracks phases: the operator applied for
//! X(a)Z(b) is the Hermitian Pauli i^{#Y}·X(a)·Z(b).

use std::fmt;

use thiserror::Error;

use crate::cws::CwsCode;
use crate::exec;
use crate::gf2::BitVector;
use crate::graphs::SimpleGraph;
use crate::pauli::PauliOperator;

/// Largest qubit count the oracle will materialize (2^n amplitudes).
pub const STATEVECTOR_CAP: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KlError {
    #[error("{n} qubits exceed the statevector cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// A Gaussian integer, the exact amplitude and inner-product domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub const ZERO: GaussianInt = GaussianInt { re: 0, im: 0 };
    pub const ONE: GaussianInt = GaussianInt { re: 1, im: 0 };

    pub fn new(re: i64, im: i64) -> Self {
        GaussianInt { re, im }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn conj(self) -> Self {
        GaussianInt {
            re: self.re,
            im: -self.im,
        }
    }

    /// Multiplies by i^k.
    pub fn times_i_pow(self, k: u32) -> Self {
        match k % 4 {
            0 => self,
            1 => GaussianInt {
                re: -self.im,
                im: self.re,
            },
            2 => GaussianInt {
                re: -self.re,
                im: -self.im,
            },
            _ => GaussianInt {
                re: self.im,
                im: -self.re,
            },
        }
    }

    /// Whether this is one of the units ±1, ±i.
    pub fn is_unit(self) -> bool {
        self.re * self.re + self.im * self.im == 1
    }
}

impl std::ops::Add for GaussianInt {
    type Output = GaussianInt;

    fn add(self, other: Self) -> Self {
        GaussianInt {
            re: self.re + other.re,
            im: self.im + other.im,
        }
    }
}

impl std::ops::Mul for GaussianInt {
    type Output = GaussianInt;

    fn mul(self, other: Self) -> Self {
        GaussianInt {
            re: self.re * other.re - self.im * other.im,
            im: self.re * other.im + self.im * other.re,
        }
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, 1) => write!(f, "i"),
            (0, -1) => write!(f, "-i"),
            (0, im) => write!(f, "{im}i"),
            (re, im) if im < 0 => write!(f, "{re}{im}i"),
            (re, im) => write!(f, "{re}+{im}i"),
        }
    }
}

/// An n-qubit state with Gaussian-integer amplitudes under an implicit
/// global scale 2^{−n/2}; basis index bit i is qubit i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateVector {
    n: usize,
    amps: Vec<GaussianInt>,
}

impl StateVector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[GaussianInt] {
        &self.amps
    }

    /// Exact squared norm times 2^n; 2^n for a normalized state.
    pub fn norm_sq_scaled(&self) -> i64 {
        self.amps.iter().map(|a| a.re * a.re + a.im * a.im).sum()
    }

    pub fn is_normalized(&self) -> bool {
        self.norm_sq_scaled() == 1i64 << self.n
    }
}

fn check_cap(n: usize) -> Result<(), KlError> {
    if n > STATEVECTOR_CAP {
        return Err(KlError::CapExceeded {
            n,
            cap: STATEVECTOR_CAP,
        });
    }
    Ok(())
}

fn low_mask(v: &BitVector) -> u64 {
    debug_assert!(v.len() <= 64);
    v.support().iter().fold(0u64, |m, &i| m | 1 << i)
}

/// The graph state of G: amplitude of basis string x is
/// (−1)^{#edges inside supp(x)}. The construction is verified against
/// its defining property that every generator X_i Z^{u^i} fixes it.
pub fn graph_state(g: &SimpleGraph) -> Result<StateVector, KlError> {
    let n = g.n();
    check_cap(n)?;
    let rows: Vec<u64> = (0..n).map(|i| low_mask(g.adjacency_column(i))).collect();
    let amps = (0..1usize << n)
        .map(|x| {
            let mut parity = 0u32;
            let mut rest = x as u64;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                parity ^= (rows[i] & rest).count_ones() & 1;
            }
            if parity == 1 {
                GaussianInt::new(-1, 0)
            } else {
                GaussianInt::ONE
            }
        })
        .collect();
    let state = StateVector { n, amps };
    for i in 0..n {
        let gen = PauliOperator::new(BitVector::unit(n, i), g.adjacency_column(i).clone());
        assert_eq!(
            apply_pauli(&state, &gen),
            state,
            "graph-state generator {i} must fix the state"
        );
    }
    Ok(state)
}

/// The codeword state Z(c)|s⟩ for the graph state |s⟩ of G.
pub fn codeword_state(g: &SimpleGraph, c: &BitVector) -> Result<StateVector, KlError> {
    assert_eq!(c.len(), g.n(), "codeword length must match vertex count");
    let mut state = graph_state(g)?;
    let mask = low_mask(c);
    for (x, amp) in state.amps.iter_mut().enumerate() {
        if (mask & x as u64).count_ones() & 1 == 1 {
            *amp = amp.times_i_pow(2);
        }
    }
    Ok(state)
}

/// Applies the Hermitian Pauli i^{#Y}·X(a)·Z(b): X permutes basis
/// indices, Z contributes (−1)^{⟨b,x⟩}, and each Y site one factor i.
pub fn apply_pauli(state: &StateVector, p: &PauliOperator) -> StateVector {
    assert_eq!(state.n(), p.n(), "operator length must match qubit count");
    let a = low_mask(p.x());
    let b = low_mask(p.z());
    let y_count = p.x().overlap(p.z()) as u32;
    let mut amps = vec![GaussianInt::ZERO; state.amps.len()];
    for (x, amp) in state.amps.iter().enumerate() {
        let sign = 2 * ((b & x as u64).count_ones() & 1);
        amps[x ^ a as usize] = amp.times_i_pow(y_count + sign);
    }
    StateVector { n: state.n, amps }
}

/// ⟨a|b⟩ times 2^n: the exact Gaussian-integer inner product under the
/// states' implicit normalization.
pub fn inner(a: &StateVector, b: &StateVector) -> GaussianInt {
    assert_eq!(a.n(), b.n(), "inner product needs equal qubit counts");
    a.amps
        .iter()
        .zip(&b.amps)
        .fold(GaussianInt::ZERO, |acc, (x, y)| acc + x.conj() * *y)
}

/// An exact complex dyadic rational re/2^k + i·im/2^k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadicScalar {
    pub re: i64,
    pub im: i64,
    pub log2_den: u32,
}

impl DyadicScalar {
    fn reduced(mut self) -> Self {
        while self.log2_den > 0 && self.re % 2 == 0 && self.im % 2 == 0 {
            self.re /= 2;
            self.im /= 2;
            self.log2_den -= 1;
        }
        self
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    /// Exact comparison against a small real integer value.
    pub fn equals_integer(self, v: i64) -> bool {
        self.im == 0 && self.re == v << self.log2_den
    }
}

impl fmt::Display for DyadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        let num = GaussianInt::new(r.re, r.im);
        if r.log2_den == 0 {
            write!(f, "{num}")
        } else if r.re != 0 && r.im != 0 {
            write!(f, "({num})/2^{}", r.log2_den)
        } else {
            write!(f, "{num}/2^{}", r.log2_den)
        }
    }
}

/// The full detection matrix M_{ij} = ⟨c_i|E|c_j⟩ over the 2^k
/// codeword states, with entries scaled by 2^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KlMatrix {
    dim: usize,
    log2_den: u32,
    entries: Vec<GaussianInt>,
}

impl KlMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> GaussianInt {
        self.entries[i * self.dim + j]
    }

    pub fn scalar(&self, numerator: GaussianInt) -> DyadicScalar {
        DyadicScalar {
            re: numerator.re,
            im: numerator.im,
            log2_den: self.log2_den,
        }
    }

    /// Text table of exact entries, scaled by 2^{log2_den}.
    pub fn render(&self) -> String {
        let mut s = format!("dim {} scale 2^-{}\n", self.dim, self.log2_den);
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| self.entry(i, j).to_string())
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

/// Outcome of the detection-condition evaluation: either the matrix is
/// exactly f·Identity, or some entry breaks the pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KlOutcome {
    Detected(DyadicScalar),
    Violates,
}

/// Builds M_{ij} = ⟨c_i|E|c_j⟩ over all codeword states.
pub fn kl_matrix(q: &CwsCode, e: &PauliOperator) -> Result<KlMatrix, KlError> {
    let n = q.n();
    check_cap(n)?;
    let k = q.k();
    let dim = 1usize << k;
    let mut codeword_states = Vec::with_capacity(dim);
    for mask in 0..dim as u64 {
        let c = q.code().encode(mask);
        codeword_states.push(codeword_state(q.graph(), &c)?);
    }
    let applied: Vec<StateVector> = codeword_states.iter().map(|s| apply_pauli(s, e)).collect();
    let entries = exec::filter_map_collect(0..(dim * dim) as u64, |idx| {
        let i = (idx as usize) / dim;
        let j = (idx as usize) % dim;
        Some(inner(&codeword_states[i], &applied[j]))
    });
    Ok(KlMatrix {
        dim,
        log2_den: n as u32,
        entries,
    })
}

/// Evaluates the detection condition ⟨c_i|E|c_j⟩ = δ_{ij}·f(E) by
/// exact comparison, returning the scalar f on success.
pub fn kl_f(q: &CwsCode, e: &PauliOperator) -> Result<KlOutcome, KlError> {
    let m = kl_matrix(q, e)?;
    let f = m.entry(0, 0);
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            let expected = if i == j { f } else { GaussianInt::ZERO };
            if m.entry(i, j) != expected {
                return Ok(KlOutcome::Violates);
            }
        }
    }
    Ok(KlOutcome::Detected(m.scalar(f)))
}

/// Whether the code detects E according to the statevector oracle.
pub fn detects_kl(q: &CwsCode, e: &PauliOperator) -> Result<bool, KlError> {
    Ok(matches!(kl_f(q, e)?, KlOutcome::Detected(_)))
}

/// The unit u with E|c⟩ = u·Z(Cl(E))|c⟩ for every codeword state, if a
/// single such unit exists. The existence of u, independent of the
/// codeword, is what makes the classicalization map faithful.
pub fn classicalization_unit(
    q: &CwsCode,
    e: &PauliOperator,
) -> Result<Option<GaussianInt>, KlError> {
    let n = q.n();
    check_cap(n)?;
    let cl = crate::cws::classicalize(q.graph(), e);
    let z_cl = PauliOperator::new(BitVector::zeros(n), cl);
    let mut unit: Option<GaussianInt> = None;
    for mask in 0..1u64 << q.k() {
        let c = q.code().encode(mask);
        let state = codeword_state(q.graph(), &c)?;
        let lhs = apply_pauli(&state, e);
        let rhs = apply_pauli(&state, &z_cl);
        let mut candidate: Option<GaussianInt> = None;
        for (l, r) in lhs.amplitudes().iter().zip(rhs.amplitudes()) {
            if r.is_zero() {
                if !l.is_zero() {
                    return Ok(None);
                }
                continue;
            }
            if l.is_zero() {
                return Ok(None);
            }
            // both are units: l / r = l * conj(r)
            let ratio = *l * r.conj();
            match candidate {
                None => candidate = Some(ratio),
                Some(u) if u == ratio => {}
                Some(_) => return Ok(None),
            }
        }
        let Some(u) = candidate else {
            return Ok(None);
        };
        if !u.is_unit() {
            return Ok(None);
        }
        match unit {
            None => unit = Some(u),
            Some(prev) if prev == u => {}
            Some(_) => return Ok(None),
        }
    }
    Ok(unit)
}
