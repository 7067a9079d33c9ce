//! Codeword-stabilized quantum codes built from a graph and a binary
//! linear code.
//!
//! The graph fixes a graph state; the classical code fixes the word
//! operators Z(c). Error detection reduces to a classical condition on
//! the classicalization map Cl(X(a)Z(b)) = b ⊕ ⊕_{a_i=1} u^i, where u^i
//! are adjacency columns: an error with Cl ≠ 0 is detected unless Cl is
//! a nonzero codeword, and an error with Cl = 0 is detected exactly
//! when it commutes with every word operator. All searches run in
//! weight order and report a cap overflow as a distinct outcome rather
//! than a sentinel value.

use std::collections::HashSet;

use thiserror::Error;

use crate::codes::LinearCode;
use crate::combin;
use crate::exec;
use crate::gf2::{parse_two_ints, BitMatrix, BitVector, ParseError};
use crate::graphs::SimpleGraph;
use crate::pauli::{self, Letter, PauliOperator, PauliParseError};

const CODEWORD_SET_MAX_K: usize = 16;
const SWEEP_CHUNK: u64 = 1 << 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CwsError {
    #[error("graph has {graph_n} vertices but code has length {code_n}")]
    LengthMismatch { graph_n: usize, code_n: usize },
    #[error("degeneracy is undefined for a code with no logical space (k = 0)")]
    DegeneracyUndefined,
    #[error("generator rows {i} and {j} do not commute")]
    NonCommutingRows { i: usize, j: usize },
    #[error("row {row} has length {got}, expected {expected}")]
    RowLength {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error(transparent)]
    Header(#[from] ParseError),
    #[error(transparent)]
    Row(#[from] PauliParseError),
}

/// Result of a weight-capped minimum search. `AboveCap` means every
/// candidate up to the cap was examined and none qualified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(usize),
    AboveCap,
}

impl SearchOutcome {
    pub fn found(self) -> Option<usize> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            SearchOutcome::AboveCap => None,
        }
    }
}

/// A capped minimum search that also reports a minimizing operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found {
        weight: usize,
        witness: PauliOperator,
    },
    AboveCap,
}

impl WitnessOutcome {
    pub fn outcome(&self) -> SearchOutcome {
        match self {
            WitnessOutcome::Found { weight, .. } => SearchOutcome::Found(*weight),
            WitnessOutcome::AboveCap => SearchOutcome::AboveCap,
        }
    }
}

/// The classicalization of X(a)Z(b): b XOR the adjacency columns u^i
/// over the X-support.
pub fn classicalize(g: &SimpleGraph, e: &PauliOperator) -> BitVector {
    assert_eq!(g.n(), e.n(), "operator length must match vertex count");
    let mut cl = e.z().clone();
    for i in e.x().support() {
        cl.xor_assign(g.adjacency_column(i));
    }
    cl
}

/// A CWS code: a graph paired with a classical linear code of the same
/// length, whose codewords index the word operators Z(c).
#[derive(Debug, Clone)]
pub struct CwsCode {
    graph: SimpleGraph,
    code: LinearCode,
    codewords: Option<HashSet<BitVector>>,
}

impl CwsCode {
    pub fn new(graph: SimpleGraph, code: LinearCode) -> Result<Self, CwsError> {
        if graph.n() != code.n() {
            return Err(CwsError::LengthMismatch {
                graph_n: graph.n(),
                code_n: code.n(),
            });
        }
        let codewords = (code.k() <= CODEWORD_SET_MAX_K).then(|| {
            let mut set = HashSet::with_capacity(1 << code.k());
            let mut c = BitVector::zeros(code.n());
            set.insert(c.clone());
            for i in 1..1u64 << code.k() {
                c.xor_assign(&code.kernel_basis()[i.trailing_zeros() as usize]);
                set.insert(c.clone());
            }
            set
        });
        Ok(CwsCode {
            graph,
            code,
            codewords,
        })
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> usize {
        self.code.k()
    }

    fn is_codeword(&self, v: &BitVector) -> bool {
        match &self.codewords {
            Some(set) => set.contains(v),
            None => self.code.contains(v),
        }
    }

    /// Whether the code detects the error E: with Cl(E) ≠ 0, E must not
    /// classicalize to a nonzero codeword; with Cl(E) = 0, E must
    /// commute with every word operator (checked on the kernel basis,
    /// commutation being linear in the codeword).
    pub fn detects(&self, e: &PauliOperator) -> bool {
        let cl = classicalize(&self.graph, e);
        if cl.is_zero() {
            self.code.kernel_basis().iter().all(|c| !e.x().dot(c))
        } else {
            !self.is_codeword(&cl)
        }
    }

    /// Minimum weight of a non-identity undetected Pauli, searched in
    /// weight order up to w_cap.
    pub fn qdist(&self, w_cap: usize) -> SearchOutcome {
        self.qdist_with_witness(w_cap).outcome()
    }

    /// As [`qdist`](Self::qdist), returning the first undetected
    /// operator in enumeration order (weight, then support, then
    /// letters with X < Y < Z).
    pub fn qdist_with_witness(&self, w_cap: usize) -> WitnessOutcome {
        let cap = w_cap.min(self.n());
        for w in 1..=cap {
            if let Some(witness) =
                search_supports(self.n(), w, |support| self.scan_support(support))
            {
                return WitnessOutcome::Found { weight: w, witness };
            }
        }
        WitnessOutcome::AboveCap
    }

    /// Scans the 3^w errors with exactly this support in letter order.
    /// The classicalization is updated incrementally: stepping one
    /// letter flips at most one z-bit and one adjacency column.
    fn scan_support(&self, support: &[usize]) -> Option<PauliOperator> {
        let w = support.len();
        let mut letters = vec![0u8; w];
        let mut cl = BitVector::zeros(self.n());
        for &s in support {
            cl.xor_assign(self.graph.adjacency_column(s));
        }
        loop {
            if self.undetected(support, &letters, &cl) {
                return Some(operator_from(self.n(), support, &letters));
            }
            if !self.advance(support, &mut letters, &mut cl) {
                return None;
            }
        }
    }

    fn undetected(&self, support: &[usize], letters: &[u8], cl: &BitVector) -> bool {
        if cl.is_zero() {
            let mut a = BitVector::zeros(self.n());
            for (pos, &s) in support.iter().enumerate() {
                if letters[pos] != 2 {
                    a.set(s, true);
                }
            }
            self.code.kernel_basis().iter().any(|c| a.dot(c))
        } else {
            self.is_codeword(cl)
        }
    }

    fn advance(&self, support: &[usize], letters: &mut [u8], cl: &mut BitVector) -> bool {
        for pos in (0..letters.len()).rev() {
            let s = support[pos];
            match letters[pos] {
                0 => {
                    letters[pos] = 1;
                    cl.set(s, !cl.get(s));
                    return true;
                }
                1 => {
                    letters[pos] = 2;
                    cl.xor_assign(self.graph.adjacency_column(s));
                    return true;
                }
                _ => {
                    letters[pos] = 0;
                    cl.set(s, !cl.get(s));
                    cl.xor_assign(self.graph.adjacency_column(s));
                }
            }
        }
        false
    }

    /// Whether some undetected error is strictly lighter than every
    /// non-identity element of the graph stabilizer, i.e. whether the
    /// graph-state distance exceeds the quantum distance.
    pub fn is_degenerate(&self) -> Result<bool, CwsError> {
        if self.code.k() == 0 {
            return Err(CwsError::DegeneracyUndefined);
        }
        let qd = match self.qdist(self.n()) {
            SearchOutcome::Found(d) => d,
            // k >= 1 makes the word operator of any nonzero codeword an
            // undetected error, so the full-cap search always lands.
            SearchOutcome::AboveCap => unreachable!("k >= 1 admits an undetected word operator"),
        };
        Ok(match gdist(&self.graph, Some(qd)) {
            SearchOutcome::Found(g) => g < qd,
            SearchOutcome::AboveCap => false,
        })
    }

    /// Stabilizer generators of the CWS code: one row (h | A_G·h) per
    /// independent row h of the parity-check matrix.
    pub fn to_stabilizer(&self) -> SymplecticMatrix {
        let h = self.code.parity_check();
        let rows = h
            .independent_row_indices()
            .into_iter()
            .map(|i| {
                let a = h.row(i).clone();
                let mut b = BitVector::zeros(self.n());
                for s in a.support() {
                    b.xor_assign(self.graph.adjacency_column(s));
                }
                PauliOperator::new(a, b)
            })
            .collect();
        SymplecticMatrix::new(self.n(), rows)
            .expect("rows (h | A·h) commute because A is symmetric")
    }
}

fn operator_from(n: usize, support: &[usize], letters: &[u8]) -> PauliOperator {
    const LETTERS: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];
    let letters: Vec<Letter> = letters.iter().map(|&d| LETTERS[d as usize]).collect();
    pauli::from_support(n, support, &letters)
}

fn support_chunk(w: usize) -> u64 {
    (4096u64 >> w.min(11)).max(8)
}

/// Finds the first support (in lexicographic rank order) of size w for
/// which the scanner yields an operator; partitions the rank space for
/// the parallel backend while keeping the result deterministic.
fn search_supports<F>(n: usize, w: usize, scan: F) -> Option<PauliOperator>
where
    F: Fn(&[usize]) -> Option<PauliOperator> + Sync + Send,
{
    let total = combin::binomial_u64(n as u64, w as u64);
    let chunk = support_chunk(w);
    let chunks = total.div_ceil(chunk);
    exec::find_map_first(0..chunks, |ci| {
        let lo = ci * chunk;
        let hi = total.min(lo + chunk);
        let mut support = Vec::with_capacity(w);
        combin::unrank_combination(n, w, lo, &mut support);
        for _ in lo..hi {
            if let Some(p) = scan(&support) {
                return Some(p);
            }
            if !combin::next_combination(n, &mut support) {
                break;
            }
        }
        None
    })
}

/// Minimum weight of a non-identity graph-stabilizer element: the
/// search ranges over the 2^n − 1 nonzero X-parts a, each contributing
/// the unique element (a | A_G·a) of weight |supp(a) ∪ supp(A_G·a)|.
pub fn gdist(g: &SimpleGraph, cap: Option<usize>) -> SearchOutcome {
    gdist_with_witness(g, cap).outcome()
}

/// As [`gdist`], returning the minimizing stabilizer element X(a)Z(A_G·a).
pub fn gdist_with_witness(g: &SimpleGraph, cap: Option<usize>) -> WitnessOutcome {
    let n = g.n();
    if n == 0 {
        return WitnessOutcome::AboveCap;
    }
    let cap = cap.unwrap_or(n).min(n);
    let mut best: Option<(usize, usize, u64)> = None;
    for w in 1..=cap {
        if best.is_some_and(|(value, _, _)| value <= w) {
            break;
        }
        let upper = best.map_or(usize::MAX, |(value, _, _)| value);
        if let Some((value, rank)) = gdist_level_min(g, w, upper) {
            best = Some((value, w, rank));
        }
    }
    match best {
        Some((value, w, rank)) if value <= cap => {
            let mut support = Vec::with_capacity(w);
            combin::unrank_combination(n, w, rank, &mut support);
            let mut a = BitVector::zeros(n);
            for &s in &support {
                a.set(s, true);
            }
            let mut b = BitVector::zeros(n);
            for &s in &support {
                b.xor_assign(g.adjacency_column(s));
            }
            WitnessOutcome::Found {
                weight: value,
                witness: PauliOperator::new(a, b),
            }
        }
        _ => WitnessOutcome::AboveCap,
    }
}

/// Minimum over supports of size w of the stabilizer-element weight,
/// restricted to values strictly below `upper`; ties resolve to the
/// smallest support rank.
fn gdist_level_min(g: &SimpleGraph, w: usize, upper: usize) -> Option<(usize, u64)> {
    let n = g.n();
    let total = combin::binomial_u64(n as u64, w as u64);
    exec::min_over_chunks(total, SWEEP_CHUNK, |chunk| {
        let (lo, hi) = (chunk.start, chunk.end);
        let mut support = Vec::with_capacity(w);
        combin::unrank_combination(n, w, lo, &mut support);
        let mut best: Option<(usize, u64)> = None;
        for rank in lo..hi {
            let mut b = BitVector::zeros(n);
            for &s in &support {
                b.xor_assign(g.adjacency_column(s));
            }
            for &s in &support {
                b.set(s, true);
            }
            let value = b.weight();
            if value < upper && best.is_none_or(|(v, _)| value < v) {
                best = Some((value, rank));
            }
            if !combin::next_combination(n, &mut support) {
                break;
            }
        }
        best
    })
}

/// A list of pairwise-commuting phase-free Pauli generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticMatrix {
    n: usize,
    rows: Vec<PauliOperator>,
}

impl SymplecticMatrix {
    pub fn new(n: usize, rows: Vec<PauliOperator>) -> Result<Self, CwsError> {
        for (i, r) in rows.iter().enumerate() {
            if r.n() != n {
                return Err(CwsError::RowLength {
                    row: i,
                    got: r.n(),
                    expected: n,
                });
            }
        }
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                if !rows[i].commutes(&rows[j]) {
                    return Err(CwsError::NonCommutingRows { i, j });
                }
            }
        }
        Ok(SymplecticMatrix { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[PauliOperator] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    fn row_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(
            self.rows.iter().map(|p| p.symplectic_row()).collect(),
            2 * self.n,
        )
    }

    /// Rank of the generators as 2n-bit rows.
    pub fn rank(&self) -> usize {
        self.row_matrix().rref().num_rows()
    }

    /// Logical qubit count n − rank.
    pub fn logical_k(&self) -> usize {
        self.n - self.rank()
    }

    /// Renders the text form: `<rows> <n>` then one `a|b` line per row.
    pub fn render(&self) -> String {
        let mut s = format!("{} {}\n", self.rows.len(), self.n);
        for row in &self.rows {
            s.push_str(&row.render_symplectic_row());
            s.push('\n');
        }
        s
    }

    /// Parses the [`render`](Self::render) format and validates that
    /// the rows commute.
    pub fn parse(text: &str) -> Result<Self, CwsError> {
        let mut lines = text.lines();
        let header = lines.next().ok_or(ParseError::MissingHeader)?;
        let (rows, n) = parse_two_ints(header, "<rows> <n>")?;
        let mut out = Vec::with_capacity(rows);
        for row in 0..rows {
            let line = lines.next().ok_or(ParseError::RowCount {
                expected: rows,
                found: row,
            })?;
            out.push(PauliOperator::parse_symplectic_row(row, n, line)?);
        }
        if let Some(extra) = lines.next() {
            return Err(CwsError::Header(ParseError::TrailingContent(
                extra.to_string(),
            )));
        }
        Self::new(n, out)
    }
}

/// The standard graph-state generators (e^i | u^i), one per vertex.
pub fn graph_stabilizer(g: &SimpleGraph) -> SymplecticMatrix {
    let n = g.n();
    let rows = (0..n)
        .map(|i| PauliOperator::new(BitVector::unit(n, i), g.adjacency_column(i).clone()))
        .collect();
    SymplecticMatrix::new(n, rows).expect("graph-state generators commute")
}

/// Minimum-weight search against a stabilizer matrix: with logical
/// qubits present, the lightest non-identity Pauli that commutes with
/// every generator yet lies outside their row space; with none, the
/// lightest nonzero row-space element.
pub fn stab_distance(s: &SymplecticMatrix, w_cap: usize) -> SearchOutcome {
    stab_distance_with_witness(s, w_cap).outcome()
}

/// As [`stab_distance`], returning the first qualifying operator in
/// enumeration order.
pub fn stab_distance_with_witness(s: &SymplecticMatrix, w_cap: usize) -> WitnessOutcome {
    let n = s.n();
    let rref = s.row_matrix().rref();
    let k = n - rref.num_rows();
    let cap = w_cap.min(n);
    for w in 1..=cap {
        let found = search_supports(n, w, |support| scan_support_stab(s, &rref, k, support));
        if let Some(witness) = found {
            return WitnessOutcome::Found { weight: w, witness };
        }
    }
    WitnessOutcome::AboveCap
}

fn scan_support_stab(
    s: &SymplecticMatrix,
    rref: &BitMatrix,
    k: usize,
    support: &[usize],
) -> Option<PauliOperator> {
    let mut letters = vec![0u8; support.len()];
    loop {
        let p = operator_from(s.n(), support, &letters);
        let qualifies = if k > 0 {
            s.rows().iter().all(|r| r.commutes(&p)) && !rref.reduces_to_zero(&p.symplectic_row())
        } else {
            rref.reduces_to_zero(&p.symplectic_row())
        };
        if qualifies {
            return Some(p);
        }
        if !next_word(&mut letters) {
            return None;
        }
    }
}

fn next_word(letters: &mut [u8]) -> bool {
    for l in letters.iter_mut().rev() {
        if *l < 2 {
            *l += 1;
            return true;
        }
        *l = 0;
    }
    false
}

/// One graph violating the claimed gdist bound during a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepViolation {
    pub n: usize,
    pub edge_mask: u64,
    pub min_degree: usize,
    pub gdist: usize,
}

/// Totals from [`gdist_bound_sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SweepReport {
    pub graphs: u64,
    pub four_cycle_free: u64,
    pub violations: u64,
    pub first_violation: Option<SweepViolation>,
}

#[derive(Default, Clone, Copy)]
struct ChunkStats {
    four_cycle_free: u64,
    violations: u64,
    first_violation: Option<SweepViolation>,
}

/// Sweeps every labeled graph on 1..=n_max vertices and checks that
/// each 4-cycle-free one has gdist equal to its minimum degree δ or
/// δ+1. Graphs are encoded as edge bit masks over the pairs (i, j),
/// i < j, in lexicographic order.
pub fn gdist_bound_sweep(n_max: usize) -> SweepReport {
    assert!(n_max <= 11, "edge mask must fit in 64 bits");
    let mut report = SweepReport::default();
    for n in 1..=n_max {
        let bits = n * (n - 1) / 2;
        let total = 1u64 << bits;
        let chunks = total.div_ceil(SWEEP_CHUNK);
        let stats = exec::filter_map_collect(0..chunks, |ci| {
            let lo = ci * SWEEP_CHUNK;
            let hi = total.min(lo + SWEEP_CHUNK);
            Some(sweep_chunk(n, lo, hi))
        });
        report.graphs += total;
        for s in stats {
            report.four_cycle_free += s.four_cycle_free;
            report.violations += s.violations;
            if report.first_violation.is_none() {
                report.first_violation = s.first_violation;
            }
        }
    }
    report
}

fn sweep_chunk(n: usize, lo: u64, hi: u64) -> ChunkStats {
    let mut stats = ChunkStats::default();
    let mut rows = vec![0u32; n];
    for mask in lo..hi {
        decode_adjacency(n, mask, &mut rows);
        if has_four_cycle_u32(&rows) {
            continue;
        }
        stats.four_cycle_free += 1;
        let delta = rows.iter().map(|r| r.count_ones() as usize).min().unwrap();
        let gd = gdist_u32(&rows);
        if gd != delta && gd != delta + 1 {
            stats.violations += 1;
            if stats.first_violation.is_none() {
                stats.first_violation = Some(SweepViolation {
                    n,
                    edge_mask: mask,
                    min_degree: delta,
                    gdist: gd,
                });
            }
        }
    }
    stats
}

fn decode_adjacency(n: usize, mask: u64, rows: &mut [u32]) {
    rows.fill(0);
    let mut t = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> t & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            t += 1;
        }
    }
}

fn has_four_cycle_u32(rows: &[u32]) -> bool {
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if (rows[i] & rows[j]).count_ones() >= 2 {
                return true;
            }
        }
    }
    false
}

/// Word-sized gdist for sweep graphs: Gray-code walk over all nonzero
/// X-parts with one adjacency-row XOR per step.
fn gdist_u32(rows: &[u32]) -> usize {
    let n = rows.len();
    let mut a = 0u32;
    let mut e = 0u32;
    let mut best = usize::MAX;
    for i in 1..1u64 << n {
        let flip = i.trailing_zeros() as usize;
        a ^= 1 << flip;
        e ^= rows[flip];
        best = best.min((a | e).count_ones() as usize);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::polarity_graph;

    fn k3() -> SimpleGraph {
        SimpleGraph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    fn c5() -> SimpleGraph {
        SimpleGraph::from_edges(5, &[(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]).unwrap()
    }

    fn repetition_code(n: usize) -> LinearCode {
        let rows = (0..n - 1)
            .map(|i| {
                let mut r = BitVector::zeros(n);
                r.set(i, true);
                r.set(i + 1, true);
                r
            })
            .collect();
        LinearCode::from_parity_check(BitMatrix::from_rows(rows, n))
    }

    fn k3_rep() -> CwsCode {
        CwsCode::new(k3(), repetition_code(3)).unwrap()
    }

    fn pauli(s: &str) -> PauliOperator {
        PauliOperator::parse(s).unwrap()
    }

    #[test]
    fn classicalize_frozen_values() {
        let g = k3();
        assert!(classicalize(&g, &PauliOperator::identity(3)).is_zero());
        let z = pauli("ZIZ");
        assert_eq!(classicalize(&g, &z).to_string(), "101");
        let s0 = PauliOperator::new(BitVector::unit(3, 0), g.adjacency_column(0).clone());
        assert!(classicalize(&g, &s0).is_zero());
        let y0 = pauli("YII");
        assert_eq!(classicalize(&g, &y0).to_string(), "111");
    }

    #[test]
    fn classicalize_is_a_homomorphism() {
        let g = c5();
        let ops: Vec<PauliOperator> = pauli::enumerate_paulis(5, 2).collect();
        for p in ops.iter().step_by(7) {
            for q in ops.iter().step_by(5) {
                assert_eq!(
                    classicalize(&g, &p.compose(q)),
                    classicalize(&g, p).xor(&classicalize(&g, q))
                );
            }
        }
    }

    #[test]
    fn detection_frozen_cases() {
        let q = k3_rep();
        assert!(!q.detects(&pauli("ZZZ")));
        assert!(q.detects(&PauliOperator::new(
            BitVector::parse_row(0, 3, "110").unwrap(),
            BitVector::parse_row(0, 3, "110").unwrap(),
        )));
        assert!(!q.detects(&pauli("YII")));
        assert!(q.detects(&PauliOperator::identity(3)));
    }

    #[test]
    fn cws_construction_rejects_length_mismatch() {
        let err = CwsCode::new(k3(), repetition_code(4)).unwrap_err();
        assert_eq!(
            err,
            CwsError::LengthMismatch {
                graph_n: 3,
                code_n: 4
            }
        );
    }

    #[test]
    fn gdist_frozen_values() {
        assert_eq!(gdist(&k3(), None), SearchOutcome::Found(2));
        let star = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(gdist(&star, None), SearchOutcome::Found(2));
        let edge = SimpleGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(gdist(&edge, None), SearchOutcome::Found(2));
        assert_eq!(gdist(&c5(), None), SearchOutcome::Found(3));
        assert_eq!(gdist(&k3(), Some(1)), SearchOutcome::AboveCap);
        assert_eq!(gdist(&k3(), Some(2)), SearchOutcome::Found(2));
    }

    #[test]
    fn gdist_witness_is_a_stabilizer_element() {
        let g = c5();
        let WitnessOutcome::Found { weight, witness } = gdist_with_witness(&g, None) else {
            panic!("uncapped gdist always lands");
        };
        assert_eq!(weight, 3);
        assert_eq!(witness.weight(), 3);
        assert!(classicalize(&g, &witness).is_zero());

        let WitnessOutcome::Found { witness, .. } = gdist_with_witness(&k3(), None) else {
            panic!("uncapped gdist always lands");
        };
        assert_eq!(witness.to_string(), "YYI");
    }

    #[test]
    fn gdist_is_bounded_by_min_degree_plus_one() {
        for g in [k3(), c5(), polarity_graph(3).unwrap()] {
            let bound = g.min_degree() + 1;
            let SearchOutcome::Found(gd) = gdist(&g, None) else {
                panic!("uncapped gdist always lands");
            };
            assert!(gd <= bound);
        }
    }

    #[test]
    fn qdist_frozen_values() {
        let q = k3_rep();
        match q.qdist_with_witness(3) {
            WitnessOutcome::Found { weight, witness } => {
                assert_eq!(weight, 1);
                assert_eq!(witness.to_string(), "YII");
            }
            WitnessOutcome::AboveCap => panic!("weight-1 witness expected"),
        }

        let q5 = CwsCode::new(c5(), repetition_code(5)).unwrap();
        assert_eq!(q5.qdist(2), SearchOutcome::AboveCap);
        assert_eq!(q5.qdist(3), SearchOutcome::Found(3));
        assert_eq!(q5.qdist(0), SearchOutcome::AboveCap);
    }

    #[test]
    fn qdist_witness_matches_global_enumeration_order() {
        let degenerate = degenerate_instance();
        for q in [
            k3_rep(),
            CwsCode::new(c5(), repetition_code(5)).unwrap(),
            degenerate,
        ] {
            let by_enum = pauli::enumerate_paulis(q.n(), q.n())
                .find(|e| !q.detects(e))
                .expect("k >= 1 admits an undetected error");
            match q.qdist_with_witness(q.n()) {
                WitnessOutcome::Found { weight, witness } => {
                    assert_eq!(weight, by_enum.weight());
                    assert_eq!(witness, by_enum);
                }
                WitnessOutcome::AboveCap => panic!("search must land"),
            }
        }
    }

    fn degenerate_instance() -> CwsCode {
        let g =
            SimpleGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let h = BitMatrix::parse("4 5\n11000\n00100\n00010\n00001").unwrap();
        CwsCode::new(g, LinearCode::from_parity_check(h)).unwrap()
    }

    #[test]
    fn degeneracy_classification() {
        assert!(!k3_rep().is_degenerate().unwrap());

        let q = degenerate_instance();
        assert_eq!(q.qdist(5), SearchOutcome::Found(2));
        assert_eq!(gdist(q.graph(), None), SearchOutcome::Found(1));
        assert!(q.is_degenerate().unwrap());

        let trivial =
            CwsCode::new(k3(), LinearCode::from_parity_check(BitMatrix::identity(3))).unwrap();
        assert_eq!(trivial.is_degenerate(), Err(CwsError::DegeneracyUndefined));
    }

    #[test]
    fn stabilizer_export_frozen_rows() {
        let s = k3_rep().to_stabilizer();
        assert_eq!(s.num_rows(), 2);
        assert_eq!(s.rows()[0].render_symplectic_row(), "110|110");
        assert_eq!(s.rows()[1].render_symplectic_row(), "011|011");
        assert!(s.rows()[0].commutes(&s.rows()[1]));
        assert_eq!(s.logical_k(), 1);

        let graph_state =
            CwsCode::new(k3(), LinearCode::from_parity_check(BitMatrix::identity(3))).unwrap();
        let gs = graph_state.to_stabilizer();
        assert_eq!(gs.num_rows(), 3);
        assert_eq!(gs, graph_stabilizer(&k3()));
        assert_eq!(gs.logical_k(), 0);

        let full = CwsCode::new(
            k3(),
            LinearCode::from_parity_check(BitMatrix::parse("1 3\n000").unwrap()),
        )
        .unwrap();
        assert_eq!(full.to_stabilizer().num_rows(), 0);
    }

    #[test]
    fn stabilizer_rows_commute_with_word_operators_and_are_detected() {
        for q in [k3_rep(), CwsCode::new(c5(), repetition_code(5)).unwrap()] {
            let s = q.to_stabilizer();
            for row in s.rows() {
                for c in q.code().kernel_basis() {
                    let word = PauliOperator::new(BitVector::zeros(q.n()), c.clone());
                    assert!(row.commutes(&word));
                }
            }
            for mask in 0..1u32 << s.num_rows() {
                let mut e = PauliOperator::identity(q.n());
                for (i, row) in s.rows().iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        e = e.compose(row);
                    }
                }
                assert!(q.detects(&e));
            }
        }
    }

    #[test]
    fn stab_distance_frozen_values() {
        assert_eq!(
            stab_distance(&graph_stabilizer(&k3()), 3),
            SearchOutcome::Found(2)
        );
        match stab_distance_with_witness(&k3_rep().to_stabilizer(), 3) {
            WitnessOutcome::Found { weight, witness } => {
                assert_eq!(weight, 1);
                assert_eq!(witness.to_string(), "YII");
            }
            WitnessOutcome::AboveCap => panic!("weight-1 element expected"),
        }
        let single = SymplecticMatrix::new(1, vec![pauli("Z")]).unwrap();
        match stab_distance_with_witness(&single, 1) {
            WitnessOutcome::Found { weight, witness } => {
                assert_eq!(weight, 1);
                assert_eq!(witness.to_string(), "Z");
            }
            WitnessOutcome::AboveCap => panic!("weight-1 element expected"),
        }
        assert_eq!(stab_distance(&single, 0), SearchOutcome::AboveCap);
    }

    #[test]
    fn stab_distance_agrees_with_qdist_and_gdist() {
        for q in [
            k3_rep(),
            CwsCode::new(c5(), repetition_code(5)).unwrap(),
            degenerate_instance(),
        ] {
            assert_eq!(stab_distance(&q.to_stabilizer(), q.n()), q.qdist(q.n()));
        }
        for g in [k3(), c5()] {
            assert_eq!(stab_distance(&graph_stabilizer(&g), g.n()), gdist(&g, None));
        }
    }

    #[test]
    fn symplectic_matrix_validation_and_format() {
        let err = SymplecticMatrix::new(1, vec![pauli("X"), pauli("Z")]).unwrap_err();
        assert_eq!(err, CwsError::NonCommutingRows { i: 0, j: 1 });
        let err = SymplecticMatrix::new(2, vec![pauli("X")]).unwrap_err();
        assert_eq!(
            err,
            CwsError::RowLength {
                row: 0,
                got: 1,
                expected: 2
            }
        );

        let s = k3_rep().to_stabilizer();
        assert_eq!(s.render(), "2 3\n110|110\n011|011\n");
        assert_eq!(SymplecticMatrix::parse(&s.render()).unwrap(), s);
        assert!(SymplecticMatrix::parse("1 3\n110\n").is_err());
        assert!(SymplecticMatrix::parse("2 1\n1|0\n0|1\n").is_err());
        assert!(SymplecticMatrix::parse("1 3\n110|110\nextra\n").is_err());
    }

    #[test]
    fn sweep_matches_general_path_on_small_graphs() {
        for n in 1..=4usize {
            let bits = n * (n - 1) / 2;
            for mask in 0..1u64 << bits {
                let mut rows = vec![0u32; n];
                decode_adjacency(n, mask, &mut rows);
                let bit_rows: Vec<BitVector> = rows
                    .iter()
                    .map(|&r| {
                        let mut v = BitVector::zeros(n);
                        for j in 0..n {
                            if r >> j & 1 == 1 {
                                v.set(j, true);
                            }
                        }
                        v
                    })
                    .collect();
                let g = SimpleGraph::from_adjacency_rows(bit_rows);
                assert_eq!(has_four_cycle_u32(&rows), g.has_four_cycle(), "mask {mask}");
                assert_eq!(
                    SearchOutcome::Found(gdist_u32(&rows)),
                    gdist(&g, None),
                    "mask {mask}"
                );
            }
        }
    }

    #[test]
    fn sweep_small_graphs_have_no_violations() {
        let report = gdist_bound_sweep(5);
        assert_eq!(report.graphs, 1 + 2 + 8 + 64 + 1024);
        assert_eq!(report.violations, 0);
        assert_eq!(report.first_violation, None);
        assert!(report.four_cycle_free > 0);
    }
}
