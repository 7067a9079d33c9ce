//! At-most-one-matching (ATOM) vector sets and their structure checks.
//!
//! An ATOM set is a collection of distinct GF(2) vectors in which every
//! pair of members shares at most one support position. The columns of
//! (I | A_G) form such a collection exactly when G is 4-cycle-free, and
//! the zero-sum subsets of those columns are in bijection with the
//! operators the graph code fails to detect. The checks here bound the
//! degree-gap partition of such sets and classify the minimum-size case;
//! [`atom_property_sweep`] verifies all of them exhaustively over every
//! labeled graph up to a given vertex count.

use std::cmp::Ordering;

use thiserror::Error;

use crate::exec;
use crate::gf2::{parse_two_ints, BitMatrix, BitVector, ParseError};
use crate::graphs::SimpleGraph;

/// Basis-combination cap for zero-sum subset enumeration (2^nullity
/// subsets are materialized).
const NULLITY_CAP: usize = 28;

const SWEEP_CHUNK: u64 = 1 << 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AtomError {
    #[error("member {index} has length {got}, expected {expected}")]
    LengthMismatch {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("duplicate member {0}")]
    DuplicateMember(String),
    #[error("the set is empty")]
    Empty,
    #[error("members {i} and {j} share more than one support position")]
    NotAtom { i: usize, j: usize },
    #[error("members do not sum to zero")]
    NotZeroSum,
    #[error("no member has weight above one, so the degree gap is undefined")]
    NoHeavyMember,
    #[error(transparent)]
    Header(#[from] ParseError),
}

/// A set of distinct GF(2) vectors over a common universe, kept in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorSet {
    n: usize,
    members: Vec<BitVector>,
}

/// The degree-gap partition of a vector set: the weight-1 members, the
/// members of weight above 1, and the minimum heavy weight δ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeGap {
    pub delta: usize,
    pub light: Vec<BitVector>,
    pub heavy: Vec<BitVector>,
}

/// Shape of a zero-sum ATOM set relative to the minimum size δ + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimalSetForm {
    /// Size δ + 1: one heavy vector of weight δ together with the unit
    /// vector at each of its support positions.
    HeavyPlusUnits,
    /// Size δ + 1: every member heavy of weight exactly δ, no units.
    UniformHeavy,
    /// Size above δ + 1, outside the minimum-size case.
    AboveMinimumSize,
    /// Size at most δ, or a minimum-size set matching neither form;
    /// impossible for zero-sum ATOM sets.
    BoundViolation,
}

impl VectorSet {
    /// Builds a set from members over a universe of size `n`, sorting
    /// them and rejecting duplicates.
    pub fn new(n: usize, mut members: Vec<BitVector>) -> Result<Self, AtomError> {
        for (index, v) in members.iter().enumerate() {
            if v.len() != n {
                return Err(AtomError::LengthMismatch {
                    index,
                    got: v.len(),
                    expected: n,
                });
            }
        }
        members.sort_by(|a, b| a.cmp_lex(b));
        for pair in members.windows(2) {
            if pair[0] == pair[1] {
                return Err(AtomError::DuplicateMember(pair[0].to_string()));
            }
        }
        Ok(VectorSet { n, members })
    }

    /// Selects the columns at `indices` as a set, rejecting repeats.
    pub fn from_columns(columns: &[BitVector], indices: &[usize]) -> Result<Self, AtomError> {
        let n = columns.first().map_or(0, |c| c.len());
        let members = indices.iter().map(|&i| columns[i].clone()).collect();
        VectorSet::new(n, members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[BitVector] {
        &self.members
    }

    /// Whether every pair of members shares at most one support position.
    pub fn is_atom(&self) -> bool {
        pairwise_overlap_at_most_one(&self.members).is_none()
    }

    pub fn sums_to_zero(&self) -> bool {
        let mut acc = BitVector::zeros(self.n);
        for v in &self.members {
            acc.xor_assign(v);
        }
        acc.is_zero()
    }

    /// Splits the set into weight-1 and heavier members and reports the
    /// minimum heavy weight δ; errors when no heavy member exists.
    pub fn degree_gap(&self) -> Result<DegreeGap, AtomError> {
        let mut light = Vec::new();
        let mut heavy = Vec::new();
        for v in &self.members {
            if v.weight() == 1 {
                light.push(v.clone());
            } else if v.weight() > 1 {
                heavy.push(v.clone());
            } else {
                return Err(AtomError::NoHeavyMember);
            }
        }
        let delta = heavy
            .iter()
            .map(BitVector::weight)
            .min()
            .ok_or(AtomError::NoHeavyMember)?;
        Ok(DegreeGap {
            delta,
            light,
            heavy,
        })
    }

    fn validated_gap(&self) -> Result<DegreeGap, AtomError> {
        if self.members.is_empty() {
            return Err(AtomError::Empty);
        }
        if let Some((i, j)) = pairwise_overlap_at_most_one(&self.members) {
            return Err(AtomError::NotAtom { i, j });
        }
        if !self.sums_to_zero() {
            return Err(AtomError::NotZeroSum);
        }
        self.degree_gap()
    }

    /// Whether max{|S₁|, |S_δ|} ≥ δ for the degree-gap partition; the
    /// set must be a nonempty zero-sum ATOM set with a heavy member.
    pub fn partition_bound_holds(&self) -> Result<bool, AtomError> {
        let gap = self.validated_gap()?;
        Ok(gap.light.len().max(gap.heavy.len()) >= gap.delta)
    }

    /// Classifies the set against the minimum size δ + 1 that zero-sum
    /// ATOM sets must reach, naming the two shapes that size admits.
    pub fn classify_minimal(&self) -> Result<MinimalSetForm, AtomError> {
        let gap = self.validated_gap()?;
        match self.len().cmp(&(gap.delta + 1)) {
            Ordering::Less => Ok(MinimalSetForm::BoundViolation),
            Ordering::Greater => Ok(MinimalSetForm::AboveMinimumSize),
            Ordering::Equal => {
                if let [v] = gap.heavy.as_slice() {
                    let mut units: Vec<BitVector> = v
                        .support()
                        .iter()
                        .map(|&j| BitVector::unit(self.n, j))
                        .collect();
                    units.sort_by(|a, b| a.cmp_lex(b));
                    if v.weight() == gap.delta && units == gap.light {
                        return Ok(MinimalSetForm::HeavyPlusUnits);
                    }
                }
                if gap.light.is_empty() && gap.heavy.iter().all(|v| v.weight() == gap.delta) {
                    return Ok(MinimalSetForm::UniformHeavy);
                }
                Ok(MinimalSetForm::BoundViolation)
            }
        }
    }

    /// Text form: `<count> <N>` then one 0/1 row per member.
    pub fn render(&self) -> String {
        let mut s = format!("{} {}\n", self.members.len(), self.n);
        for v in &self.members {
            s.push_str(&v.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, AtomError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or(ParseError::MissingHeader)?;
        let (count, n) = parse_two_ints(header, "<count> <N>")?;
        let mut members = Vec::with_capacity(count);
        for row in 0..count {
            let line = lines.next().ok_or(ParseError::RowCount {
                expected: count,
                found: row,
            })?;
            members.push(BitVector::parse_row(row, n, line.trim())?);
        }
        if let Some(extra) = lines.next() {
            return Err(ParseError::TrailingContent(extra.to_string()).into());
        }
        VectorSet::new(n, members)
    }
}

fn pairwise_overlap_at_most_one(members: &[BitVector]) -> Option<(usize, usize)> {
    for (i, a) in members.iter().enumerate() {
        for (j, b) in members.iter().enumerate().skip(i + 1) {
            if a.overlap(b) > 1 {
                return Some((i, j));
            }
        }
    }
    None
}

/// Whether a column list (repeats allowed) is pairwise at-most-one-
/// matching; for the columns of (I | A_G) this holds exactly when G
/// has no 4-cycle.
pub fn columns_are_atom(columns: &[BitVector]) -> bool {
    pairwise_overlap_at_most_one(columns).is_none()
}

/// The columns of (I | A_G): the n unit vectors followed by the n
/// neighborhood columns.
pub fn graph_columns(g: &SimpleGraph) -> Vec<BitVector> {
    let n = g.n();
    (0..n)
        .map(|j| BitVector::unit(n, j))
        .chain((0..n).map(|j| g.adjacency_column(j).clone()))
        .collect()
}

/// Every nonempty subset of the columns, of size at most `max_size`
/// when given, whose XOR is zero. Subsets are returned as sorted index
/// lists, ordered by size and then by indicator; without a size cap
/// there are exactly 2^nullity − 1 of them.
pub fn enumerate_zero_sum_subsets(
    columns: &[BitVector],
    max_size: Option<usize>,
) -> Vec<Vec<usize>> {
    if columns.is_empty() {
        return Vec::new();
    }
    let n = columns[0].len();
    let basis = BitMatrix::from_columns(columns, n).kernel_basis();
    let nullity = basis.len();
    assert!(
        nullity <= NULLITY_CAP,
        "nullity {nullity} exceeds the enumeration cap {NULLITY_CAP}"
    );
    let mut indicator = BitVector::zeros(columns.len());
    let mut subsets = Vec::with_capacity((1usize << nullity) - 1);
    for combo in 1u64..1 << nullity {
        indicator.xor_assign(&basis[combo.trailing_zeros() as usize]);
        if max_size.is_none_or(|cap| indicator.weight() <= cap) {
            subsets.push(indicator.clone());
        }
    }
    subsets.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.cmp_lex(b)));
    subsets.iter().map(BitVector::support).collect()
}

/// The smallest |supp(a) ∪ supp(b)| over the nonempty zero-sum subsets
/// of the columns of (I | A_G), reading index j < n as a Z position and
/// index n + j as an X position. Agrees with the graph-code distance.
pub fn zero_sum_min_error_weight(g: &SimpleGraph) -> Option<usize> {
    let n = g.n();
    enumerate_zero_sum_subsets(&graph_columns(g), None)
        .iter()
        .map(|subset| {
            let mut positions = BitVector::zeros(n);
            for &i in subset {
                positions.set(i % n, true);
            }
            positions.weight()
        })
        .min()
}

/// One failed structure check found by [`atom_property_sweep`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomViolation {
    pub n: usize,
    pub edge_mask: u64,
    pub subset: Vec<usize>,
    pub check: &'static str,
}

/// Totals from an [`atom_property_sweep`] run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomSweepReport {
    pub graphs: u64,
    pub four_cycle_free: u64,
    pub sets_checked: u64,
    pub skipped_duplicate: u64,
    pub skipped_no_heavy: u64,
    pub violations: Vec<AtomViolation>,
}

#[derive(Default)]
struct ChunkTally {
    four_cycle_free: u64,
    sets_checked: u64,
    skipped_duplicate: u64,
    skipped_no_heavy: u64,
    violations: Vec<AtomViolation>,
}

/// Checks every zero-sum subset of the columns of (I | A_G), for every
/// labeled graph G on at most `n_max` vertices without a 4-cycle:
/// the partition bound, the pigeonhole consequence for sets of size at
/// least 2δ, the heavy-member bound for sets with a heavy vector
/// disjoint from every unit member, the strengthened bound for sets
/// strictly between the extremes, and the minimum-size classification.
/// Subsets with repeated columns or no heavy member fall outside the
/// degree-gap regime and are counted as skipped.
pub fn atom_property_sweep(n_max: usize) -> AtomSweepReport {
    assert!(n_max <= 8, "sweep is sized for at most 8 vertices");
    let mut report = AtomSweepReport {
        graphs: 0,
        four_cycle_free: 0,
        sets_checked: 0,
        skipped_duplicate: 0,
        skipped_no_heavy: 0,
        violations: Vec::new(),
    };
    for n in 1..=n_max {
        let bits = n * (n - 1) / 2;
        let total = 1u64 << bits;
        report.graphs += total;
        let chunks = total.div_ceil(SWEEP_CHUNK);
        let tallies = exec::filter_map_collect(0..chunks, |chunk| {
            let lo = chunk * SWEEP_CHUNK;
            let hi = total.min(lo + SWEEP_CHUNK);
            Some(sweep_chunk(n, lo, hi))
        });
        for tally in tallies {
            report.four_cycle_free += tally.four_cycle_free;
            report.sets_checked += tally.sets_checked;
            report.skipped_duplicate += tally.skipped_duplicate;
            report.skipped_no_heavy += tally.skipped_no_heavy;
            report.violations.extend(tally.violations);
        }
    }
    report
}

fn sweep_chunk(n: usize, lo: u64, hi: u64) -> ChunkTally {
    let mut tally = ChunkTally::default();
    for mask in lo..hi {
        let g = decode_graph(n, mask);
        if g.has_four_cycle() {
            continue;
        }
        tally.four_cycle_free += 1;
        check_graph_sets(&g, mask, &mut tally);
    }
    tally
}

fn decode_graph(n: usize, mask: u64) -> SimpleGraph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    SimpleGraph::from_edges(n, &edges).expect("decoded edges are canonical")
}

fn check_graph_sets(g: &SimpleGraph, mask: u64, tally: &mut ChunkTally) {
    let n = g.n();
    let columns = graph_columns(g);
    debug_assert!(columns_are_atom(&columns));
    let subsets = enumerate_zero_sum_subsets(&columns, None);
    debug_assert_eq!(subsets.len(), (1 << n) - 1);
    let mut violations = Vec::new();
    let mut fail = |subset: &[usize], check: &'static str| {
        violations.push(AtomViolation {
            n,
            edge_mask: mask,
            subset: subset.to_vec(),
            check,
        });
    };
    for subset in &subsets {
        let set = match VectorSet::from_columns(&columns, subset) {
            Ok(set) => set,
            Err(AtomError::DuplicateMember(_)) => {
                tally.skipped_duplicate += 1;
                continue;
            }
            Err(_) => unreachable!("columns share the universe size"),
        };
        let gap = match set.validated_gap() {
            Ok(gap) => gap,
            Err(AtomError::NoHeavyMember) => {
                tally.skipped_no_heavy += 1;
                continue;
            }
            Err(_) => {
                fail(subset, "zero-sum atom preconditions");
                continue;
            }
        };
        tally.sets_checked += 1;
        let (size, delta) = (set.len(), gap.delta);
        let max_part = gap.light.len().max(gap.heavy.len());
        if max_part < delta {
            fail(subset, "partition bound");
        }
        if size >= 2 * delta && max_part < delta {
            fail(subset, "pigeonhole bound");
        }
        let disjoint_heavy = gap
            .heavy
            .iter()
            .any(|v| gap.light.iter().all(|e| v.overlap(e) == 0));
        if disjoint_heavy && gap.heavy.len() < delta + 1 {
            fail(subset, "disjoint-heavy bound");
        }
        if delta >= 3
            && (delta + 2..=2 * delta - 1).contains(&size)
            && gap.light.len() >= 2
            && gap.heavy.len() >= 2
            && max_part < delta + 1
        {
            fail(subset, "middle-size bound");
        }
        match set.classify_minimal() {
            Ok(MinimalSetForm::BoundViolation) | Err(_) => fail(subset, "minimum-size form"),
            Ok(_) => {}
        }
    }
    tally.violations.extend(violations);
}
