//! The reduction from classical minimum distance to quantum minimum
//! distance, with desk-scale verification and decision semantics.
//!
//! Given a parity-check matrix H on n bits and a threshold t, the
//! reduction pads H to length m = p² + p + 1 and pairs it with the
//! polarity graph on p, producing a CWS instance whose quantum distance
//! equals dist(𝒞(H)) whenever m ≥ 25·dist². [`verify_reduction`]
//! re-derives that equality at small weights by exhaustive sweep,
//! probes the minimum-weight codewords as explicit undetected
//! operators, and audits the three integer inequalities the distance
//! argument rests on.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::codes::{pad, CodeError, LinearCode};
use crate::cws::{CwsCode, CwsError, WitnessOutcome};
use crate::gf2::{BitMatrix, BitVector, ParseError};
use crate::graphs::{find_m, is_prime, polarity_graph, GraphError, SimpleGraph};
use crate::pauli::{self, PauliOperator};

/// Operator-count ceiling for exhaustive sweeps without `force`.
pub const SWEEP_OPERATOR_CAP: u128 = 1_000_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("the code has no nonzero codewords, so there is nothing to reduce")]
    ZeroDimensionalCode,
    #[error("m = {m} falls outside the guaranteed interval [{lo}, {hi}]")]
    RangeViolated { m: usize, lo: usize, hi: usize },
    #[error("custom length {m} is below the code length {n}")]
    CustomTooSmall { m: usize, n: usize },
    #[error("{0} is not p\u{b2} + p + 1 for any prime p")]
    NotPolarityOrder(usize),
    #[error("sweeping {operators} operators exceeds the cap of {cap}; pass force to override")]
    InfeasibleSweep { operators: u128, cap: u128 },
    #[error("expected {expected}, got {got:?}")]
    Format { expected: &'static str, got: String },
    #[error("the [G] section does not match the polarity graph on p = {p}")]
    GraphMismatch { p: u64 },
    #[error(transparent)]
    Matrix(#[from] ParseError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Cws(#[from] CwsError),
}

/// How the target length m is chosen from the input length n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionMode {
    /// m from the smallest prime p with p² + p + 1 ≥ 25n², which keeps
    /// m within [25n², 175n²] and preserves the distance exactly.
    Paper,
    /// m from the smallest prime p with p² + p + 1 ≥ n; exploratory,
    /// with no distance guarantee.
    Scaled,
    /// Caller-chosen m of the form p² + p + 1; choosing m ≥ 25·dist²
    /// restores the distance guarantee at testable sizes.
    CustomM(usize),
}

impl ReductionMode {
    fn label(&self) -> &'static str {
        match self {
            ReductionMode::Paper => "Paper",
            ReductionMode::Scaled => "Scaled",
            ReductionMode::CustomM(_) => "CustomM",
        }
    }
}

/// A classical-to-quantum instance: the padded parity-check matrix, the
/// polarity graph, and the threshold carried over unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInstance {
    h_prime: BitMatrix,
    graph: SimpleGraph,
    t: usize,
    mode: ReductionMode,
    p: u64,
    m: usize,
    original: Option<(usize, usize)>,
}

impl ReductionInstance {
    pub fn h_prime(&self) -> &BitMatrix {
        &self.h_prime
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn mode(&self) -> ReductionMode {
        self.mode
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Dimensions of the matrix the instance was reduced from, when the
    /// instance was built in this process rather than parsed.
    pub fn original_dims(&self) -> Option<(usize, usize)> {
        self.original
    }

    /// The CWS code the instance asks a distance question about.
    pub fn cws_code(&self) -> Result<CwsCode, ReductionError> {
        let code = LinearCode::from_parity_check(self.h_prime.clone());
        Ok(CwsCode::new(self.graph.clone(), code)?)
    }

    /// Single-file text form: magic line, threshold, mode metadata,
    /// then the `[H]` matrix block and the `[G]` edge-list block.
    pub fn render(&self) -> String {
        format!(
            "QMINDIST v1\nt {}\nmode {} p {} m {}\n[H]\n{}[G]\n{}",
            self.t,
            self.mode.label(),
            self.p,
            self.m,
            self.h_prime.render(),
            self.graph.render()
        )
    }

    pub fn parse(text: &str) -> Result<Self, ReductionError> {
        let mut lines = text.lines();
        let magic = expect(lines.next(), "QMINDIST v1")?;
        if magic != "QMINDIST v1" {
            return Err(ReductionError::Format {
                expected: "QMINDIST v1",
                got: magic.into(),
            });
        }
        let t_line = expect(lines.next(), "t <int>")?;
        let t = t_line
            .strip_prefix("t ")
            .and_then(|s| s.trim().parse::<usize>().ok())
            .ok_or(ReductionError::Format {
                expected: "t <int>",
                got: t_line.into(),
            })?;
        let mode_line = expect(lines.next(), "mode <Paper|Scaled|CustomM> p <int> m <int>")?;
        let bad_mode = || ReductionError::Format {
            expected: "mode <Paper|Scaled|CustomM> p <int> m <int>",
            got: mode_line.into(),
        };
        let fields: Vec<&str> = mode_line.split_whitespace().collect();
        let (mode_name, p, m) = match fields.as_slice() {
            ["mode", name, "p", p, "m", m] => {
                let p = p.parse::<u64>().map_err(|_| bad_mode())?;
                let m = m.parse::<usize>().map_err(|_| bad_mode())?;
                (*name, p, m)
            }
            _ => return Err(bad_mode()),
        };
        let mode = match mode_name {
            "Paper" => ReductionMode::Paper,
            "Scaled" => ReductionMode::Scaled,
            "CustomM" => ReductionMode::CustomM(m),
            _ => return Err(bad_mode()),
        };
        let h_header = expect(lines.next(), "[H]")?;
        if h_header != "[H]" {
            return Err(ReductionError::Format {
                expected: "[H]",
                got: h_header.into(),
            });
        }
        let h_prime = BitMatrix::parse(&take_block(&mut lines, 0, "[H] matrix block")?)?;
        let g_header = expect(lines.next(), "[G]")?;
        if g_header != "[G]" {
            return Err(ReductionError::Format {
                expected: "[G]",
                got: g_header.into(),
            });
        }
        let graph = SimpleGraph::parse(&take_block(&mut lines, 1, "[G] edge block")?)?;
        if let Some(extra) = lines.next() {
            return Err(ReductionError::Format {
                expected: "end of file",
                got: extra.into(),
            });
        }
        if polarity_order(m) != Some(p) {
            return Err(ReductionError::NotPolarityOrder(m));
        }
        if h_prime.num_cols() != m || graph.n() != m {
            return Err(ReductionError::Format {
                expected: "matching m, matrix width, and vertex count",
                got: format!(
                    "m = {m}, width = {}, vertices = {}",
                    h_prime.num_cols(),
                    graph.n()
                ),
            });
        }
        let reference = polarity_graph(p)?;
        if graph != reference {
            return Err(ReductionError::GraphMismatch { p });
        }
        Ok(ReductionInstance {
            h_prime,
            graph,
            t,
            mode,
            p,
            m,
            original: None,
        })
    }
}

fn expect<'a>(line: Option<&'a str>, expected: &'static str) -> Result<&'a str, ReductionError> {
    line.ok_or(ReductionError::Format {
        expected,
        got: "end of file".into(),
    })
}

fn take_block(
    lines: &mut std::str::Lines<'_>,
    count_field: usize,
    what: &'static str,
) -> Result<String, ReductionError> {
    let header = lines.next().ok_or(ReductionError::Format {
        expected: what,
        got: "end of file".into(),
    })?;
    let count = header
        .split_whitespace()
        .nth(count_field)
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or(ReductionError::Format {
            expected: what,
            got: header.into(),
        })?;
    let mut block = String::from(header);
    block.push('\n');
    for _ in 0..count {
        let line = lines.next().ok_or(ReductionError::Format {
            expected: what,
            got: "end of file".into(),
        })?;
        block.push_str(line);
        block.push('\n');
    }
    Ok(block)
}

/// The prime p with p² + p + 1 = m, when m has that form.
fn polarity_order(m: usize) -> Option<u64> {
    let mut p = 1u64;
    while p * p + p + 1 < m as u64 {
        p += 1;
    }
    (p * p + p + 1 == m as u64 && is_prime(p)).then_some(p)
}

/// The smallest prime p with p² + p + 1 ≥ n, searched directly so that
/// lengths below 8 are also served.
fn smallest_polarity_at_least(n: usize) -> (u64, u64) {
    let mut p = 2u64;
    loop {
        if is_prime(p) && p * p + p + 1 >= n as u64 {
            return (p, p * p + p + 1);
        }
        p += 1;
    }
}

/// Builds the quantum instance for (H, t) in the requested mode: pads H
/// to width m, attaches the polarity graph on p, and keeps t unchanged.
pub fn reduce(
    h: &BitMatrix,
    t: usize,
    mode: ReductionMode,
) -> Result<ReductionInstance, ReductionError> {
    let n = h.num_cols();
    if h.rank() == n {
        return Err(ReductionError::ZeroDimensionalCode);
    }
    let (p, m) = match mode {
        ReductionMode::Paper => {
            let target = 25 * n as u64 * n as u64;
            let (m, p) = find_m(target)?;
            let (lo, hi) = (25 * n * n, 175 * n * n);
            if !(lo..=hi).contains(&(m as usize)) {
                return Err(ReductionError::RangeViolated {
                    m: m as usize,
                    lo,
                    hi,
                });
            }
            (p, m)
        }
        ReductionMode::Scaled => smallest_polarity_at_least(n),
        ReductionMode::CustomM(m) => {
            if m < n {
                return Err(ReductionError::CustomTooSmall { m, n });
            }
            let p = polarity_order(m).ok_or(ReductionError::NotPolarityOrder(m))?;
            (p, m as u64)
        }
    };
    let m = m as usize;
    Ok(ReductionInstance {
        h_prime: pad(h, m)?,
        graph: polarity_graph(p)?,
        t,
        mode,
        p,
        m,
        original: Some((h.num_rows(), n)),
    })
}

/// One exact integer inequality from the distance argument, evaluated
/// at the instance's parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityCheck {
    pub name: &'static str,
    pub lhs: u128,
    pub rhs: u128,
    pub holds: bool,
}

/// One minimum-weight codeword probed as the operator Z(c).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessProbe {
    pub codeword: BitVector,
    pub weight: usize,
    pub undetected: bool,
}

/// Everything [`verify_reduction`] establishes about an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub mode: ReductionMode,
    pub w_max: usize,
    pub operators_swept: u128,
    pub sweep: WitnessOutcome,
    pub code_distance: usize,
    pub probes: Vec<WitnessProbe>,
    pub checks: Vec<InequalityCheck>,
}

impl VerificationReport {
    pub fn all_probes_undetected(&self) -> bool {
        self.probes.iter().all(|p| p.undetected)
    }

    pub fn all_checks_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Number of operators a sweep over weight ≤ `w_max` on `m` qubits
/// will visit, or an error when that exceeds the feasibility cap and
/// `force` is not set.
pub fn guard_sweep(m: usize, w_max: usize, force: bool) -> Result<u128, ReductionError> {
    let operators = pauli::enumerate_count(m, w_max);
    if !force && operators > SWEEP_OPERATOR_CAP {
        return Err(ReductionError::InfeasibleSweep {
            operators,
            cap: SWEEP_OPERATOR_CAP,
        });
    }
    Ok(operators)
}

/// Exhaustively sweeps operators of weight ≤ `w_max`, probes every
/// minimum-weight codeword of 𝒞(H′) as an explicit Z-type undetected
/// operator, and evaluates the distance argument's inequalities:
/// 25·dist² ≤ m, 2·p² ≥ m, and 16·m > 225·(dist − 1)².
pub fn verify_reduction(
    inst: &ReductionInstance,
    w_max: usize,
    force: bool,
) -> Result<VerificationReport, ReductionError> {
    assert!(w_max <= inst.m(), "w_max cannot exceed the length");
    let operators_swept = guard_sweep(inst.m(), w_max, force)?;
    let q = inst.cws_code()?;
    let sweep = q.qdist_with_witness(w_max);
    let code = LinearCode::from_parity_check(inst.h_prime.clone());
    let words = code.min_weight_codewords()?;
    let code_distance = words[0].weight();
    let probes = words
        .into_iter()
        .map(|codeword| {
            let z = PauliOperator::new(BitVector::zeros(inst.m()), codeword.clone());
            WitnessProbe {
                weight: codeword.weight(),
                undetected: !q.detects(&z),
                codeword,
            }
        })
        .collect();
    let d = code_distance as u128;
    let m = inst.m() as u128;
    let p = inst.p() as u128;
    let checks = vec![
        InequalityCheck {
            name: "25*dist^2 <= m",
            lhs: 25 * d * d,
            rhs: m,
            holds: 25 * d * d <= m,
        },
        InequalityCheck {
            name: "2*p^2 >= m",
            lhs: 2 * p * p,
            rhs: m,
            holds: 2 * p * p >= m,
        },
        InequalityCheck {
            name: "16*m > 225*(dist-1)^2",
            lhs: 16 * m,
            rhs: 225 * (d - 1) * (d - 1),
            holds: 16 * m > 225 * (d - 1) * (d - 1),
        },
    ];
    Ok(VerificationReport {
        mode: inst.mode(),
        w_max,
        operators_swept,
        sweep,
        code_distance,
        probes,
        checks,
    })
}

/// A YES/NO answer to a threshold decision problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decision::Yes => write!(f, "YES"),
            Decision::No => write!(f, "NO"),
        }
    }
}

/// Decides whether the instance's quantum distance is at most t, by
/// exhaustive sweep up to t.
pub fn decide_qmindist(inst: &ReductionInstance, force: bool) -> Result<Decision, ReductionError> {
    guard_sweep(inst.m(), inst.t(), force)?;
    let q = inst.cws_code()?;
    Ok(match q.qdist(inst.t()).found() {
        Some(_) => Decision::Yes,
        None => Decision::No,
    })
}

/// A nonnegative rational a/b used for gap factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    num: u64,
    den: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("expected <int> or <int>/<int> with a nonzero denominator, got {0:?}")]
pub struct RatioParseError(String);

impl Ratio {
    pub fn new(num: u64, den: u64) -> Option<Self> {
        (den != 0).then_some(Ratio { num, den })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_at_least_one(&self) -> bool {
        self.num >= self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }
}

impl FromStr for Ratio {
    type Err = RatioParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RatioParseError(s.to_string());
        match s.split_once('/') {
            Some((a, b)) => {
                let num = a.trim().parse().map_err(|_| bad())?;
                let den = b.trim().parse().map_err(|_| bad())?;
                Ratio::new(num, den).ok_or_else(bad)
            }
            None => {
                let num = s.trim().parse().map_err(|_| bad())?;
                Ok(Ratio { num, den: 1 })
            }
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Gap factors: γ ≥ 1 widens the threshold multiplicatively, τ ≥ 0
/// additively by τ·√m; τ = 0 disables the additive part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapParams {
    gamma: Ratio,
    tau: Ratio,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GapParamError {
    #[error("gamma must be at least 1, got {0}")]
    GammaBelowOne(Ratio),
}

impl GapParams {
    pub fn new(gamma: Ratio, tau: Ratio) -> Result<Self, GapParamError> {
        if !gamma.is_at_least_one() {
            return Err(GapParamError::GammaBelowOne(gamma));
        }
        Ok(GapParams { gamma, tau })
    }

    pub fn gamma(&self) -> Ratio {
        self.gamma
    }

    pub fn tau(&self) -> Ratio {
        self.tau
    }
}

/// Verdict against a promise gap: YES below the threshold, NO above the
/// widened threshold, and a flagged violation in the excluded middle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapVerdict {
    Yes,
    No,
    PromiseViolated,
}

impl fmt::Display for GapVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GapVerdict::Yes => write!(f, "YES"),
            GapVerdict::No => write!(f, "NO"),
            GapVerdict::PromiseViolated => write!(f, "PROMISE_VIOLATED"),
        }
    }
}

/// Classifies a measured distance against the promise gap: YES when
/// measured ≤ t, NO when measured clears both γ·t and t + τ·√m, and
/// PromiseViolated in between. All comparisons are exact: the additive
/// bound is compared by squaring, never through floating point.
pub fn gap_verdict(inst: &ReductionInstance, params: &GapParams, measured: usize) -> GapVerdict {
    let t = inst.t() as u128;
    let measured = measured as u128;
    if measured <= t {
        return GapVerdict::Yes;
    }
    let gamma = params.gamma();
    let above_multiplicative = measured * gamma.den() as u128 > gamma.num() as u128 * t;
    let tau = params.tau();
    let above_additive = if tau.is_zero() {
        true
    } else {
        let slack = (measured - t) * tau.den() as u128;
        slack * slack > tau.num() as u128 * tau.num() as u128 * inst.m() as u128
    };
    if above_multiplicative && above_additive {
        GapVerdict::No
    } else {
        GapVerdict::PromiseViolated
    }
}
