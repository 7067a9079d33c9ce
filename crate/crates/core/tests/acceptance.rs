//! End-to-end acceptance checks, one test per shipped guarantee.
//!
//! Each test prints a single `criterion NN PASS` line on success, so a
//! full run doubles as a checklist of what this crate promises: the
//! graph-state distance window, the polarity-graph family, the prime
//! interval search, agreement of the three independent distance
//! oracles, the scalar classification of detected errors, distance
//! preservation and the audit inequalities of the classical-to-quantum
//! reduction, the zero-sum column-subset structure theorems,
//! non-degeneracy of reduction outputs, and the minimum-degree and
//! classical-distance upper bounds.

use std::time::Instant;

use qdist_core::atomsets;
use qdist_core::codes::LinearCode;
use qdist_core::cws::{self, CwsCode};
use qdist_core::gf2::{BitMatrix, BitVector};
use qdist_core::graphs;
use qdist_core::kloracle::{self, KlOutcome};
use qdist_core::pauli::{self, PauliOperator};
use qdist_core::reduction::{self, ReductionInstance, ReductionMode};
use qdist_core::sample;

const ORACLE_SEED: u64 = 20260822;
const BOUNDS_SEED: u64 = 1407;

fn rep3_check() -> BitMatrix {
    BitMatrix::parse("2 3\n110\n011").unwrap()
}

fn hamming_check() -> BitMatrix {
    BitMatrix::parse("3 7\n1010101\n0110011\n0001111").unwrap()
}

/// Deterministic stream of (graph, code) instances with n in 4..=8 and
/// dimension 1 or 2, shared by the oracle-agreement criteria.
fn oracle_instances(count: usize) -> Vec<CwsCode> {
    let mut rng = sample::seeded_rng(ORACLE_SEED);
    (0..count)
        .map(|i| sample::random_instance(4 + i % 5, 1..=2, &mut rng))
        .collect()
}

/// Smallest weight at which the statevector oracle reports a violation,
/// found by scanning operators in weight order.
fn kl_qdist(q: &CwsCode) -> usize {
    for e in pauli::enumerate_paulis(q.n(), q.n()) {
        if kloracle::kl_f(q, &e).unwrap() == KlOutcome::Violates {
            return e.weight();
        }
    }
    panic!("a code with k >= 1 has a violating operator");
}

fn paper_instance(h: &BitMatrix, t: usize) -> ReductionInstance {
    reduction::reduce(h, t, ReductionMode::Paper).unwrap()
}

#[test]
fn criterion_01_gdist_within_one_of_min_degree() {
    let start = Instant::now();
    let report = cws::gdist_bound_sweep(7);
    assert_eq!(report.graphs, 2_131_019, "labeled graphs on 1..=7 vertices");
    assert!(report.four_cycle_free > 0);
    assert_eq!(report.violations, 0, "first: {:?}", report.first_violation);
    assert!(
        start.elapsed().as_secs() < 600,
        "sweep exceeded ten minutes"
    );
    println!(
        "criterion 01 PASS: gdist in {{delta, delta+1}} for all {} four-cycle-free graphs on <= 7 vertices",
        report.four_cycle_free
    );
}

#[test]
fn criterion_02_polarity_graph_family() {
    let start = Instant::now();
    for p in [2u64, 3, 5, 7, 11, 13] {
        let g = graphs::polarity_graph(p).unwrap();
        let m = (p * p + p + 1) as usize;
        assert_eq!(g.n(), m, "vertex count for p = {p}");
        for (i, &d) in g.degrees().iter().enumerate() {
            assert!(
                d == p as usize || d == p as usize + 1,
                "degree {d} at vertex {i} for p = {p}"
            );
        }
        for i in 0..m {
            for j in i + 1..m {
                assert!(g.common_neighbors(i, j) < 2, "pair ({i}, {j}) for p = {p}");
            }
        }
    }
    let g2 = graphs::polarity_graph(2).unwrap();
    assert_eq!(g2.n(), 7);
    assert_eq!(
        g2.edges(),
        vec![
            (0, 4),
            (0, 5),
            (0, 6),
            (1, 3),
            (1, 4),
            (2, 3),
            (2, 6),
            (3, 5),
            (4, 6)
        ],
        "hand-derived orthogonality edges over GF(2)"
    );
    assert!(
        start.elapsed().as_secs() < 10,
        "family check exceeded ten seconds"
    );
    println!(
        "criterion 02 PASS: polarity graphs for p in {{2,3,5,7,11,13}} have the promised shape"
    );
}

#[test]
fn criterion_03_prime_interval_search() {
    let start = Instant::now();
    for n in 8..=10_000u64 {
        let (m, p) = graphs::find_m(n).unwrap();
        assert!(graphs::is_prime(p), "p = {p} for n = {n}");
        assert_eq!(m, p * p + p + 1, "m for n = {n}");
        assert!(n <= m && m <= 7 * n, "m = {m} outside [n, 7n] for n = {n}");
    }
    assert!(start.elapsed().as_secs() < 60, "search exceeded one minute");
    println!("criterion 03 PASS: find_m lands in [n, 7n] with p prime for all 8 <= n <= 10000");
}

#[test]
fn criterion_04_distance_oracle_triangle() {
    let start = Instant::now();
    let instances = oracle_instances(200);
    for (i, q) in instances.iter().enumerate() {
        assert!(q.k() >= 1);
        let direct = q.qdist(q.n()).found().expect("k >= 1 admits a violation");
        let via_stabilizer = cws::stab_distance(&q.to_stabilizer(), q.n())
            .found()
            .expect("stabilizer view agrees a violation exists");
        let via_statevector = kl_qdist(q);
        assert_eq!(direct, via_stabilizer, "instance {i}");
        assert_eq!(direct, via_statevector, "instance {i}");
        for e in pauli::enumerate_paulis(q.n(), 3.min(q.n())) {
            assert_eq!(
                q.detects(&e),
                kloracle::detects_kl(q, &e).unwrap(),
                "instance {i}, E = {e}"
            );
        }
    }
    assert!(
        start.elapsed().as_secs() < 900,
        "triangle exceeded fifteen minutes"
    );
    println!("criterion 04 PASS: three distance oracles agree on 200 seeded instances");
}

#[test]
fn criterion_05_detected_scalar_classification() {
    let instances = oracle_instances(200);
    for (i, q) in instances.iter().enumerate() {
        let qd = q.qdist(q.n()).found().expect("k >= 1 admits a violation");
        for e in pauli::enumerate_paulis(q.n(), qd.saturating_sub(1)) {
            let f = match kloracle::kl_f(q, &e).unwrap() {
                KlOutcome::Detected(f) => f,
                KlOutcome::Violates => {
                    panic!("instance {i}: {e} violates below the distance")
                }
            };
            assert!(
                f.equals_integer(0) || f.equals_integer(1) || f.equals_integer(-1),
                "instance {i}, E = {e}: f = {f}"
            );
            let cl_zero = cws::classicalize(q.graph(), &e).weight() == 0;
            assert_eq!(
                !f.equals_integer(0),
                cl_zero,
                "instance {i}, E = {e}: f = {f}"
            );
        }
    }
    println!("criterion 05 PASS: below the distance, f is 0 or +/-1 and nonzero exactly on the graph stabilizer");
}

#[test]
fn criterion_06_distance_preservation_paper_mode() {
    let start = Instant::now();

    let rep = paper_instance(&rep3_check(), 2);
    assert_eq!(rep.m(), 307);
    let q_rep = rep.cws_code().unwrap();
    assert_eq!(pauli::enumerate_count(307, 2), 423_660);
    assert!(
        q_rep.qdist(2).found().is_none(),
        "an undetected operator of weight <= 2 exists for the repetition instance"
    );
    let mut c_rep = BitVector::zeros(307);
    for i in 0..3 {
        c_rep.set(i, true);
    }
    let witness_rep = PauliOperator::new(BitVector::zeros(307), c_rep);
    assert_eq!(witness_rep.weight(), 3);
    assert!(!q_rep.detects(&witness_rep), "Z over the embedded codeword");
    let rep_elapsed = start.elapsed();
    assert!(
        rep_elapsed.as_secs() < 60,
        "repetition sweep exceeded one minute"
    );

    let ham_start = Instant::now();
    let ham = paper_instance(&hamming_check(), 2);
    assert_eq!(ham.m(), 1407);
    let q_ham = ham.cws_code().unwrap();
    assert!(
        q_ham.qdist(2).found().is_none(),
        "an undetected operator of weight <= 2 exists for the Hamming instance"
    );
    let codeword = BitVector::parse_row(0, 7, "1110000").unwrap();
    assert!(LinearCode::from_parity_check(hamming_check()).contains(&codeword));
    let mut c_ham = BitVector::zeros(1407);
    for i in codeword.support() {
        c_ham.set(i, true);
    }
    let witness_ham = PauliOperator::new(BitVector::zeros(1407), c_ham);
    assert_eq!(witness_ham.weight(), 3);
    assert!(!q_ham.detects(&witness_ham), "Z over the embedded codeword");
    assert!(
        ham_start.elapsed().as_secs() < 600,
        "Hamming sweep exceeded ten minutes"
    );
    println!("criterion 06 PASS: paper-mode instances keep distance 3 at lengths 307 and 1407");
}

#[test]
fn criterion_07_reduction_audit_inequalities() {
    for h in [rep3_check(), hamming_check()] {
        let inst = paper_instance(&h, 2);
        let report = reduction::verify_reduction(&inst, 1, false).unwrap();
        assert!(
            report.all_checks_hold(),
            "failed checks: {:?}",
            report
                .checks
                .iter()
                .filter(|c| !c.holds)
                .collect::<Vec<_>>()
        );
        assert!(report.all_probes_undetected());
    }
    println!("criterion 07 PASS: both paper-mode reports confirm the three audit inequalities");
}

#[test]
fn criterion_08_zero_sum_column_subsets() {
    let start = Instant::now();
    let report = atomsets::atom_property_sweep(6);
    assert_eq!(report.graphs, 33_867, "labeled graphs on 1..=6 vertices");
    assert_eq!(report.four_cycle_free, 8_597);
    assert!(report.sets_checked > 0);
    assert!(
        report.violations.is_empty(),
        "first: {:?}",
        report.violations.first()
    );
    assert!(
        start.elapsed().as_secs() < 600,
        "sweep exceeded ten minutes"
    );
    println!(
        "criterion 08 PASS: all {} zero-sum column subsets satisfy the structure theorems",
        report.sets_checked
    );
}

#[test]
fn criterion_09_reduction_output_nondegenerate() {
    let inst = reduction::reduce(&rep3_check(), 2, ReductionMode::CustomM(307)).unwrap();
    assert_eq!(inst.p(), 17);
    let q = inst.cws_code().unwrap();
    assert_eq!(q.qdist(3).found(), Some(3));
    assert!(
        cws::gdist(inst.graph(), Some(3)).found().is_none(),
        "polarity graph keeps its stabilizer weight above the code distance"
    );
    assert!(!q.is_degenerate().unwrap());
    println!("criterion 09 PASS: the length-307 distance-3 instance is non-degenerate");
}

#[test]
fn criterion_10_min_degree_and_classical_distance_bounds() {
    let start = Instant::now();
    let mut rng = sample::seeded_rng(BOUNDS_SEED);
    for i in 0..500 {
        let n = 4 + i % 7;
        let q = sample::random_instance_using_all(n, 1..=2, &mut rng);
        let delta = q.graph().min_degree();
        let dist = q.code().min_distance().unwrap();
        let cap = (delta + 1).min(dist);
        let qd = q
            .qdist(cap)
            .found()
            .unwrap_or_else(|| panic!("instance {i}: qdist above min({}, {dist})", delta + 1));
        assert!(qd <= cap, "instance {i}");
        assert!(
            cws::gdist(q.graph(), Some(delta + 1)).found().is_some(),
            "instance {i}: gdist above delta + 1"
        );
    }
    assert!(
        start.elapsed().as_secs() < 600,
        "bounds check exceeded ten minutes"
    );
    println!("criterion 10 PASS: qdist <= min(delta+1, dist) and gdist <= delta+1 on 500 seeded instances");
}
