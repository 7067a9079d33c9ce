//! Randomized structural properties of the GF(2), Pauli, code, and
//! search layers, cross-checking fast implementations against naive
//! re-derivations on small random inputs.

use proptest::prelude::*;

use qdist_core::codes::LinearCode;
use qdist_core::cws::{self, CwsCode};
use qdist_core::gf2::{BitMatrix, BitVector};
use qdist_core::graphs::SimpleGraph;
use qdist_core::pauli::PauliOperator;
use qdist_core::sample;

fn bit_matrix(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
    proptest::collection::vec(proptest::collection::vec(any::<bool>(), cols), rows).prop_map(
        move |bits| {
            let mut m = BitMatrix::zeros(bits.len(), cols);
            for (i, row) in bits.iter().enumerate() {
                for (j, &b) in row.iter().enumerate() {
                    m.set(i, j, b);
                }
            }
            m
        },
    )
}

fn bit_vector(len: usize) -> impl Strategy<Value = BitVector> {
    proptest::collection::vec(any::<bool>(), len).prop_map(move |bits| {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    })
}

fn pauli_operator(n: usize) -> impl Strategy<Value = PauliOperator> {
    (bit_vector(n), bit_vector(n)).prop_map(|(x, z)| PauliOperator::new(x, z))
}

fn edge_graph(n: usize) -> impl Strategy<Value = SimpleGraph> {
    let all: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let count = all.len();
    proptest::collection::vec(any::<bool>(), count).prop_map(move |keep| {
        let edges: Vec<(usize, usize)> = all
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(&e, _)| e)
            .collect();
        SimpleGraph::from_edges(n, &edges).unwrap()
    })
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in (1usize..6, 1usize..10).prop_flat_map(|(r, c)| bit_matrix(r, c))) {
        let once = m.rref();
        prop_assert_eq!(once.rref(), once);
    }

    #[test]
    fn kernel_vectors_annihilate(m in (1usize..6, 1usize..10).prop_flat_map(|(r, c)| bit_matrix(r, c))) {
        let rank = m.rank();
        let basis = m.kernel_basis();
        prop_assert_eq!(rank + basis.len(), m.num_cols());
        for v in &basis {
            prop_assert_eq!(m.mat_vec(v).weight(), 0);
        }
    }

    #[test]
    fn pauli_text_round_trips(e in (1usize..9).prop_flat_map(pauli_operator)) {
        let text = e.to_string();
        prop_assert_eq!(PauliOperator::parse(&text).unwrap(), e);
    }

    #[test]
    fn pauli_weight_counts_active_sites(e in (1usize..9).prop_flat_map(pauli_operator)) {
        let by_letter = e
            .to_string()
            .chars()
            .filter(|&c| c != 'I')
            .count();
        prop_assert_eq!(e.weight(), by_letter);
    }

    #[test]
    fn composition_is_supported_on_the_symmetric_difference(
        (a, b) in (1usize..9).prop_flat_map(|n| (pauli_operator(n), pauli_operator(n)))
    ) {
        let c = a.compose(&b);
        prop_assert_eq!(c.x(), &a.x().xor(b.x()));
        prop_assert_eq!(c.z(), &a.z().xor(b.z()));
    }

    #[test]
    fn commutation_matches_symplectic_form(
        (a, b) in (1usize..9).prop_flat_map(|n| (pauli_operator(n), pauli_operator(n)))
    ) {
        let form = a.x().dot(b.z()) ^ a.z().dot(b.x());
        prop_assert_eq!(a.commutes(&b), !form);
    }

    #[test]
    fn min_distance_matches_exhaustive_kernel_scan(
        m in (1usize..4, 3usize..8).prop_flat_map(|(r, c)| bit_matrix(r, c))
    ) {
        let code = LinearCode::from_parity_check(m);
        let naive = (1u64..1 << code.n())
            .filter_map(|mask| {
                let v = mask_vector(code.n(), mask);
                code.contains(&v).then(|| v.weight())
            })
            .min();
        match naive {
            Some(d) => prop_assert_eq!(code.min_distance().unwrap(), d),
            None => prop_assert!(code.min_distance().is_err()),
        }
    }

    #[test]
    fn classicalization_is_linear(
        (g, a, b) in (2usize..7).prop_flat_map(|n| (edge_graph(n), pauli_operator(n), pauli_operator(n)))
    ) {
        let lhs = cws::classicalize(&g, &a.compose(&b));
        let rhs = cws::classicalize(&g, &a).xor(&cws::classicalize(&g, &b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gdist_witness_weight_is_minimal(g in (2usize..6).prop_flat_map(edge_graph)) {
        let direct = cws::gdist(&g, None).found();
        let naive = (1u64..1 << g.n())
            .map(|mask| {
                let a = mask_vector(g.n(), mask);
                PauliOperator::new(a.clone(), g.adjacency().mat_vec(&a)).weight()
            })
            .min();
        prop_assert_eq!(direct, naive);
    }

    #[test]
    fn detection_is_invariant_under_dual_code_stabilizers(
        (q, e, mask) in (3usize..7).prop_flat_map(|n| {
            (Just(n), any::<u64>()).prop_flat_map(move |(n, seed)| {
                (Just(sampled(n, seed)), pauli_operator(n), any::<u64>())
            })
        })
    ) {
        let h = q.code().parity_check();
        let mut s = BitVector::zeros(q.n());
        for (i, row) in h.rows().iter().enumerate() {
            if mask >> (i % 64) & 1 == 1 {
                s.xor_assign(row);
            }
        }
        let stab = PauliOperator::new(s.clone(), q.graph().adjacency().mat_vec(&s));
        prop_assert_eq!(q.detects(&e), q.detects(&e.compose(&stab)));
    }
}

fn sampled(n: usize, seed: u64) -> CwsCode {
    let mut rng = sample::seeded_rng(seed);
    sample::random_instance(n, 1..=2, &mut rng)
}

fn mask_vector(n: usize, mask: u64) -> BitVector {
    let mut v = BitVector::zeros(n);
    for i in 0..n {
        v.set(i, mask >> i & 1 == 1);
    }
    v
}
