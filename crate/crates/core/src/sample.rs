//! Seeded random instances for cross-checking the distance oracles.
//!
//! Everything here is deterministic in the seed: the generators draw
//! from a ChaCha stream in a fixed order, so a seed pins the exact
//! sequence of graphs and codes across runs and thread counts.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::codes::LinearCode;
use crate::cws::CwsCode;
use crate::gf2::{BitMatrix, BitVector};
use crate::graphs::SimpleGraph;

/// The stream all seeded sampling draws from.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A labeled graph on n vertices with each edge present with
/// probability 1/2, drawn in (i, j) lexicographic order.
pub fn random_graph<R: Rng>(n: usize, rng: &mut R) -> SimpleGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                edges.push((i, j));
            }
        }
    }
    SimpleGraph::from_edges(n, &edges).expect("sampled edges are canonical")
}

/// A uniformly random `rows` × `n` parity-check matrix, drawn row by
/// row with bit 0 first.
pub fn random_parity_check<R: Rng>(rows: usize, n: usize, rng: &mut R) -> BitMatrix {
    let rows = (0..rows)
        .map(|_| {
            let mut v = BitVector::zeros(n);
            for i in 0..n {
                if rng.gen_bool(0.5) {
                    v.set(i, true);
                }
            }
            v
        })
        .collect();
    BitMatrix::from_rows(rows, n)
}

/// A random code on n bits whose dimension lands in `k_range`, found
/// by rejection on the sampled parity-check rank.
pub fn random_code_with_k_in<R: Rng>(
    n: usize,
    k_range: std::ops::RangeInclusive<usize>,
    rng: &mut R,
) -> LinearCode {
    let (k_lo, k_hi) = (*k_range.start(), *k_range.end());
    assert!(k_lo >= 1 && k_hi <= n, "dimension range must fit in 1..=n");
    loop {
        let rows = rng.gen_range(n.saturating_sub(k_hi)..=n - k_lo);
        let code = LinearCode::from_parity_check(random_parity_check(rows, n, rng));
        if k_range.contains(&code.k()) {
            return code;
        }
    }
}

/// A random (graph, code) instance with the code dimension in
/// `k_range`.
pub fn random_instance<R: Rng>(
    n: usize,
    k_range: std::ops::RangeInclusive<usize>,
    rng: &mut R,
) -> CwsCode {
    let graph = random_graph(n, rng);
    let code = random_code_with_k_in(n, k_range.clone(), rng);
    CwsCode::new(graph, code).expect("sampled lengths match")
}

/// Like [`random_instance`], additionally requiring the codeword
/// supports to cover every coordinate.
pub fn random_instance_using_all<R: Rng>(
    n: usize,
    k_range: std::ops::RangeInclusive<usize>,
    rng: &mut R,
) -> CwsCode {
    let graph = random_graph(n, rng);
    loop {
        let code = random_code_with_k_in(n, k_range.clone(), rng);
        if code.uses_all_components() {
            return CwsCode::new(graph, code).expect("sampled lengths match");
        }
    }
}
