//! Combination counting and unranking for the weight-ordered sweeps.
//!
//! Supports are enumerated as w-subsets of {0..n-1} in lexicographic
//! order; unranking lets a parallel partition jump to an arbitrary
//! position in that order without replaying the stream.

/// Binomial coefficient as u128, saturating on overflow.
pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Binomial coefficient clamped into u64.
pub(crate) fn binomial_u64(n: u64, k: u64) -> u64 {
    binomial(n, k).min(u64::MAX as u128) as u64
}

/// Number of non-identity Paulis on n sites with weight at most w_max,
/// saturating: sum over w of C(n,w)·3^w.
pub(crate) fn pauli_count(n: u64, w_max: u64) -> u128 {
    let mut total: u128 = 0;
    for w in 1..=w_max.min(n) {
        let c = binomial(n, w);
        let mut pow3: u128 = 1;
        for _ in 0..w {
            pow3 = match pow3.checked_mul(3) {
                Some(v) => v,
                None => return u128::MAX,
            };
        }
        let term = match c.checked_mul(pow3) {
            Some(v) => v,
            None => return u128::MAX,
        };
        total = match total.checked_add(term) {
            Some(v) => v,
            None => return u128::MAX,
        };
    }
    total
}

/// Writes the `rank`-th w-subset of {0..n-1} in lexicographic order
/// into `out` (cleared first).
pub(crate) fn unrank_combination(n: usize, w: usize, rank: u64, out: &mut Vec<usize>) {
    debug_assert!(rank < binomial_u64(n as u64, w as u64));
    out.clear();
    let mut rank = rank as u128;
    let mut next = 0usize;
    for pos in 0..w {
        let remaining = w - 1 - pos;
        loop {
            let with_next = binomial((n - 1 - next) as u64, remaining as u64);
            if rank < with_next {
                break;
            }
            rank -= with_next;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
}

/// Advances `c` to the next w-subset of {0..n-1} in lexicographic order.
/// Returns false when `c` was the last one.
pub(crate) fn next_combination(n: usize, c: &mut [usize]) -> bool {
    let w = c.len();
    for i in (0..w).rev() {
        if c[i] < n - w + i {
            c[i] += 1;
            for j in i + 1..w {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
