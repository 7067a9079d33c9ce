//! Execution helpers for the enumeration sweeps.
//!
//! Every search in this crate is a pure function over an index range, so
//! the parallel and sequential builds share one shape: map indices,
//! combine with an order-insensitive reduction (min, sum, any, leftmost
//! match). With the `parallel` feature the ranges fan out over rayon;
//! without it they run as plain loops. Results are identical either way
//! and independent of thread count.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Leftmost `Some` produced by `f` over the range.
#[cfg(feature = "parallel")]
pub(crate) fn find_map_first<T, F>(range: Range<u64>, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync,
{
    range.into_par_iter().find_map_first(&f)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn find_map_first<T, F>(range: Range<u64>, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync,
{
    range.into_iter().find_map(&f)
}

/// Minimum over the `Some` values produced by `f`.
#[cfg(feature = "parallel")]
pub(crate) fn min_filter_map<T, F>(range: Range<u64>, f: F) -> Option<T>
where
    T: Ord + Send,
    F: Fn(u64) -> Option<T> + Sync,
{
    range.into_par_iter().filter_map(&f).min()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn min_filter_map<T, F>(range: Range<u64>, f: F) -> Option<T>
where
    T: Ord + Send,
    F: Fn(u64) -> Option<T> + Sync,
{
    range.into_iter().filter_map(&f).min()
}

/// All `Some` values produced by `f`, in index order.
#[cfg(feature = "parallel")]
pub(crate) fn filter_map_collect<T, F>(range: Range<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync,
{
    range.into_par_iter().filter_map(&f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn filter_map_collect<T, F>(range: Range<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync,
{
    range.into_iter().filter_map(&f).collect()
}

/// Splits `0..total` into contiguous chunks of at most `chunk_size` and
/// takes the minimum of `f` over the chunks.
pub(crate) fn min_over_chunks<T, F>(total: u64, chunk_size: u64, f: F) -> Option<T>
where
    T: Ord + Send,
    F: Fn(Range<u64>) -> Option<T> + Sync,
{
    assert!(chunk_size > 0);
    let chunks = total.div_ceil(chunk_size);
    min_filter_map(0..chunks, |c| {
        let lo = c * chunk_size;
        let hi = (lo + chunk_size).min(total);
        f(lo..hi)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_map_first_is_leftmost() {
        let hit = find_map_first(0..10_000, |i| (i % 537 == 536).then_some(i));
        assert_eq!(hit, Some(536));
    }

    #[test]
    fn min_filter_map_finds_global_min() {
        let min = min_filter_map(0..10_000, |i| {
            (i % 3 == 0).then_some((i as i64 - 7_777).abs())
        });
        assert_eq!(min, Some(1));
    }

    #[test]
    fn collect_preserves_index_order() {
        let v = filter_map_collect(0..1_000, |i| (i % 97 == 0).then_some(i));
        let mut sorted = v.clone();
        sorted.sort();
        assert_eq!(v, sorted);
        assert_eq!(v.len(), 11);
    }

    #[test]
    fn chunked_min_covers_full_range() {
        let min = min_over_chunks(1_000, 64, |r| r.map(|i| (i as i64 - 613).abs()).min());
        assert_eq!(min, Some(0));
    }
}
