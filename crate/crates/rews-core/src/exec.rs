//! Minimal data-parallel plumbing over index ranges.
//!
//! Sweeps fold contiguous ranges of packed sign integers into partial
//! accumulators and merge them; merging is associative and commutative, so
//! results do not depend on shard count or order. With the `parallel` feature
//! disabled every helper degrades to a plain sequential fold.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Folds `0..len` into an accumulator, in parallel when requested and built.
pub(crate) fn fold_range<A, Init, Fold, Merge>(
    len: u64,
    parallel: bool,
    init: Init,
    fold: Fold,
    merge: Merge,
) -> A
where
    A: Send,
    Init: Fn() -> A + Sync + Send,
    Fold: Fn(A, u64) -> A + Sync + Send,
    Merge: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return (0..len)
            .into_par_iter()
            .fold(&init, |acc, v| fold(acc, v))
            .reduce(&init, merge);
    }
    let _ = &merge;
    let _ = parallel;
    (0..len).fold(init(), fold)
}

/// Maps `0..len` preserving index order.
pub(crate) fn map_range<T, F>(len: u64, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..len).map(f).collect()
}
