//! Thin layer over rayon so every hot loop has a sequential twin when the
//! `parallel` feature is disabled.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Fold over `range` then merge partial accumulators. Each partial fold sees a
/// contiguous ascending sub-range, so `fold` may rely on visiting items in
/// increasing order within one accumulator.
#[cfg(feature = "parallel")]
pub(crate) fn fold_range<A, ID, F, R>(range: Range<u64>, identity: ID, fold: F, reduce: R) -> A
where
    A: Send,
    ID: Fn() -> A + Sync + Send,
    F: Fn(A, u64) -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    range.into_par_iter().fold(&identity, fold).reduce(&identity, reduce)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn fold_range<A, ID, F, R>(range: Range<u64>, identity: ID, fold: F, _reduce: R) -> A
where
    ID: Fn() -> A,
    F: Fn(A, u64) -> A,
    R: Fn(A, A) -> A,
{
    range.fold(identity(), fold)
}

/// Order-preserving parallel map.
#[cfg(feature = "parallel")]
pub(crate) fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    if threads == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn with_threads<R: Send>(_threads: usize, f: impl FnOnce() -> R + Send) -> R {
    f()
}
