// SPDX-License-Identifier: Apache-2.0

//! Order-preserving batch map, data-parallel with the `parallel` feature.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, keeping input order. Runs on the rayon pool when
/// the `parallel` feature is enabled, sequentially otherwise.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_seq(items, f)
    }
}

pub fn map_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
