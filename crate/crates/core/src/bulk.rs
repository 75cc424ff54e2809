//! Order-preserving bulk mapping, data-parallel by default.
//!
//! The reduction and probe drivers stay sequential internally; sweeps
//! over many independent inputs go through [`par_map`], which uses a
//! rayon pool when the `parallel` feature is on and falls back to the
//! sequential path otherwise. Results always come back in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order. Runs on the rayon pool when
/// the `parallel` feature is enabled.
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

/// Sequential twin of [`par_map`]; the benchmark suite compares the two.
pub fn seq_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}
