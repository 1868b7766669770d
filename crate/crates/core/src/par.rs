//! Data-parallel map with a sequential fallback.
//!
//! Independent walks, constraint rows and corpus evaluations parallelize
//! over items; exact arithmetic makes the combination order irrelevant.
//! With the `parallel` feature disabled (or `parallel = false` at the call
//! site) the same closure runs on one thread.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, in parallel when requested and compiled in.
/// Output order always matches input order.
pub fn map_items<T, U, F>(parallel: bool, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel {
            return items.par_iter().map(&f).collect();
        }
    }
    let _ = parallel;
    items.iter().map(f).collect()
}
