//! Data-parallel execution with a sequential fallback.
//!
//! With the `parallel` feature (on by default) batch work is spread over the
//! rayon thread pool. Without it, or when [`Execution::Sequential`] is asked
//! for explicitly, the same closures run on the calling thread. Results are
//! always returned in index order, so output never depends on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise runs
    /// sequentially.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// `f(0), …, f(n-1)` collected in index order.
    pub fn map_indices<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    /// Maps over a slice, preserving order.
    pub fn map_slice<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Reduces `f(0..n)` with an associative, commutative `combine`; `None`
    /// values are skipped. Deterministic as long as `combine` is a total
    /// selection (e.g. max with a tie-break key).
    pub fn reduce_indices<R, F, C>(self, n: usize, f: F, combine: C) -> Option<R>
    where
        R: Send,
        F: Fn(usize) -> Option<R> + Sync + Send,
        C: Fn(R, R) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n).into_par_iter().filter_map(f).reduce_with(combine),
            _ => (0..n).filter_map(f).reduce(combine),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree_and_keep_order() {
        let f = |i: usize| (i as f64).sqrt();
        let seq = Execution::Sequential.map_indices(1000, f);
        let par = Execution::Parallel.map_indices(1000, f);
        assert_eq!(seq, par);
        assert_eq!(seq[9], 3.0);
    }

    #[test]
    fn reduction_is_deterministic() {
        let pick = |a: (f64, usize), b: (f64, usize)| {
            if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) {
                a
            } else {
                b
            }
        };
        let f = |i: usize| Some((((i % 7) as f64), i));
        let seq = Execution::Sequential.reduce_indices(500, f, pick);
        let par = Execution::Parallel.reduce_indices(500, f, pick);
        assert_eq!(seq, par);
        assert_eq!(seq, Some((6.0, 6)));
        assert_eq!(Execution::Sequential.reduce_indices(0, f, pick), None);
    }
}
