//! Trial-level parallelism. Trials are embarrassingly parallel and results
//! are collected in trial order, so the output is byte-identical whatever the
//! thread count. Built without the `parallel` feature everything runs on the
//! sequential fallback.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Run `f` for every trial index, collecting results in trial order.
pub fn run_trials<R, F>(trials: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..trials).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_trials_sequential(trials, f)
    }
}

/// The sequential lane, always available (also the baseline the benchmark
/// suite compares against).
pub fn run_trials_sequential<R, F>(trials: u64, f: F) -> Vec<R>
where
    F: Fn(u64) -> R,
{
    (0..trials).map(f).collect()
}

/// Bound the worker pool. Returns false when the pool was already built (or
/// when the crate was compiled without the `parallel` feature).
pub fn configure_threads(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordered_and_equal_across_lanes() {
        let par = run_trials(100, |i| i * i);
        let seq = run_trials_sequential(100, |i| i * i);
        assert_eq!(par, seq);
        assert_eq!(par[7], 49);
    }
}
