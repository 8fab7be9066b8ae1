//! Data-parallel scans with a sequential fallback.
//!
//! Every long scan in the crate (subset enumeration, sample batches, graph
//! enumeration) funnels through [`map_reduce`]. With the `parallel` feature
//! (on by default) and a non-sequential [`Parallelism`], work is spread over
//! the ambient rayon pool; otherwise it runs in the calling thread. Results
//! must not depend on the split, so `map` is required to be a pure function
//! of the index and `reduce` a commutative, associative merge; under that
//! contract the output is byte-identical for every thread count.

/// How a scan should execute. `threads == 1` forces the sequential path;
/// anything else (including `0` = auto) uses the ambient rayon pool when the
/// `parallel` feature is enabled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Parallelism {
    pub threads: usize,
}

impl Parallelism {
    pub fn auto() -> Self {
        Parallelism { threads: 0 }
    }

    pub fn sequential() -> Self {
        Parallelism { threads: 1 }
    }

    pub fn new(threads: usize) -> Self {
        Parallelism { threads }
    }

    pub fn is_sequential(&self) -> bool {
        self.threads == 1 || !cfg!(feature = "parallel")
    }
}

impl Default for Parallelism {
    fn default() -> Self {
        Parallelism::auto()
    }
}

/// Folds `map(0) .. map(count-1)` into one value with `reduce`.
///
/// `reduce` must be commutative and associative with `identity` as neutral
/// element; `map` must be pure. Those two properties are what make the
/// result independent of chunking and thread count.
pub fn map_reduce<T, M, R>(par: Parallelism, count: u64, identity: T, map: M, reduce: R) -> T
where
    T: Send + Sync + Clone,
    M: Fn(u64) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if !par.is_sequential() && count > 1 {
            use rayon::prelude::*;
            return (0..count)
                .into_par_iter()
                .map(map)
                .reduce(|| identity.clone(), reduce);
        }
    }
    let _ = &par;
    (0..count).map(map).fold(identity, reduce)
}

/// Splits `0..total` into at most `max_chunks` contiguous ranges of nearly
/// equal size. Scans that need sequential sweeps inside a range (e.g. colex
/// subset enumeration) parallelize over these.
pub fn split_ranges(total: u64, max_chunks: u64) -> Vec<(u64, u64)> {
    if total == 0 {
        return Vec::new();
    }
    let chunks = max_chunks.clamp(1, total);
    let base = total / chunks;
    let extra = total % chunks;
    let mut out = Vec::with_capacity(chunks as usize);
    let mut start = 0u64;
    for i in 0..chunks {
        let len = base + u64::from(i < extra);
        out.push((start, start + len));
        start += len;
    }
    out
}

/// A reasonable chunk count for the ambient execution width.
pub fn default_chunks(par: Parallelism) -> u64 {
    if par.is_sequential() {
        return 1;
    }
    #[cfg(feature = "parallel")]
    {
        return (rayon::current_num_threads() as u64) * 8;
    }
    #[allow(unreachable_code)]
    1
}
