//! Order-stable parallel sums.
//!
//! Work is split into fixed-size chunks that do not depend on the number of
//! worker threads, each chunk is summed sequentially, and the chunk totals
//! are added in index order. The result is therefore bit-identical for any
//! thread count.

use rayon::prelude::*;
use std::ops::Add;

pub const CHUNK: usize = 256;

/// `Σ_{i < len} f(i)` with a fixed reduction order.
pub fn chunked_sum<T, F>(len: usize, zero: T, f: F) -> T
where
    T: Copy + Send + Sync + Add<Output = T>,
    F: Fn(usize) -> T + Sync,
{
    let chunks = len.div_ceil(CHUNK);
    let partial: Vec<T> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(len);
            (lo..hi).fold(zero, |acc, i| acc + f(i))
        })
        .collect();
    partial.into_iter().fold(zero, |a, b| a + b)
}

/// Runs `f` inside a pool limited to `threads` workers, or the global pool.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        _ => f(),
    }
}
