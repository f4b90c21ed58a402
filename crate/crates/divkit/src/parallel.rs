//! Deterministic fan-out helper for scans and Monte-Carlo sweeps.
//!
//! Work is partitioned into contiguous index chunks, each chunk runs on its
//! own thread, and results are written back by index, so the output is
//! bitwise identical to a sequential run regardless of worker count.
//! `DIVKIT_THREADS` caps the worker count.

use std::num::NonZeroUsize;

fn worker_count(jobs: usize) -> usize {
    let available = std::thread::available_parallelism()
        .map(NonZeroUsize::get)
        .unwrap_or(1);
    let cap = std::env::var("DIVKIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(available);
    cap.min(available).min(jobs).max(1)
}

/// Map `f` over `0..count`, returning results in index order.
pub(crate) fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = worker_count(count);
    if workers <= 1 || count < 2 {
        return (0..count).map(f).collect();
    }
    let chunk = count.div_ceil(workers);
    let mut out: Vec<Option<T>> = Vec::with_capacity(count);
    out.resize_with(count, || None);
    std::thread::scope(|scope| {
        for (w, slot) in out.chunks_mut(chunk).enumerate() {
            let f = &f;
            scope.spawn(move || {
                for (j, cell) in slot.iter_mut().enumerate() {
                    *cell = Some(f(w * chunk + j));
                }
            });
        }
    });
    out.into_iter().map(|v| v.expect("worker filled slot")).collect()
}
