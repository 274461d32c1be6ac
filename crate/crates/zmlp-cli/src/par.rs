//! Deterministic fork-join helper for embarrassingly parallel scans.

use std::num::NonZeroUsize;

/// Number of worker threads. The `ZMLP_JOBS` environment variable wins over
/// the flag, which wins over the detected parallelism.
pub fn worker_count(flag: Option<usize>) -> usize {
    if let Ok(v) = std::env::var("ZMLP_JOBS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            return n.max(1);
        }
    }
    if let Some(n) = flag {
        return n.max(1);
    }
    std::thread::available_parallelism().map(NonZeroUsize::get).unwrap_or(1)
}

/// Applies `f` to every item on up to `jobs` threads, returning results in
/// input order regardless of schedule.
pub fn par_map<T, R, F>(jobs: usize, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let jobs = jobs.max(1).min(items.len().max(1));
    if jobs == 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    let mut out: Vec<Option<R>> = Vec::new();
    out.resize_with(items.len(), || None);
    let fref = &f;
    std::thread::scope(|scope| {
        for (src, dst) in items.chunks(chunk).zip(out.chunks_mut(chunk)) {
            scope.spawn(move || {
                for (x, slot) in src.iter().zip(dst.iter_mut()) {
                    *slot = Some(fref(x));
                }
            });
        }
    });
    out.into_iter().map(|r| r.expect("worker filled every slot")).collect()
}
