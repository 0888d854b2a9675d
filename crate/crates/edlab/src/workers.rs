//! Deterministic fan-out helper. Tasks are indexed; each worker owns a
//! contiguous chunk and results come back in index order, so the output is
//! independent of the worker count. `ED_LAB_THREADS` caps the pool.

/// Number of workers to use for `n_tasks` independent tasks.
pub fn worker_count(n_tasks: usize) -> usize {
    let hw = std::thread::available_parallelism()
        .map(|v| v.get())
        .unwrap_or(1);
    let cap = std::env::var("ED_LAB_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or(hw);
    cap.min(hw.max(1)).min(n_tasks.max(1))
}

/// Maps `f` over `0..n` in parallel, preserving index order in the result.
/// `f` must be deterministic per index for reproducible reports.
pub fn parallel_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = worker_count(n);
    if workers <= 1 || n <= 1 {
        return (0..n).map(f).collect();
    }
    let chunk = n.div_ceil(workers);
    let mut slots: Vec<Option<T>> = (0..n).map(|_| None).collect();
    std::thread::scope(|scope| {
        let f = &f;
        let mut handles = Vec::new();
        for (w, slot_chunk) in slots.chunks_mut(chunk).enumerate() {
            let start = w * chunk;
            handles.push(scope.spawn(move || {
                for (off, slot) in slot_chunk.iter_mut().enumerate() {
                    *slot = Some(f(start + off));
                }
            }));
        }
        for h in handles {
            h.join().expect("worker panicked");
        }
    });
    slots.into_iter().map(|s| s.expect("missing result")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_index_order() {
        let out = parallel_map(100, |i| i * i);
        assert_eq!(out, (0..100).map(|i| i * i).collect::<Vec<_>>());
    }
}
