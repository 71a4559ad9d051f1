//! Deterministic trial scheduling.
//!
//! Trials are independent (each derives its own generator from the run
//! seed and its index) and may run on worker threads; results come back in
//! trial order regardless of completion order. `SYMFLAG_THREADS` caps the
//! worker count.

use std::sync::atomic::{AtomicUsize, Ordering};

pub fn thread_cap() -> usize {
    let available = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    match std::env::var("SYMFLAG_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        Some(0) | None => available,
        Some(n) => n.min(available).max(1),
    }
}

/// Runs `count` trials of `f`, returning results indexed by trial.
pub fn run_trials<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = thread_cap().min(count.max(1));
    if workers <= 1 || count <= 1 {
        return (0..count).map(f).collect();
    }
    let mut slots: Vec<Option<T>> = (0..count).map(|_| None).collect();
    let next = AtomicUsize::new(0);
    let slot_refs: Vec<std::sync::Mutex<&mut Option<T>>> =
        slots.iter_mut().map(std::sync::Mutex::new).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= count {
                    break;
                }
                let result = f(idx);
                **slot_refs[idx].lock().unwrap() = Some(result);
            });
        }
    });
    drop(slot_refs);
    slots.into_iter().map(|s| s.expect("trial completed")).collect()
}
