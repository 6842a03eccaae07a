//! A scoped thread pool for certification samples.

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use catres_core::certify::Executor;

pub const THREADS_VAR: &str = "CATRES_THREADS";

/// Runs jobs on up to `threads` scoped threads. Each job is claimed from a
/// shared counter and results are returned in index order, so output does not
/// depend on the thread count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Threads {
    threads: usize,
}

impl Threads {
    pub fn new(threads: NonZeroUsize) -> Self {
        Self {
            threads: threads.get(),
        }
    }

    /// Reads the cap from `CATRES_THREADS`, defaulting to the available
    /// parallelism.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var(THREADS_VAR) {
            Ok(v) => v
                .trim()
                .parse::<NonZeroUsize>()
                .map(Self::new)
                .map_err(|_| format!("{THREADS_VAR} must be a positive integer, got {v:?}")),
            Err(_) => Ok(Self::new(
                thread::available_parallelism().unwrap_or(NonZeroUsize::MIN),
            )),
        }
    }

    pub fn threads(&self) -> usize {
        self.threads
    }
}

impl Executor for Threads {
    fn run<R: Send>(&self, n: usize, job: &(dyn Fn(usize) -> R + Sync)) -> Vec<R> {
        let workers = self.threads.min(n);
        if workers <= 1 {
            return (0..n).map(job).collect();
        }
        let next = AtomicUsize::new(0);
        let mut slots: Vec<Option<R>> = (0..n).map(|_| None).collect();
        thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|_| {
                    s.spawn(|| {
                        let mut done = Vec::new();
                        loop {
                            let i = next.fetch_add(1, Ordering::Relaxed);
                            if i >= n {
                                break done;
                            }
                            done.push((i, job(i)));
                        }
                    })
                })
                .collect();
            for h in handles {
                for (i, r) in h.join().unwrap_or_else(|e| std::panic::resume_unwind(e)) {
                    slots[i] = Some(r);
                }
            }
        });
        slots
            .into_iter()
            .map(|r| r.expect("every index is claimed once"))
            .collect()
    }
}
