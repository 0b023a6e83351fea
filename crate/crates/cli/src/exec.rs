//! Wall clock and worker threads for the core pipeline.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use irrepcount_core::budget::Clock;
use irrepcount_core::decide::Executor;

/// Milliseconds since construction.
pub struct StdClock(Instant);

impl StdClock {
    pub fn new() -> Self {
        StdClock(Instant::now())
    }
}

impl Default for StdClock {
    fn default() -> Self {
        Self::new()
    }
}

impl Clock for StdClock {
    fn now_millis(&self) -> u64 {
        self.0.elapsed().as_millis() as u64
    }
}

/// Spreads jobs over scoped worker threads that pull the next index from a
/// shared counter. Results are returned in job order.
#[derive(Clone, Copy, Debug)]
pub struct Threaded {
    threads: usize,
}

impl Threaded {
    pub fn new(threads: usize) -> Self {
        Threaded {
            threads: threads.max(1),
        }
    }

    /// One worker per available core.
    pub fn available() -> Self {
        Self::new(std::thread::available_parallelism().map_or(1, |n| n.get()))
    }

    pub fn threads(&self) -> usize {
        self.threads
    }
}

impl Executor for Threaded {
    fn map<T, F>(&self, jobs: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        let workers = self.threads.min(jobs);
        if workers <= 1 {
            return (0..jobs).map(f).collect();
        }
        let next = AtomicUsize::new(0);
        let slots: Vec<Mutex<Option<T>>> = (0..jobs).map(|_| Mutex::new(None)).collect();
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= jobs {
                        break;
                    }
                    let out = f(i);
                    *slots[i].lock().unwrap() = Some(out);
                });
            }
        });
        slots
            .into_iter()
            .map(|s| s.into_inner().unwrap().expect("every job ran"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn results_come_back_in_order() {
        let squares = Threaded::new(4).map(100, |i| i * i);
        assert_eq!(squares, (0..100).map(|i| i * i).collect::<Vec<_>>());
        assert!(Threaded::new(3).map(0, |i| i).is_empty());
        assert_eq!(Threaded::new(0).threads(), 1);
    }

    #[test]
    fn clock_is_monotone() {
        let c = StdClock::new();
        let a = c.now_millis();
        assert!(c.now_millis() >= a);
    }
}
