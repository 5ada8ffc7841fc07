use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use normpit_core::limits::{self, with_limits};

/// Runs `f(0..count)` on up to `jobs` threads, each with the caller's limits installed.
/// Results come back in index order whatever the scheduling.
pub fn par_map<R: Send>(jobs: usize, count: usize, f: impl Fn(usize) -> R + Sync) -> Vec<R> {
    let caps = limits::current();
    let workers = jobs.clamp(1, count.max(1));
    if workers == 1 {
        return (0..count).map(&f).collect();
    }
    let next = AtomicUsize::new(0);
    let mut done: Vec<(usize, R)> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                let (f, next, caps) = (&f, &next, caps.clone());
                s.spawn(move || {
                    with_limits(caps, || {
                        let mut out = Vec::new();
                        loop {
                            let i = next.fetch_add(1, Ordering::Relaxed);
                            if i >= count {
                                break out;
                            }
                            out.push((i, f(i)));
                        }
                    })
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    done.sort_by_key(|(i, _)| *i);
    done.into_iter().map(|(_, r)| r).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_kept() {
        for jobs in [1, 3, 8] {
            assert_eq!(par_map(jobs, 20, |i| i * i), (0..20).map(|i| i * i).collect::<Vec<_>>());
        }
        assert!(par_map(4, 0, |i| i).is_empty());
    }
}
