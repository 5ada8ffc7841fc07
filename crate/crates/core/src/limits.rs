//! Per-thread resource caps consulted by the long-running kernels.

use std::cell::RefCell;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default)]
pub struct Limits {
    pub deadline: Option<Instant>,
    pub max_pairs: Option<usize>,
    pub max_degree: Option<u32>,
}

impl Limits {
    pub fn with_timeout(mut self, t: Duration) -> Self {
        self.deadline = Some(Instant::now() + t);
        self
    }
}

thread_local! {
    static LIMITS: RefCell<Limits> = RefCell::new(Limits::default());
}

/// Runs `f` with `limits` installed on the current thread, restoring the previous caps after.
pub fn with_limits<T>(limits: Limits, f: impl FnOnce() -> T) -> T {
    let prev = LIMITS.with(|l| std::mem::replace(&mut *l.borrow_mut(), limits));
    struct Restore(Option<Limits>);
    impl Drop for Restore {
        fn drop(&mut self) {
            let p = self.0.take().unwrap();
            LIMITS.with(|l| *l.borrow_mut() = p);
        }
    }
    let _guard = Restore(Some(prev));
    f()
}

pub fn current() -> Limits {
    LIMITS.with(|l| l.borrow().clone())
}

pub fn check_time() -> Result<()> {
    LIMITS.with(|l| match l.borrow().deadline {
        Some(d) if Instant::now() > d => Err(Error::ResourceCap("timeout".into())),
        _ => Ok(()),
    })
}

pub fn check_pairs(n: usize) -> Result<()> {
    LIMITS.with(|l| match l.borrow().max_pairs {
        Some(m) if n > m => Err(Error::ResourceCap(format!("more than {m} critical pairs"))),
        _ => Ok(()),
    })
}

pub fn check_degree(d: u32) -> Result<()> {
    LIMITS.with(|l| match l.borrow().max_degree {
        Some(m) if d > m => Err(Error::ResourceCap(format!("degree {d} above cap {m}"))),
        _ => Ok(()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_limits_restore() {
        assert!(check_pairs(1_000_000).is_ok());
        with_limits(
            Limits {
                max_pairs: Some(3),
                ..Default::default()
            },
            || {
                assert!(check_pairs(4).is_err());
                with_limits(Limits::default(), || assert!(check_pairs(4).is_ok()));
                assert!(check_pairs(4).is_err());
            },
        );
        assert!(check_pairs(4).is_ok());
        with_limits(Limits::default().with_timeout(Duration::ZERO), || {
            std::thread::sleep(Duration::from_millis(2));
            assert!(check_time().is_err());
        });
    }
}
