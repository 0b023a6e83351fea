//! Resource limits shared by every Gröbner computation.
//!
//! Exhausting a limit never produces a wrong answer: the computation stops
//! with [`LimitExceeded`] and the caller reports the run as inconclusive.

use thiserror::Error;

/// A monotone millisecond clock. The core crate has no access to the system
/// time, so callers that want a wall-clock budget provide one.
pub trait Clock: Sync {
    fn now_millis(&self) -> u64;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest total degree allowed for a polynomial entering a basis.
    pub max_degree: u32,
    /// Largest number of polynomials a single basis computation may hold.
    pub max_basis_size: usize,
    /// Wall-clock budget; ignored unless a [`Clock`] is attached.
    pub max_millis: Option<u64>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 60,
            max_basis_size: 20_000,
            max_millis: Some(300_000),
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits {
            max_degree: u32::MAX,
            max_basis_size: usize::MAX,
            max_millis: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LimitExceeded {
    #[error("polynomial degree {found} exceeds the cap of {limit}")]
    Degree { limit: u32, found: u32 },
    #[error("basis size exceeds the cap of {limit} elements")]
    BasisSize { limit: usize },
    #[error("wall-clock budget of {limit_ms} ms exhausted")]
    Time { limit_ms: u64 },
}

#[derive(Clone, Copy)]
pub struct Budget<'a> {
    limits: Limits,
    clock: Option<&'a dyn Clock>,
    start: u64,
}

impl core::fmt::Debug for Budget<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Budget")
            .field("limits", &self.limits)
            .field("clocked", &self.clock.is_some())
            .finish()
    }
}

impl<'a> Budget<'a> {
    pub fn new(limits: Limits, clock: Option<&'a dyn Clock>) -> Self {
        let start = clock.map_or(0, |c| c.now_millis());
        Budget {
            limits,
            clock,
            start,
        }
    }

    /// No limits and no clock.
    pub fn unlimited() -> Budget<'static> {
        Budget {
            limits: Limits::unlimited(),
            clock: None,
            start: 0,
        }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Milliseconds since the budget was created, or 0 without a clock.
    pub fn elapsed_millis(&self) -> u64 {
        self.clock
            .map_or(0, |c| c.now_millis().saturating_sub(self.start))
    }

    pub fn clock(&self) -> Option<&'a dyn Clock> {
        self.clock
    }

    pub fn check_time(&self) -> Result<(), LimitExceeded> {
        if let (Some(limit_ms), Some(_)) = (self.limits.max_millis, self.clock) {
            if self.elapsed_millis() > limit_ms {
                return Err(LimitExceeded::Time { limit_ms });
            }
        }
        Ok(())
    }

    pub fn check_degree(&self, degree: u32) -> Result<(), LimitExceeded> {
        if degree > self.limits.max_degree {
            return Err(LimitExceeded::Degree {
                limit: self.limits.max_degree,
                found: degree,
            });
        }
        Ok(())
    }

    pub fn check_basis_size(&self, size: usize) -> Result<(), LimitExceeded> {
        if size > self.limits.max_basis_size {
            return Err(LimitExceeded::BasisSize {
                limit: self.limits.max_basis_size,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::sync::atomic::{AtomicU64, Ordering};

    struct FakeClock(AtomicU64);

    impl Clock for FakeClock {
        fn now_millis(&self) -> u64 {
            self.0.load(Ordering::SeqCst)
        }
    }

    #[test]
    fn time_limit_needs_a_clock() {
        let limits = Limits {
            max_millis: Some(10),
            ..Limits::default()
        };
        let unclocked = Budget::new(limits, None);
        assert!(unclocked.check_time().is_ok());

        let clock = FakeClock(AtomicU64::new(100));
        let budget = Budget::new(limits, Some(&clock));
        assert!(budget.check_time().is_ok());
        clock.0.store(111, Ordering::SeqCst);
        assert_eq!(
            budget.check_time(),
            Err(LimitExceeded::Time { limit_ms: 10 })
        );
    }

    #[test]
    fn degree_and_size_caps() {
        let budget = Budget::new(Limits::default(), None);
        assert!(budget.check_degree(60).is_ok());
        assert!(matches!(
            budget.check_degree(61),
            Err(LimitExceeded::Degree { found: 61, .. })
        ));
        assert!(budget.check_basis_size(20_001).is_err());
    }
}
