//! Limits on the ground-set size of `2^E` enumerations.

use crate::error::{Error, Result};

/// Environment variable overriding both limits.
pub const SIZE_GUARD_ENV: &str = "OMACT_SIZE_GUARD";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeGuard {
    /// Largest ground set for a single `2^E` sum or enumeration.
    pub enumeration: usize,
    /// Largest ground set for the full identity verification.
    pub verification: usize,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard {
            enumeration: 20,
            verification: 16,
        }
    }
}

impl SizeGuard {
    pub fn uniform(limit: usize) -> Self {
        SizeGuard {
            enumeration: limit,
            verification: limit,
        }
    }

    /// Defaults, unless `OMACT_SIZE_GUARD` holds a number.
    pub fn from_env() -> Result<Self> {
        match std::env::var(SIZE_GUARD_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(SizeGuard::uniform)
                .map_err(|_| Error::Parse(format!("{SIZE_GUARD_ENV}={v} is not a number"))),
            Err(_) => Ok(SizeGuard::default()),
        }
    }

    pub fn check_enumeration(&self, n: usize) -> Result<()> {
        check(n, self.enumeration)
    }

    pub fn check_verification(&self, n: usize) -> Result<()> {
        check(n, self.verification)
    }
}

fn check(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::SizeGuard { n, limit })
    } else {
        Ok(())
    }
}
