use crate::error::{CoreError, Result};

/// Caps on carrier construction and exhaustive enumeration.
///
/// Power algebras and free-algebra closures explode quickly; every
/// constructor that materializes a carrier checks against these caps and
/// rejects the request instead of attempting it. The carrier cap can be
/// overridden by the CLI (flag or `HILSUP_SIZE_GUARD`).
#[derive(Debug, Clone, Copy)]
pub struct SizeGuard {
    /// Largest carrier any constructor may materialize (index count).
    pub max_carrier: usize,
    /// Largest carrier for which the full deductive-system enumeration
    /// runs; above this only principal systems are produced.
    pub max_full_ds: usize,
    /// Largest number of elements a free-algebra closure may reach.
    pub max_free_elements: usize,
    /// Largest number of generator assignments a counting enumeration
    /// may walk.
    pub max_assignments: u64,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard {
            max_carrier: 1 << 24,
            max_full_ds: 24,
            max_free_elements: 1 << 20,
            max_assignments: 100_000_000,
        }
    }
}

impl SizeGuard {
    pub fn with_max_carrier(max_carrier: usize) -> Self {
        SizeGuard {
            max_carrier,
            ..SizeGuard::default()
        }
    }

    /// Checks a requested carrier size against the cap.
    pub fn check_carrier(&self, requested: u128) -> Result<usize> {
        if requested > self.max_carrier as u128 {
            return Err(CoreError::SizeGuard {
                requested,
                cap: self.max_carrier,
            });
        }
        Ok(requested as usize)
    }
}
