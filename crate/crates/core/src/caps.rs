use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Enumeration budgets. Exceeding one is an error, never a truncated answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest group order produced by closure of generators.
    pub max_group_order: usize,
    /// Largest search space for tuple and matrix enumeration.
    pub max_enum: u128,
    /// Largest level set accepted by isomorphism and map searches.
    pub max_level: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_group_order: 20_000, max_enum: 10_000_000, max_level: 4096 }
    }
}

impl Caps {
    pub fn check_enum(&self, what: &str, size: u128) -> Result<()> {
        if size > self.max_enum {
            return Err(Error::cap(what, size, self.max_enum));
        }
        Ok(())
    }

    pub fn check_level(&self, what: &str, size: usize) -> Result<()> {
        if size > self.max_level {
            return Err(Error::cap(what, size as u128, self.max_level as u128));
        }
        Ok(())
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn pow_u128(base: u128, exp: u32) -> u128 {
    base.checked_pow(exp).unwrap_or(u128::MAX)
}
