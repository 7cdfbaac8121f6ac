use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rank ceilings for the enumerating operations.
///
/// These are configuration, not hard limits of the algorithms: raising them
/// only costs time and memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest `n` accepted by `enumerate_sn`.
    pub symmetric_group: usize,
    /// Largest `n` accepted by `enumerate_wtilde` (elements live in `S_{n+1}`).
    pub stratification: usize,
    /// Largest `n` for which a full Kazhdan-Lusztig table is built.
    pub kl_table: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            symmetric_group: 8,
            stratification: 7,
            kl_table: 6,
        }
    }
}

impl Limits {
    pub(crate) fn check(what: &'static str, requested: usize, ceiling: usize) -> Result<()> {
        if requested > ceiling {
            return Err(Error::ResourceLimit {
                what,
                requested,
                ceiling,
            });
        }
        Ok(())
    }
}
