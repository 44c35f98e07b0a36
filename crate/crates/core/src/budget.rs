//! Node budgets for exhaustive searches. A budget is a shared atomic counter
//! so parallel enumerations can charge against the same limit.

use crate::error::{Error, Result};
use std::sync::atomic::{AtomicU64, Ordering};

pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0) }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    /// Charge `n` nodes against the budget; errors once the limit is passed.
    pub fn charge(&self, operation: &'static str, n: u64) -> Result<()> {
        let prev = self.used.fetch_add(n, Ordering::Relaxed);
        if prev + n > self.limit {
            Err(Error::BudgetExceeded { operation, limit: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}
