//! Reduction-step budget for Gröbner computations.
//!
//! The cap applies to each basis computation separately and is scoped per
//! thread. Its default comes from `STRATKIT_BUDGET` when that parses.

use std::cell::Cell;

use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

pub fn default_budget() -> u64 {
    std::env::var("STRATKIT_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

thread_local! {
    static BUDGET: Cell<u64> = Cell::new(default_budget());
}

pub fn step_budget() -> u64 {
    BUDGET.with(|b| b.get())
}

pub fn set_step_budget(steps: u64) {
    BUDGET.with(|b| b.set(steps));
}

/// Runs `f` with a temporary budget, restoring the previous one afterwards.
pub fn with_step_budget<T>(steps: u64, f: impl FnOnce() -> T) -> T {
    let prev = step_budget();
    set_step_budget(steps);
    let out = f();
    set_step_budget(prev);
    out
}

pub(crate) struct Steps {
    used: u64,
    limit: u64,
}

impl Steps {
    pub(crate) fn new() -> Self {
        Steps {
            used: 0,
            limit: step_budget(),
        }
    }

    pub(crate) fn unlimited() -> Self {
        Steps {
            used: 0,
            limit: u64::MAX,
        }
    }

    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}
