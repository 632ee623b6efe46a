//! Resource caps for lattice construction and subpower closures.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

pub const ENV_MAX_CON: &str = "NEUTRABELIAN_MAX_CON";
pub const ENV_MAX_CLOSURE: &str = "NEUTRABELIAN_MAX_CLOSURE";
pub const ENV_TIME_BUDGET_MS: &str = "NEUTRABELIAN_TIME_BUDGET_MS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest congruence lattice we are willing to build.
    pub max_lattice: usize,
    /// Largest subpower closure (elements) explored by the Maltsev search.
    pub max_closure: usize,
    /// Wall clock budget per algebra.
    pub time_budget: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_lattice: 20_000,
            max_closure: 1_000_000,
            time_budget: None,
        }
    }
}

impl Limits {
    /// Defaults overridden by the `NEUTRABELIAN_*` environment variables.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        let read = |key: &str| std::env::var(key).ok().and_then(|v| v.trim().parse::<u64>().ok());
        if let Some(v) = read(ENV_MAX_CON) {
            limits.max_lattice = v as usize;
        }
        if let Some(v) = read(ENV_MAX_CLOSURE) {
            limits.max_closure = v as usize;
        }
        if let Some(v) = read(ENV_TIME_BUDGET_MS) {
            limits.time_budget = Some(Duration::from_millis(v));
        }
        limits
    }

    pub fn start(&self) -> Budget {
        Budget {
            limits: *self,
            deadline: self.time_budget.map(|d| Instant::now() + d),
        }
    }
}

/// A started [`Limits`]: caps plus an absolute deadline.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub limits: Limits,
    deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Limits::default().start()
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Limits {
            max_lattice: usize::MAX,
            max_closure: usize::MAX,
            time_budget: None,
        }
        .start()
    }

    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::TimeBudget),
            _ => Ok(()),
        }
    }
}
