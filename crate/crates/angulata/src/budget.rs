//! Search budgets guarding combinatorial blowup.

use std::time::{Duration, Instant};

/// Node and wall-clock limits for enumeration and graph search.
/// Defaults: one million nodes, sixty seconds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_seconds: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 1_000_000,
            max_seconds: 60,
        }
    }
}

impl Budget {
    pub(crate) fn start(&self) -> BudgetClock {
        BudgetClock {
            max_nodes: self.max_nodes,
            deadline: Instant::now() + Duration::from_secs(self.max_seconds),
            nodes: 0,
        }
    }
}

pub(crate) struct BudgetClock {
    max_nodes: u64,
    deadline: Instant,
    nodes: u64,
}

impl BudgetClock {
    /// Counts one search node; false once the budget is exhausted.
    pub(crate) fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return false;
        }
        // Clock checks are amortized; node budgets bound the gap.
        if self.nodes % 1024 == 0 && Instant::now() > self.deadline {
            return false;
        }
        true
    }
}
