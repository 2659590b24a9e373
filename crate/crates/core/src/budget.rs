//! Explicit resource bounds for reachability searches.

use std::time::{Duration, Instant};

/// Resource bounds making every unbounded search tri-state.
///
/// Chain lengths for contiguity and homotopy are not bounded a priori, so
/// reachability searches in map space carry an explicit budget. `Exhausted`
/// answers are honest unknowns, not errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximum number of visited states in a map-space BFS.
    pub max_visited_states: usize,
    /// Maximum number of candidate cover elements a cover search may enumerate.
    pub max_cover_candidates: usize,
    /// Optional wall-clock limit.
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub fn new(max_visited_states: usize) -> Self {
        SearchBudget {
            max_visited_states,
            max_cover_candidates: 1_000_000,
            time_limit: None,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(1_000_000)
    }
}

/// Outcome of a budgeted reachability question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reachability<C> {
    /// Reachable, with a replayable certificate.
    Yes(C),
    /// Provably unreachable: the whole component was exhausted.
    No,
    /// The budget ran out before the question was settled.
    Exhausted,
}

impl<C> Reachability<C> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Reachability::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Reachability::No)
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, Reachability::Exhausted)
    }

    pub fn certificate(self) -> Option<C> {
        match self {
            Reachability::Yes(c) => Some(c),
            _ => None,
        }
    }

    pub fn map<D>(self, f: impl FnOnce(C) -> D) -> Reachability<D> {
        match self {
            Reachability::Yes(c) => Reachability::Yes(f(c)),
            Reachability::No => Reachability::No,
            Reachability::Exhausted => Reachability::Exhausted,
        }
    }
}

/// Shared bookkeeping for a running budgeted search.
pub(crate) struct BudgetMeter {
    pub visited: usize,
    max_visited: usize,
    deadline: Option<Instant>,
}

impl BudgetMeter {
    pub fn start(budget: &SearchBudget) -> Self {
        BudgetMeter {
            visited: 0,
            max_visited: budget.max_visited_states,
            deadline: budget.time_limit.map(|d| Instant::now() + d),
        }
    }

    /// Counts one visited state; false once the budget is spent.
    pub fn tick(&mut self) -> bool {
        self.visited += 1;
        if self.visited > self.max_visited {
            return false;
        }
        if let Some(deadline) = self.deadline {
            // Checking the clock on every state would dominate small searches.
            if self.visited % 1024 == 0 && Instant::now() > deadline {
                return false;
            }
        }
        true
    }
}
