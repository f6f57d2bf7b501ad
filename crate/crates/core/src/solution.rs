//! Solver results shared by every decision procedure.

use serde::{Deserialize, Serialize};

use crate::instance::Assignment;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Sat(Assignment<T>),
    Unsat,
}

impl<T> Outcome<T> {
    pub fn is_sat(&self) -> bool {
        matches!(self, Outcome::Sat(_))
    }

    pub fn assignment(&self) -> Option<&Assignment<T>> {
        match self {
            Outcome::Sat(a) => Some(a),
            Outcome::Unsat => None,
        }
    }
}

/// Work counters reported by the solvers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub facts_asserted: u64,
    pub ac_revisions: u64,
    pub branches: u64,
    pub nodes: u64,
    /// Times a fast path failed verification and full search took over.
    pub fallbacks: u64,
}

impl Stats {
    pub fn absorb(&mut self, other: &Stats) {
        self.facts_asserted += other.facts_asserted;
        self.ac_revisions += other.ac_revisions;
        self.branches += other.branches;
        self.nodes += other.nodes;
        self.fallbacks += other.fallbacks;
    }
}

/// An outcome with the work it took and, for refutations, a reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution<T> {
    pub outcome: Outcome<T>,
    pub stats: Stats,
    pub reason: Option<String>,
}

impl<T> Solution<T> {
    pub fn sat(assignment: Assignment<T>, stats: Stats) -> Self {
        Solution {
            outcome: Outcome::Sat(assignment),
            stats,
            reason: None,
        }
    }

    pub fn unsat(stats: Stats, reason: impl Into<String>) -> Self {
        Solution {
            outcome: Outcome::Unsat,
            stats,
            reason: Some(reason.into()),
        }
    }

    pub fn is_sat(&self) -> bool {
        self.outcome.is_sat()
    }

    pub fn assignment(&self) -> Option<&Assignment<T>> {
        self.outcome.assignment()
    }
}
