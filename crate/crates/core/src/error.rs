use thiserror::Error;

/// Errors raised across parsing, normalization and solving.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("relation `{relation}` references x{var} but has arity {arity}")]
    Arity {
        relation: String,
        var: usize,
        arity: usize,
    },
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("relation `{relation}` has arity {expected} but was applied to {found} arguments")]
    ArityMismatch {
        relation: String,
        expected: usize,
        found: usize,
    },
    #[error("assignment does not cover variable index {0}")]
    MissingVariable(usize),
    #[error("normal form exceeds the budget of {limit} literals")]
    SizeLimitExceeded { limit: u64 },
    #[error("enumeration of {required} candidates exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("relation `{0}` has no Horn definition")]
    NotHorn(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for the resource-limit errors that callers may downgrade.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::SizeLimitExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Resource limits shared by the enumerating procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of literals in a CNF or DNF.
    pub normal_form_literals: u64,
    /// Maximum number of candidate points or pairs any enumeration may visit.
    pub enumeration: u128,
    /// Maximum number of residue branches in the modular pipeline.
    pub residue_branches: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            normal_form_literals: 1_000_000,
            enumeration: 100_000_000,
            residue_branches: 1_000_000,
        }
    }
}

/// Returns `BudgetExceeded` when `required > budget`.
pub(crate) fn check_budget(required: u128, budget: u128) -> Result<()> {
    if required > budget {
        Err(Error::BudgetExceeded { required, budget })
    } else {
        Ok(())
    }
}

/// `base^exp` saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}
