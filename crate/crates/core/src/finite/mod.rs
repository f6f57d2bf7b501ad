//! Decision procedures over the bounded window `{0, ..., (q+1)n - 1}`.
//!
//! An instance over `n` variables whose relations have qe-degree `q` is
//! satisfiable iff it has a solution inside the window, so every procedure
//! here is complete.

mod ac;
mod domain;
mod modular;
mod search;

pub use ac::{arc_consistency, Propagator};
pub use domain::DomainStore;
pub use modular::{residue_projection, solve_mod_max, solve_mod_min, solve_modular};
pub use search::{
    backtracking_solve, decide_max_closed, decide_min_closed, decide_semilattice,
    decide_semilattice_in,
};

use serde::{Deserialize, Serialize};

use crate::instance::Instance;
use crate::language::ConstraintLanguage;
use crate::num::Int;

/// Which end of each domain a semilattice-closed instance is solved at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Max,
    Min,
}

/// `(0, (q+1)n - 1)` with `q` the language's qe-degree; a single point when `n = 0`.
pub fn bounded_window<T: Int>(lang: &ConstraintLanguage<T>, inst: &Instance) -> (T, T) {
    let n = T::from_usize(inst.num_vars());
    let top = (lang.qe_degree() + T::one()) * n - T::one();
    (T::zero(), top.max(T::zero()))
}
