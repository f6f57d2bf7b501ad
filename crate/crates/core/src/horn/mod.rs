//! Horn solving over successor literals.
//!
//! Instantiated Horn clauses are decided by positive unit resolution: units
//! go into an [`OffsetUnionFind`], negative literals whose atom the facts
//! make true are deleted, and clauses with a negative literal the facts make
//! true are dropped. At the fixpoint every surviving clause has a negative
//! literal across two components, so spacing the components far apart
//! satisfies it.

mod solver;
mod union_find;

pub use solver::{
    compile_horn_instance, extract_assignment, solve_horn, solve_horn_instance, Atom, HornClause,
    HornState,
};
pub use union_find::{Assert, Conflict, OffsetUnionFind};
