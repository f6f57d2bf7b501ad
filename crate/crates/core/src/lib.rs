//! Constraint satisfaction over the integers with successor and order.
//!
//! Relations are quantifier-free formulas over literals `x CMP y + c` with
//! `CMP` one of `<=`, `<`, `=`, `!=`. The crate classifies a finite set of such
//! relations into a tractable class or an NP-hardness verdict, and solves
//! instances with the matching procedure:
//!
//! * Horn languages by unit resolution over an offset union-find ([`horn`]);
//! * max- or min-closed languages by arc consistency ([`finite`]);
//! * modular max/min languages by residue enumeration plus a quotient
//!   instance ([`finite::solve_modular`]);
//! * anything else by complete backtracking over the bounded window.
//!
//! Everything is generic over the scalar type through [`Int`]; the aliases
//! below fix it to `i64`.
//!
//! ```
//! use dtcsp::{classify, parse_instance, parse_language, solve_with, Limits, Method};
//!
//! let mut lang: dtcsp::ConstraintLanguage =
//!     parse_language("rel F/4 := (x2 = x1 + 1 -> x4 = x3 + 1) & (x4 = x3 + 1 -> x2 = x1 + 1)")?;
//! let inst = parse_instance("var a b c\nF(a, b, a, c)\nb = a + 1", &mut lang)?;
//! let limits = Limits::default();
//! let verdict = classify(&lang, &limits);
//! assert_eq!(verdict.to_string(), "HORN_TRACTABLE");
//! let method = Method::for_class(verdict.class);
//! let sol = solve_with(&lang, &inst, method, &verdict, None, &limits)?;
//! assert_eq!(sol.assignment().unwrap().values, vec![0, 1, 1]);
//! # Ok::<(), dtcsp::Error>(())
//! ```

pub mod classifier;
pub mod dispatch;
pub mod error;
pub mod finite;
pub mod formula;
pub(crate) mod grid;
pub mod horn;
pub mod instance;
pub mod language;
pub mod num;
pub mod oracle;
pub mod solution;

pub use classifier::{classify, Operation, VerdictClass};
pub use dispatch::{solve_with, Method};
pub use error::{Error, Limits, Result};
pub use formula::{parse_formula, parse_language, Cmp, Shape};
pub use instance::{parse_instance, Constraint, Instance};
pub use language::Dialect;
pub use num::Int;
pub use solution::{Outcome, Stats};

pub type Literal = formula::Literal<i64>;
pub type Expr = formula::Expr<i64>;
pub type Formula = formula::Formula<i64>;
pub type NormalForm = formula::NormalForm<i64>;
pub type RelationDef = language::RelationDef<i64>;
pub type ConstraintLanguage = language::ConstraintLanguage<i64>;
pub type Assignment = instance::Assignment<i64>;
pub type Solution = solution::Solution<i64>;
pub type ComplexityVerdict = classifier::ComplexityVerdict<i64>;
pub type Witness = classifier::Witness<i64>;
pub type Preservation = classifier::Preservation<i64>;
pub type DifferenceProfile = classifier::DifferenceProfile<i64>;
pub type DomainStore = finite::DomainStore<i64>;
pub type OffsetUnionFind = horn::OffsetUnionFind<i64>;
pub type TupleSet = oracle::TupleSet<i64>;
