//! Ground truth for tests: exhaustive search, materialized relations and
//! seeded random generators.

mod brute;
mod materialize;
mod random;

pub use brute::{brute_preserved_by, brute_solve};
pub use materialize::{materialize, TupleSet};
pub use random::{random_instance, random_language, random_relation, random_relation_in};
