//! Horn and positivity tests on reduced normal forms.
//!
//! Both properties are read off a reduced CNF (resp. DNF). Reduced forms of
//! the same relation can differ, but Horn-ness and positivity do not depend
//! on which one greedy reduction happens to produce.

use crate::error::{Limits, Result};
use crate::formula::{reduce, Cmp, NormalForm};
use crate::language::{Dialect, RelationDef};
use crate::num::Int;

/// Reduced CNF over the relation's arity.
pub fn reduced_cnf<T: Int>(r: &RelationDef<T>, limits: &Limits) -> Result<NormalForm<T>> {
    reduce(r.formula().cnf(limits)?, r.arity(), limits)
}

/// Reduced DNF over the relation's arity.
pub fn reduced_dnf<T: Int>(r: &RelationDef<T>, limits: &Limits) -> Result<NormalForm<T>> {
    reduce(r.formula().dnf(limits)?, r.arity(), limits)
}

/// Every clause of the reduced CNF has at most one `=` literal.
///
/// Order-dialect relations are never Horn in this sense.
pub fn is_horn<T: Int>(r: &RelationDef<T>, limits: &Limits) -> Result<bool> {
    if r.dialect() != Dialect::SuccessorOnly {
        return Ok(false);
    }
    Ok(horn_clause_index(&reduced_cnf(r, limits)?).is_none())
}

/// No disjunct of the reduced DNF contains a `!=` literal.
pub fn is_positive<T: Int>(r: &RelationDef<T>, limits: &Limits) -> Result<bool> {
    if r.dialect() != Dialect::SuccessorOnly {
        return Ok(false);
    }
    let dnf = reduced_dnf(r, limits)?;
    let positive = dnf.literals().all(|l| l.cmp == Cmp::Eq);
    Ok(positive)
}

/// Index of the first clause with two or more positive literals.
pub(crate) fn horn_clause_index<T: Int>(cnf: &NormalForm<T>) -> Option<usize> {
    cnf.clauses
        .iter()
        .position(|c| c.iter().filter(|l| l.cmp == Cmp::Eq).count() > 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn rel(arity: usize, src: &str) -> RelationDef<i64> {
        RelationDef::new("R", arity, parse_formula(src).unwrap()).unwrap()
    }

    const F: &str = "(x2 = x1 + 1 -> x4 = x3 + 1) & (x4 = x3 + 1 -> x2 = x1 + 1)";
    const DIST5: &str = "x1 = x2 + 5 | x2 = x1 + 5";

    #[test]
    fn horn_examples() {
        let l = Limits::default();
        assert!(is_horn(&rel(4, F), &l).unwrap());
        assert!(!is_horn(&rel(2, DIST5), &l).unwrap());
        assert!(is_horn(&RelationDef::successor("S", 3i64), &l).unwrap());
        assert!(!is_horn(&rel(2, "x1 <= x2"), &l).unwrap());
    }

    #[test]
    fn positive_examples() {
        let l = Limits::default();
        assert!(is_positive(&rel(2, DIST5), &l).unwrap());
        assert!(!is_positive(&rel(4, F), &l).unwrap());
        assert!(is_positive(&rel(2, "x1 <= x1"), &l).unwrap());
    }

    #[test]
    fn disguised_horn_is_horn() {
        // (x1 = x2 | x1 = x2 + 1) & x1 = x2 reduces to the unit x1 = x2
        let r = rel(2, "(x1 = x2 | x1 = x2 + 1) & x1 = x2");
        assert!(is_horn(&r, &Limits::default()).unwrap());
    }
}
