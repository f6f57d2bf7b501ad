//! Successor definitions of order-dialect relations.
//!
//! A relation of qe-degree `q` has a definition using only `=` and `!=` with
//! offsets in `[-q, q]` iff its membership is a function of the pattern
//! `(i, j) ↦ x_i - x_j` when that difference lies in `[-q, q]`, and "far"
//! otherwise. Every pattern that occurs is realized inside the window
//! `{0, ..., (q+1)k - 1}^k`, so the test and the definition are both exact.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use crate::error::{Error, Limits, Result};
use crate::formula::{Formula, Literal, NormalForm, Shape};
use crate::grid::for_each_point;
use crate::language::RelationDef;
use crate::num::{span, Int};

/// Upper bound on the size of a synthesized normal form.
const MAX_PATTERN_LITERALS: u64 = 4_000;

type Pattern<T> = Vec<Option<T>>;

/// An equivalent successor-only definition, or `None` if none exists.
pub fn successor_rewrite<T: Int>(
    r: &RelationDef<T>,
    limits: &Limits,
) -> Result<Option<RelationDef<T>>> {
    let k = r.arity();
    let q = r.qe_degree();
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    let top = (q + T::one()) * T::from_usize(k.max(1)) - T::one();
    let mut table: BTreeMap<Pattern<T>, bool> = BTreeMap::new();
    let clash = for_each_point(k, T::zero(), top, limits.enumeration, |p| {
        let key: Pattern<T> = pairs
            .iter()
            .map(|&(i, j)| {
                let d = p[i] - p[j];
                (d.abs() <= q).then_some(d)
            })
            .collect();
        let member = r.contains(p);
        match table.insert(key, member) {
            Some(prev) if prev != member => ControlFlow::Break(()),
            _ => ControlFlow::Continue(()),
        }
    })?;
    if clash.is_some() {
        return Ok(None);
    }
    let per_pattern = (pairs.len() as u64) * (2 * q.to_u64().unwrap_or(u64::MAX) + 1);
    let size = (table.len() as u64).saturating_mul(per_pattern);
    if size > MAX_PATTERN_LITERALS.min(limits.normal_form_literals) {
        return Err(Error::SizeLimitExceeded {
            limit: MAX_PATTERN_LITERALS.min(limits.normal_form_literals),
        });
    }
    let mut dnf = Vec::new();
    let mut cnf = Vec::new();
    for (key, &member) in &table {
        if member {
            let mut term = Vec::new();
            for (&(i, j), d) in pairs.iter().zip(key) {
                match d {
                    Some(d) => term.push(Literal::eq(j, i, -*d).canonical()),
                    None => term.extend(span(-q, q).map(|e| Literal::ne(j, i, e).canonical())),
                }
            }
            term.sort();
            dnf.push(term);
        } else {
            let mut clause = Vec::new();
            for (&(i, j), d) in pairs.iter().zip(key) {
                match d {
                    Some(d) => clause.push(Literal::ne(j, i, -*d).canonical()),
                    None => clause.extend(span(-q, q).map(|e| Literal::eq(j, i, e).canonical())),
                }
            }
            clause.sort();
            cnf.push(clause);
        }
    }
    let formula = Formula::from_normal_forms(
        NormalForm::new(Shape::Cnf, cnf),
        NormalForm::new(Shape::Dnf, dnf),
    );
    r.with_formula(formula).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{equivalent, parse_formula};
    use crate::language::Dialect;

    fn rel(arity: usize, src: &str) -> RelationDef<i64> {
        RelationDef::new("R", arity, parse_formula(src).unwrap()).unwrap()
    }

    #[test]
    fn bounded_difference_becomes_successor() {
        let l = Limits::default();
        let r = rel(2, "x1 <= x2 + 2 & x2 <= x1 + 2");
        let s = successor_rewrite(&r, &l).unwrap().unwrap();
        assert_eq!(s.dialect(), Dialect::SuccessorOnly);
        assert!(equivalent(r.formula(), s.formula(), 2, &l).unwrap());
        let cnf = Formula::new(s.formula().cnf(&l).unwrap().to_expr());
        assert!(equivalent(r.formula(), &cnf, 2, &l).unwrap());
    }

    #[test]
    fn cofinite_gap_becomes_successor() {
        let l = Limits::default();
        let r = rel(2, "x1 <= x2 | x2 <= x1 - 5");
        let s = successor_rewrite(&r, &l).unwrap().unwrap();
        assert!(equivalent(r.formula(), s.formula(), 2, &l).unwrap());
    }

    #[test]
    fn order_has_no_successor_definition() {
        let l = Limits::default();
        assert!(successor_rewrite(&rel(2, "x1 <= x2"), &l)
            .unwrap()
            .is_none());
        assert!(successor_rewrite(&rel(3, "x1 <= x2 | x3 = x1"), &l)
            .unwrap()
            .is_none());
    }
}
