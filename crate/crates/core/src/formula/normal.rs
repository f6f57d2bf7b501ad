use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Cmp, Expr, Literal};
use crate::error::{Error, Limits, Result};
use crate::num::Int;

/// Which normal form a clause list denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    /// Conjunction of disjunctive clauses. No clauses means true; an empty clause is false.
    Cnf,
    /// Disjunction of conjunctive terms. No terms means false; an empty term is true.
    Dnf,
}

impl Shape {
    pub fn dual(self) -> Shape {
        match self {
            Shape::Cnf => Shape::Dnf,
            Shape::Dnf => Shape::Cnf,
        }
    }
}

/// A CNF or DNF clause list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalForm<T> {
    pub shape: Shape,
    pub clauses: Vec<Vec<Literal<T>>>,
}

impl<T: Int> NormalForm<T> {
    pub fn new(shape: Shape, clauses: Vec<Vec<Literal<T>>>) -> Self {
        NormalForm { shape, clauses }
    }

    pub fn holds(&self, values: &[T]) -> bool {
        match self.shape {
            Shape::Cnf => self
                .clauses
                .iter()
                .all(|c| c.iter().any(|l| l.holds(values))),
            Shape::Dnf => self
                .clauses
                .iter()
                .any(|c| c.iter().all(|l| l.holds(values))),
        }
    }

    pub fn literal_count(&self) -> usize {
        self.clauses.iter().map(Vec::len).sum()
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal<T>> {
        self.clauses.iter().flatten()
    }

    pub fn qe_degree(&self) -> T {
        self.literals()
            .map(|l| l.offset.abs())
            .fold(T::zero(), |a, b| a.max(b))
    }

    pub fn to_expr(&self) -> Expr<T> {
        let clause = |c: &Vec<Literal<T>>| {
            let lits = c.iter().map(|l| Expr::Lit(*l)).collect();
            match self.shape {
                Shape::Cnf => Expr::Or(lits),
                Shape::Dnf => Expr::And(lits),
            }
        };
        let clauses = self.clauses.iter().map(clause).collect();
        match self.shape {
            Shape::Cnf => Expr::And(clauses),
            Shape::Dnf => Expr::Or(clauses),
        }
    }

    /// Normalizes a tree: negations are pushed onto literals, then `&`/`|` are
    /// distributed. Clauses are sorted and deduplicated; complementary pairs
    /// and constant self-literals are folded away.
    pub fn from_expr(expr: &Expr<T>, shape: Shape, limits: &Limits) -> Result<Self> {
        let nnf = push_negations(expr, false);
        let mut budget = Budget {
            used: 0,
            limit: limits.normal_form_literals,
        };
        let raw = distribute(&nnf, shape, &mut budget)?;
        let mut clauses: Vec<Vec<Literal<T>>> = Vec::with_capacity(raw.len());
        for mut c in raw {
            c.sort();
            c.dedup();
            let complementary = c
                .iter()
                .any(|l| c.binary_search(&l.negate().canonical()).is_ok());
            if complementary {
                // tautological clause (CNF) or contradictory term (DNF)
                continue;
            }
            if !clauses.contains(&c) {
                clauses.push(c);
            }
        }
        Ok(NormalForm { shape, clauses })
    }
}

struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    fn charge(&mut self, n: usize) -> Result<()> {
        self.used = self.used.saturating_add(n as u64);
        if self.used > self.limit {
            Err(Error::SizeLimitExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Negation normal form: the result contains no `Not` nodes.
fn push_negations<T: Int>(e: &Expr<T>, negated: bool) -> Expr<T> {
    match e {
        Expr::Const(b) => Expr::Const(*b != negated),
        Expr::Lit(l) => {
            let l = if negated { l.negate() } else { *l };
            match l.constant_value() {
                Some(b) => Expr::Const(b),
                None => Expr::Lit(l.canonical()),
            }
        }
        Expr::Not(inner) => push_negations(inner, !negated),
        Expr::And(es) | Expr::Or(es) => {
            let children = es.iter().map(|c| push_negations(c, negated)).collect();
            let is_and = matches!(e, Expr::And(_)) != negated;
            if is_and {
                Expr::And(children)
            } else {
                Expr::Or(children)
            }
        }
    }
}

/// Clause list for an NNF tree. For CNF the outer connective is `&`.
fn distribute<T: Int>(
    e: &Expr<T>,
    shape: Shape,
    budget: &mut Budget,
) -> Result<Vec<Vec<Literal<T>>>> {
    // `unit` is the identity of the outer connective (true for CNF).
    let outer_identity = |b: bool| match (shape, b) {
        (Shape::Cnf, true) | (Shape::Dnf, false) => vec![],
        _ => vec![vec![]],
    };
    match e {
        Expr::Const(b) => Ok(outer_identity(*b)),
        Expr::Lit(l) => {
            budget.charge(1)?;
            Ok(vec![vec![*l]])
        }
        Expr::Not(_) => unreachable!("input is in negation normal form"),
        Expr::And(es) | Expr::Or(es) => {
            let is_outer = matches!(
                (e, shape),
                (Expr::And(_), Shape::Cnf) | (Expr::Or(_), Shape::Dnf)
            );
            if is_outer {
                let mut out = Vec::new();
                for c in es {
                    out.extend(distribute(c, shape, budget)?);
                }
                Ok(out)
            } else {
                // cross product of the children's clause lists
                let mut acc: Vec<Vec<Literal<T>>> = vec![vec![]];
                for c in es {
                    let part = distribute(c, shape, budget)?;
                    let mut next = Vec::with_capacity(acc.len() * part.len());
                    for a in &acc {
                        for b in &part {
                            let mut merged = a.clone();
                            merged.extend_from_slice(b);
                            if tidy(&mut merged, shape) {
                                budget.charge(merged.len())?;
                                next.push(merged);
                            }
                        }
                    }
                    acc = if next.len() <= SUBSUMPTION_CAP {
                        drop_subsumed(next)
                    } else {
                        next
                    };
                    if acc.is_empty() {
                        break;
                    }
                }
                Ok(acc)
            }
        }
    }
}

/// Above this many clauses the quadratic subsumption pass is skipped.
const SUBSUMPTION_CAP: usize = 2048;

/// Sorts and deduplicates a clause. Returns false when the clause is the
/// absorbing constant of its connective: a complementary pair, or two
/// different offsets on one variable pair under `=` (DNF) or `!=` (CNF).
fn tidy<T: Int>(c: &mut Vec<Literal<T>>, shape: Shape) -> bool {
    c.sort();
    c.dedup();
    let pinned = match shape {
        Shape::Dnf => Cmp::Eq,
        Shape::Cnf => Cmp::Ne,
    };
    for (i, l) in c.iter().enumerate() {
        if c.binary_search(&l.negate().canonical()).is_ok() {
            return false;
        }
        let clash = c[i + 1..]
            .iter()
            .any(|m| m.cmp == pinned && l.cmp == pinned && m.lhs == l.lhs && m.rhs == l.rhs);
        if clash {
            return false;
        }
    }
    true
}

/// Removes duplicate clauses and clauses that contain another clause.
fn drop_subsumed<T: Int>(mut clauses: Vec<Vec<Literal<T>>>) -> Vec<Vec<Literal<T>>> {
    clauses.sort_by_key(Vec::len);
    let mut kept: Vec<Vec<Literal<T>>> = Vec::with_capacity(clauses.len());
    for c in clauses {
        let subsumed = kept
            .iter()
            .any(|k| k.iter().all(|l| c.binary_search(l).is_ok()));
        if !subsumed {
            kept.push(c);
        }
    }
    kept
}

impl<T: Int> fmt::Display for NormalForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}
