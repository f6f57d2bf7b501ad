//! Quantifier-free formulas over integer difference literals.
//!
//! A [`Literal`] reads `x_lhs CMP x_rhs + offset`; formulas are boolean trees
//! over literals with lazily computed, cached CNF and DNF views.

mod normal;
pub(crate) mod parser;
mod reduce;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Limits, Result};
use crate::num::Int;

pub use normal::{NormalForm, Shape};
pub use parser::{parse_formula, parse_language};
pub use reduce::{distinguishing_point, equivalent, reduce};

/// Comparator of a difference literal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cmp {
    Le,
    Lt,
    Eq,
    Ne,
}

impl Cmp {
    pub fn symbol(self) -> &'static str {
        match self {
            Cmp::Le => "<=",
            Cmp::Lt => "<",
            Cmp::Eq => "=",
            Cmp::Ne => "!=",
        }
    }

    /// True for the successor comparators `=` and `!=`.
    pub fn is_successor(self) -> bool {
        matches!(self, Cmp::Eq | Cmp::Ne)
    }
}

/// `value(lhs) cmp value(rhs) + offset`, with 0-based variable indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal<T> {
    pub lhs: usize,
    pub rhs: usize,
    pub cmp: Cmp,
    pub offset: T,
}

impl<T: Int> Literal<T> {
    pub fn new(lhs: usize, cmp: Cmp, rhs: usize, offset: T) -> Self {
        Literal {
            lhs,
            rhs,
            cmp,
            offset,
        }
    }

    /// `lhs = rhs + offset`.
    pub fn eq(lhs: usize, rhs: usize, offset: T) -> Self {
        Self::new(lhs, Cmp::Eq, rhs, offset)
    }

    /// `lhs != rhs + offset`.
    pub fn ne(lhs: usize, rhs: usize, offset: T) -> Self {
        Self::new(lhs, Cmp::Ne, rhs, offset)
    }

    /// `lhs <= rhs + offset`.
    pub fn le(lhs: usize, rhs: usize, offset: T) -> Self {
        Self::new(lhs, Cmp::Le, rhs, offset)
    }

    /// `lhs < rhs + offset`.
    pub fn lt(lhs: usize, rhs: usize, offset: T) -> Self {
        Self::new(lhs, Cmp::Lt, rhs, offset)
    }

    /// Truth value given the difference `value(lhs) - value(rhs)`.
    #[inline]
    pub fn holds_at_difference(&self, diff: T) -> bool {
        match self.cmp {
            Cmp::Le => diff <= self.offset,
            Cmp::Lt => diff < self.offset,
            Cmp::Eq => diff == self.offset,
            Cmp::Ne => diff != self.offset,
        }
    }

    /// Evaluates the literal; panics if an index is out of range.
    #[inline]
    pub fn holds(&self, values: &[T]) -> bool {
        self.holds_at_difference(values[self.lhs] - values[self.rhs])
    }

    /// The complementary literal: `!(a <= b + c)` is `b < a - c`, and so on.
    pub fn negate(&self) -> Self {
        match self.cmp {
            Cmp::Le => Literal::lt(self.rhs, self.lhs, -self.offset),
            Cmp::Lt => Literal::le(self.rhs, self.lhs, -self.offset),
            Cmp::Eq => Literal::ne(self.lhs, self.rhs, self.offset),
            Cmp::Ne => Literal::eq(self.lhs, self.rhs, self.offset),
        }
    }

    /// Orients `=`/`!=` literals so that `lhs >= rhs`; order literals are unchanged.
    pub fn canonical(&self) -> Self {
        if self.cmp.is_successor() && self.lhs < self.rhs {
            Literal::new(self.rhs, self.cmp, self.lhs, -self.offset)
        } else {
            *self
        }
    }

    /// `Some(truth)` when both sides name the same variable.
    pub fn constant_value(&self) -> Option<bool> {
        (self.lhs == self.rhs).then(|| self.holds_at_difference(T::zero()))
    }

    pub fn max_var(&self) -> usize {
        self.lhs.max(self.rhs)
    }

    /// Positive successor literal (`=`).
    pub fn is_positive(&self) -> bool {
        self.cmp == Cmp::Eq
    }
}

impl<T: Int> fmt::Display for Literal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x{} {} x{}",
            self.lhs + 1,
            self.cmp.symbol(),
            self.rhs + 1
        )?;
        if self.offset > T::zero() {
            write!(f, " + {}", self.offset)
        } else if self.offset < T::zero() {
            write!(f, " - {}", -self.offset)
        } else {
            Ok(())
        }
    }
}

/// Boolean formula tree over difference literals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr<T> {
    Const(bool),
    Lit(Literal<T>),
    Not(Box<Expr<T>>),
    And(Vec<Expr<T>>),
    Or(Vec<Expr<T>>),
}

impl<T: Int> Expr<T> {
    pub fn not(e: Expr<T>) -> Self {
        Expr::Not(Box::new(e))
    }

    /// `a -> b`, encoded as `!a | b`.
    pub fn implies(a: Expr<T>, b: Expr<T>) -> Self {
        Expr::Or(vec![Expr::not(a), b])
    }

    pub fn holds(&self, values: &[T]) -> bool {
        match self {
            Expr::Const(b) => *b,
            Expr::Lit(l) => l.holds(values),
            Expr::Not(e) => !e.holds(values),
            Expr::And(es) => es.iter().all(|e| e.holds(values)),
            Expr::Or(es) => es.iter().any(|e| e.holds(values)),
        }
    }

    /// Visits every literal leaf in left-to-right order.
    pub fn for_each_literal(&self, f: &mut impl FnMut(&Literal<T>)) {
        match self {
            Expr::Const(_) => {}
            Expr::Lit(l) => f(l),
            Expr::Not(e) => e.for_each_literal(f),
            Expr::And(es) | Expr::Or(es) => es.iter().for_each(|e| e.for_each_literal(f)),
        }
    }

    /// Rewrites every literal leaf; `map` may return a constant.
    pub fn map_literals(&self, map: &mut impl FnMut(&Literal<T>) -> Expr<T>) -> Expr<T> {
        match self {
            Expr::Const(b) => Expr::Const(*b),
            Expr::Lit(l) => map(l),
            Expr::Not(e) => Expr::not(e.map_literals(map)),
            Expr::And(es) => Expr::And(es.iter().map(|e| e.map_literals(map)).collect()),
            Expr::Or(es) => Expr::Or(es.iter().map(|e| e.map_literals(map)).collect()),
        }
    }

    pub fn literals(&self) -> Vec<Literal<T>> {
        let mut out = Vec::new();
        self.for_each_literal(&mut |l| out.push(*l));
        out
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, parent: u8) -> fmt::Result {
        // precedence: Or = 1, And = 2, Not/atoms = 3
        match self {
            Expr::Const(true) => write!(f, "x1 <= x1"),
            Expr::Const(false) => write!(f, "x1 < x1"),
            Expr::Lit(l) => write!(f, "{l}"),
            Expr::Not(e) => {
                write!(f, "!")?;
                match **e {
                    Expr::Not(_) => e.fmt_prec(f, 3),
                    _ => {
                        write!(f, "(")?;
                        e.fmt_prec(f, 0)?;
                        write!(f, ")")
                    }
                }
            }
            Expr::And(es) | Expr::Or(es) => {
                let (prec, sep, empty) = match self {
                    Expr::And(_) => (2, " & ", "x1 <= x1"),
                    _ => (1, " | ", "x1 < x1"),
                };
                if es.is_empty() {
                    return write!(f, "{empty}");
                }
                if es.len() == 1 {
                    return es[0].fmt_prec(f, parent);
                }
                let paren = parent >= prec;
                if paren {
                    write!(f, "(")?;
                }
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{sep}")?;
                    }
                    e.fmt_prec(f, prec)?;
                }
                if paren {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl<T: Int> fmt::Display for Expr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// A formula tree together with its cached normal forms.
///
/// The caches are filled at most once and are safe to share across threads.
#[derive(Debug, Clone)]
pub struct Formula<T> {
    expr: Expr<T>,
    max_var: Option<usize>,
    qe_degree: T,
    cnf: OnceLock<NormalForm<T>>,
    dnf: OnceLock<NormalForm<T>>,
}

impl<T: PartialEq> PartialEq for Formula<T> {
    fn eq(&self, other: &Self) -> bool {
        self.expr == other.expr
    }
}

impl<T: Eq> Eq for Formula<T> {}

impl<T: Int> From<Expr<T>> for Formula<T> {
    fn from(expr: Expr<T>) -> Self {
        Formula::new(expr)
    }
}

impl<T: Int> From<Literal<T>> for Formula<T> {
    fn from(lit: Literal<T>) -> Self {
        Formula::new(Expr::Lit(lit))
    }
}

impl<T: Int> Formula<T> {
    pub fn new(expr: Expr<T>) -> Self {
        let mut max_var = None;
        let mut q = T::zero();
        expr.for_each_literal(&mut |l| {
            max_var = Some(max_var.map_or(l.max_var(), |m: usize| m.max(l.max_var())));
            q = q.max(l.offset.abs());
        });
        Formula {
            expr,
            max_var,
            qe_degree: q,
            cnf: OnceLock::new(),
            dnf: OnceLock::new(),
        }
    }

    pub fn expr(&self) -> &Expr<T> {
        &self.expr
    }

    /// Largest variable index used, if any literal is present.
    pub fn max_var(&self) -> Option<usize> {
        self.max_var
    }

    /// Number of variables an assignment must cover.
    pub fn min_vars(&self) -> usize {
        self.max_var.map_or(0, |m| m + 1)
    }

    /// Largest absolute literal offset (0 without literals).
    pub fn qe_degree(&self) -> T {
        self.qe_degree
    }

    pub fn evaluate(&self, values: &[T]) -> Result<bool> {
        if let Some(m) = self.max_var {
            if m >= values.len() {
                return Err(Error::MissingVariable(values.len()));
            }
        }
        Ok(self.expr.holds(values))
    }

    /// Evaluates without the coverage check; panics if an index is out of range.
    #[inline]
    pub fn holds(&self, values: &[T]) -> bool {
        self.expr.holds(values)
    }

    /// True if every literal between distinct variables uses `=` or `!=`.
    pub fn is_successor_only(&self) -> bool {
        let mut ok = true;
        self.expr
            .for_each_literal(&mut |l| ok &= l.cmp.is_successor() || l.lhs == l.rhs);
        ok
    }

    /// Cached CNF view.
    pub fn cnf(&self, limits: &Limits) -> Result<&NormalForm<T>> {
        cached(&self.cnf, || {
            NormalForm::from_expr(&self.expr, Shape::Cnf, limits)
        })
    }

    /// Cached DNF view.
    pub fn dnf(&self, limits: &Limits) -> Result<&NormalForm<T>> {
        cached(&self.dnf, || {
            NormalForm::from_expr(&self.expr, Shape::Dnf, limits)
        })
    }

    /// Equivalent formula whose tree is the CNF, with the CNF view populated.
    pub fn to_cnf(&self, limits: &Limits) -> Result<Formula<T>> {
        Ok(Formula::from_normal_form(self.cnf(limits)?.clone()))
    }

    /// Equivalent formula whose tree is the DNF, with the DNF view populated.
    pub fn to_dnf(&self, limits: &Limits) -> Result<Formula<T>> {
        Ok(Formula::from_normal_form(self.dnf(limits)?.clone()))
    }

    pub fn from_normal_form(nf: NormalForm<T>) -> Formula<T> {
        let f = Formula::new(nf.to_expr());
        let cell = match nf.shape {
            Shape::Cnf => &f.cnf,
            Shape::Dnf => &f.dnf,
        };
        let _ = cell.set(nf);
        f
    }

    /// Formula whose tree is `dnf`, with both views populated. The caller
    /// guarantees that `cnf` and `dnf` define the same relation.
    pub(crate) fn from_normal_forms(cnf: NormalForm<T>, dnf: NormalForm<T>) -> Formula<T> {
        debug_assert!(cnf.shape == Shape::Cnf && dnf.shape == Shape::Dnf);
        let f = Formula::new(dnf.to_expr());
        let _ = f.cnf.set(cnf);
        let _ = f.dnf.set(dnf);
        f
    }

    /// The populated normal-form view, CNF first.
    pub fn normal_form_view(&self) -> Option<&NormalForm<T>> {
        self.cnf.get().or_else(|| self.dnf.get())
    }
}

fn cached<'a, T>(cell: &'a OnceLock<T>, init: impl FnOnce() -> Result<T>) -> Result<&'a T> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = init()?;
    Ok(cell.get_or_init(|| v))
}

impl<T: Int> fmt::Display for Formula<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f_relation() -> Formula<i64> {
        parse_formula("(x2 = x1 + 1 -> x4 = x3 + 1) & (x4 = x3 + 1 -> x2 = x1 + 1)").unwrap()
    }

    #[test]
    fn evaluates_biconditional() {
        let f = f_relation();
        assert!(f.evaluate(&[0, 1, 5, 6]).unwrap());
        assert!(!f.evaluate(&[0, 1, 5, 7]).unwrap());
        assert!(f.evaluate(&[0, 3, 5, 7]).unwrap());
    }

    #[test]
    fn self_literal_is_reflexive() {
        let f: Formula<i64> = Literal::le(0, 0, 0).into();
        for v in -3..3 {
            assert!(f.evaluate(&[v]).unwrap());
        }
    }

    #[test]
    fn missing_variable_is_reported() {
        let f = f_relation();
        assert_eq!(f.evaluate(&[0, 1, 2]), Err(Error::MissingVariable(3)));
    }

    #[test]
    fn negation_swaps_operands() {
        let l = Literal::<i64>::le(0, 1, 3);
        assert_eq!(l.negate(), Literal::lt(1, 0, -3));
        assert_eq!(l.negate().negate(), l);
        for a in -6..6 {
            for b in -6..6 {
                assert_eq!(l.holds(&[a, b]), !l.negate().holds(&[a, b]));
            }
        }
    }

    #[test]
    fn canonical_orientation_preserves_meaning() {
        let l = Literal::<i64>::eq(0, 1, 2);
        let c = l.canonical();
        assert_eq!(c, Literal::eq(1, 0, -2));
        for a in -4..4 {
            for b in -4..4 {
                assert_eq!(l.holds(&[a, b]), c.holds(&[a, b]));
            }
        }
    }

    #[test]
    fn qe_degree_and_display() {
        let f = f_relation();
        assert_eq!(f.qe_degree(), 1);
        assert_eq!(f.min_vars(), 4);
        assert_eq!(Literal::<i64>::eq(1, 0, -3).to_string(), "x2 = x1 - 3");
    }

    #[test]
    fn generic_over_scalar() {
        let f: Formula<i32> = parse_formula("x1 <= x2 + 2 | x2 = x1 - 1").unwrap();
        assert!(f.evaluate(&[3, 1]).unwrap());
        let g: Formula<i128> = parse_formula("x1 <= x2 + 2 | x2 = x1 - 1").unwrap();
        assert!(!g.evaluate(&[30, 1]).unwrap());
    }
}
