//! Polymorphism testing: does a componentwise operation keep a relation closed?
//!
//! The question asked is whether some pair of tuples `s, t` of `R` inside the
//! window `[-B, B]^k` has `op(s, t) ∉ R`. Both relations and operations commute
//! with translation, so a violating pair fits the window iff one exists with
//! `s[0] = 0` and total span at most `2B`. Literal truth depends only on
//! differences up to the qe-degree `q`, and the modular operations only on
//! residues mod `d`; shrinking any gap wider than `q` between consecutive
//! distinct coordinates to a width in `(q, q + d]` with the same residue keeps
//! every literal and every operation result unchanged. So the search only
//! visits pairs whose sorted coordinates have gaps at most `q + d`, which is
//! exactly as strong as visiting every pair in the window.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::Operation;
use crate::error::{Error, Limits, Result};
use crate::language::RelationDef;
use crate::num::Int;

/// Outcome of a preservation test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preservation<T> {
    Preserved,
    /// Both tuples are in the relation; `op(first, second)` is not.
    Violated {
        first: Vec<T>,
        second: Vec<T>,
    },
}

impl<T> Preservation<T> {
    pub fn is_preserved(&self) -> bool {
        matches!(self, Preservation::Preserved)
    }
}

/// Default window half-width `(q + d + 1) * 2 * arity`.
pub fn default_halfwidth<T: Int>(r: &RelationDef<T>, op: &Operation) -> T {
    let d = T::from_usize(op.effective_modulus() as usize);
    (r.qe_degree() + d + T::one()) * T::lit(2) * T::from_usize(r.arity())
}

/// Tests `op` on `r` with the default window.
pub fn preserved_by_default<T: Int>(
    r: &RelationDef<T>,
    op: &Operation,
    limits: &Limits,
) -> Result<Preservation<T>> {
    preserved_by(r, op, default_halfwidth(r, op), limits)
}

/// Searches the window `[-halfwidth, halfwidth]` for a violating pair.
///
/// A `Violated` answer is always genuine. The returned pair is translated so
/// that its smallest coordinate is 0. The enumeration budget bounds the number
/// of search nodes.
pub fn preserved_by<T: Int>(
    r: &RelationDef<T>,
    op: &Operation,
    halfwidth: T,
    limits: &Limits,
) -> Result<Preservation<T>> {
    let k = r.arity();
    let d = T::from_usize(op.effective_modulus() as usize);
    let mut search = PairSearch {
        relation: r,
        op,
        arity: k,
        max_gap: r.qe_degree() + d,
        max_span: halfwidth * T::lit(2),
        coords: Vec::with_capacity(2 * k),
        levels: Vec::with_capacity(2 * k),
        combined: vec![T::zero(); k],
        nodes: 0,
        budget: limits.enumeration,
    };
    if halfwidth < T::zero() {
        return Ok(Preservation::Preserved);
    }
    match search.extend()? {
        ControlFlow::Continue(()) => Ok(Preservation::Preserved),
        ControlFlow::Break(()) => {
            let min = search.coords.iter().copied().min().unwrap_or_else(T::zero);
            let shifted: Vec<T> = search.coords.iter().map(|&v| v - min).collect();
            Ok(Preservation::Violated {
                first: shifted[..k].to_vec(),
                second: shifted[k..].to_vec(),
            })
        }
    }
}

struct PairSearch<'a, T> {
    relation: &'a RelationDef<T>,
    op: &'a Operation,
    arity: usize,
    max_gap: T,
    max_span: T,
    /// `s` followed by `t`, as assigned so far.
    coords: Vec<T>,
    /// Sorted distinct values with multiplicities.
    levels: Vec<(T, usize)>,
    combined: Vec<T>,
    nodes: u128,
    budget: u128,
}

impl<T: Int> PairSearch<'_, T> {
    /// Extra points needed to bridge every gap wider than `max_gap`.
    fn deficit(&self) -> usize {
        self.levels
            .windows(2)
            .map(|w| {
                let gap = w[1].0 - w[0].0;
                let need = (gap + self.max_gap - T::one()) / self.max_gap - T::one();
                need.to_usize().unwrap_or(usize::MAX)
            })
            .fold(0usize, |a, b| a.saturating_add(b))
    }

    fn span(&self) -> T {
        match (self.levels.first(), self.levels.last()) {
            (Some(a), Some(b)) => b.0 - a.0,
            _ => T::zero(),
        }
    }

    fn push(&mut self, v: T) {
        self.coords.push(v);
        match self.levels.binary_search_by(|(x, _)| x.cmp(&v)) {
            Ok(i) => self.levels[i].1 += 1,
            Err(i) => self.levels.insert(i, (v, 1)),
        }
    }

    fn pop(&mut self) {
        let v = self.coords.pop().expect("pop on empty search");
        let i = self
            .levels
            .binary_search_by(|(x, _)| x.cmp(&v))
            .expect("level present");
        if self.levels[i].1 == 1 {
            self.levels.remove(i);
        } else {
            self.levels[i].1 -= 1;
        }
    }

    fn extend(&mut self) -> Result<ControlFlow<()>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                required: self.nodes,
                budget: self.budget,
            });
        }
        let k = self.arity;
        let j = self.coords.len();
        if j == k && !self.relation.contains(&self.coords[..k]) {
            return Ok(ControlFlow::Continue(()));
        }
        if j == 2 * k {
            let (s, t) = self.coords.split_at(k);
            if !self.relation.contains(t) {
                return Ok(ControlFlow::Continue(()));
            }
            for i in 0..k {
                self.combined[i] = self.op.apply(s[i], t[i]);
            }
            return Ok(if self.relation.contains(&self.combined) {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(())
            });
        }
        if j == 0 {
            self.push(T::zero());
            let r = self.extend()?;
            if r.is_continue() {
                self.pop();
            }
            return Ok(r);
        }
        let remaining = 2 * k - j - 1;
        let reach = self.max_gap * T::from_usize(remaining + 1);
        let lo = self.levels[0].0 - reach;
        let hi = self.levels[self.levels.len() - 1].0 + reach;
        let mut v = lo;
        while v <= hi {
            self.push(v);
            if self.span() <= self.max_span && self.deficit() <= remaining {
                let r = self.extend()?;
                if r.is_break() {
                    return Ok(r);
                }
            }
            self.pop();
            v = v + T::one();
        }
        Ok(ControlFlow::Continue(()))
    }
}
