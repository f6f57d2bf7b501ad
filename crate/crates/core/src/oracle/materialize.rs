use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Limits, Result};
use crate::grid::for_each_point;
use crate::language::RelationDef;
use crate::num::Int;

/// The tuples of a relation inside `[lo, hi]^arity`, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleSet<T> {
    pub arity: usize,
    pub lo: T,
    pub hi: T,
    tuples: Vec<Vec<T>>,
}

impl<T: Int> TupleSet<T> {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[T]> {
        self.tuples.iter().map(Vec::as_slice)
    }

    pub fn contains(&self, tuple: &[T]) -> bool {
        self.tuples
            .binary_search_by(|t| t.as_slice().cmp(tuple))
            .is_ok()
    }

    /// The tuples lying inside `[lo, hi]^arity`.
    pub fn restrict(&self, lo: T, hi: T) -> TupleSet<T> {
        TupleSet {
            arity: self.arity,
            lo,
            hi,
            tuples: self
                .tuples
                .iter()
                .filter(|t| t.iter().all(|&v| lo <= v && v <= hi))
                .cloned()
                .collect(),
        }
    }
}

/// All tuples of `r` in `[lo, hi]^arity`, in lexicographic order.
pub fn materialize<T: Int>(
    r: &RelationDef<T>,
    lo: T,
    hi: T,
    limits: &Limits,
) -> Result<TupleSet<T>> {
    let mut tuples = Vec::new();
    for_each_point::<T, ()>(r.arity(), lo, hi, limits.enumeration, |p| {
        if r.contains(p) {
            tuples.push(p.to_vec());
        }
        ControlFlow::Continue(())
    })?;
    Ok(TupleSet {
        arity: r.arity(),
        lo,
        hi,
        tuples,
    })
}
