//! Difference profiles of binary projections.
//!
//! For a relation `R` of arity `k` and qe-degree `q`, whether the difference
//! `δ = x_i - x_j` occurs in `π_{i,j}(R)` is constant for `δ > T` and for
//! `δ < -T`, where `T = (k - 1)(q + 1)`: past that point some gap between
//! consecutive coordinates exceeds `q + 1` and can be stretched or shrunk by
//! one without changing any literal.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Limits, Result};
use crate::grid::for_each_point;
use crate::language::RelationDef;
use crate::num::{span, Int};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProfileTag {
    /// Only finitely many differences occur.
    Finite,
    /// All but finitely many differences occur.
    Cofinite,
    /// All large differences of one sign occur, no large ones of the other.
    OneSidedInfinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceProfile<T> {
    pub i: usize,
    pub j: usize,
    pub halfwidth: T,
    /// Sorted members of `E ∩ [-halfwidth, halfwidth]`.
    pub members: Vec<T>,
    pub tag: ProfileTag,
}

impl<T: Int> DifferenceProfile<T> {
    /// `max(E) - min(E)` for finite profiles.
    pub fn spread(&self) -> Option<T> {
        if self.tag != ProfileTag::Finite {
            return None;
        }
        Some(match (self.members.first(), self.members.last()) {
            (Some(&a), Some(&b)) => b - a,
            _ => T::zero(),
        })
    }

    /// Differences between consecutive members.
    pub fn gaps(&self) -> impl Iterator<Item = T> + '_ {
        self.members.windows(2).map(|w| w[1] - w[0])
    }
}

/// Distance past which projection membership is constant per sign.
pub fn profile_threshold<T: Int>(r: &RelationDef<T>) -> T {
    T::from_usize(r.arity().saturating_sub(1)) * (r.qe_degree() + T::one())
}

/// Whether some tuple of `r` has `x_i - x_j = delta`.
pub fn has_difference<T: Int>(
    r: &RelationDef<T>,
    i: usize,
    j: usize,
    delta: T,
    limits: &Limits,
) -> Result<bool> {
    let k = r.arity();
    assert!(i < k && j < k && i != j, "projection indices out of range");
    let others: Vec<usize> = (0..k).filter(|&v| v != i && v != j).collect();
    let pad = T::from_usize(others.len()) * (r.qe_degree() + T::one());
    let lo = T::zero().min(delta) - pad;
    let hi = T::zero().max(delta) + pad;
    let mut tuple = vec![T::zero(); k];
    tuple[i] = delta;
    let hit = for_each_point(others.len(), lo, hi, limits.enumeration, |p| {
        for (&v, &x) in others.iter().zip(p) {
            tuple[v] = x;
        }
        if r.contains(&tuple) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(hit.is_some())
}

/// Profile of `π_{i,j}(r)` restricted to `[-halfwidth, halfwidth]`.
pub fn difference_profile<T: Int>(
    r: &RelationDef<T>,
    i: usize,
    j: usize,
    halfwidth: T,
    limits: &Limits,
) -> Result<DifferenceProfile<T>> {
    let mut members = Vec::new();
    for d in span(-halfwidth, halfwidth) {
        if has_difference(r, i, j, d, limits)? {
            members.push(d);
        }
    }
    let fringe = profile_threshold(r) + T::one();
    let above = has_difference(r, i, j, fringe, limits)?;
    let below = has_difference(r, i, j, -fringe, limits)?;
    let tag = match (above, below) {
        (false, false) => ProfileTag::Finite,
        (true, true) => ProfileTag::Cofinite,
        _ => ProfileTag::OneSidedInfinite,
    };
    Ok(DifferenceProfile {
        i,
        j,
        halfwidth,
        members,
        tag,
    })
}

/// Profiles of every projection `(i, j)` with `i < j`, each over `[-T-1, T+1]`.
pub fn all_profiles<T: Int>(
    r: &RelationDef<T>,
    limits: &Limits,
) -> Result<Vec<DifferenceProfile<T>>> {
    let k = r.arity();
    let b = profile_threshold(r) + T::one();
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            out.push(difference_profile(r, i, j, b, limits)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn rel(arity: usize, src: &str) -> RelationDef<i64> {
        RelationDef::new("R", arity, parse_formula(src).unwrap()).unwrap()
    }

    #[test]
    fn dist5_is_finite() {
        let r = rel(2, "x1 = x2 + 5 | x2 = x1 + 5");
        let p = difference_profile(&r, 0, 1, 8, &Limits::default()).unwrap();
        assert_eq!(p.members, vec![-5, 5]);
        assert_eq!(p.tag, ProfileTag::Finite);
        assert_eq!(p.spread(), Some(10));
    }

    #[test]
    fn strict_order_is_one_sided() {
        let r = rel(2, "x1 < x2");
        let p = difference_profile(&r, 0, 1, 3, &Limits::default()).unwrap();
        assert_eq!(p.tag, ProfileTag::OneSidedInfinite);
        assert_eq!(p.members, vec![-3, -2, -1]);
    }

    #[test]
    fn neq_is_cofinite() {
        let r = rel(2, "x1 != x2");
        let p = difference_profile(&r, 0, 1, 2, &Limits::default()).unwrap();
        assert_eq!(p.tag, ProfileTag::Cofinite);
        assert_eq!(p.members, vec![-2, -1, 1, 2]);
    }

    #[test]
    fn projection_through_a_third_coordinate() {
        // x1 - x2 = (x1 - x3) + (x3 - x2) in {0, 2, 4}
        let r = rel(3, "(x1 = x3 | x1 = x3 + 2) & (x3 = x2 | x3 = x2 + 2)");
        let p = difference_profile(&r, 0, 1, 6, &Limits::default()).unwrap();
        assert_eq!(p.members, vec![0, 2, 4]);
        assert_eq!(p.tag, ProfileTag::Finite);
    }
}
