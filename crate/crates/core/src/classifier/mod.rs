//! Complexity classification of constraint languages.
//!
//! [`classify`] walks a fixed decision order:
//!
//! 1. a language containing both `Dist_1` and `Dist_5` is NP-hard;
//! 2. a language with a one-sided infinite binary projection is tested for
//!    closure under max, then min, and is NP-hard if neither holds;
//! 3. a positive language is tested against modular max, then modular min,
//!    over a set of candidate moduli;
//! 4. otherwise the language is tractable iff every relation is Horn.
//!
//! Order-dialect languages without a one-sided projection are rewritten into
//! the successor dialect when an exact rewrite exists, and otherwise take the
//! max/min branch as well.

mod operation;
mod preservation;
mod profile;
mod rewrite;
mod syntactic;
mod verdict;

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use num_integer::Integer;

use crate::error::{Error, Limits, Result};
use crate::formula::{equivalent, Cmp, Expr, Formula, Literal};
use crate::grid::for_each_point;
use crate::language::{ConstraintLanguage, Dialect, RelationDef};
use crate::num::Int;

pub use operation::{OpKind, Operation};
pub use preservation::{default_halfwidth, preserved_by, preserved_by_default, Preservation};
pub use profile::{
    all_profiles, difference_profile, has_difference, profile_threshold, DifferenceProfile,
    ProfileTag,
};
pub use rewrite::successor_rewrite;
pub use syntactic::{is_horn, is_positive, reduced_cnf, reduced_dnf};
pub use verdict::{ComplexityVerdict, VerdictClass, Witness};

/// Largest modulus tried from profile spreads alone.
pub const MAX_SPREAD_MODULUS: u32 = 16;

/// `Dist_i`: `|x1 - x2| = i`.
pub fn dist_formula<T: Int>(i: T) -> Formula<T> {
    Formula::new(Expr::Or(vec![
        Expr::Lit(Literal::eq(0, 1, i)),
        Expr::Lit(Literal::eq(1, 0, i)),
    ]))
}

/// Classifies `lang`. Budget failures yield `DEGENERATE_OR_UNKNOWN`.
pub fn classify<T: Int>(lang: &ConstraintLanguage<T>, limits: &Limits) -> ComplexityVerdict<T> {
    let mut notes = Vec::new();
    match decide(lang, limits, &mut notes) {
        Ok(mut v) => {
            notes.append(&mut v.notes);
            v.notes = notes;
            v
        }
        Err(e) => {
            notes.push(format!("undetermined: {e}"));
            let mut v = ComplexityVerdict::new(VerdictClass::DegenerateOrUnknown);
            v.notes = notes;
            v
        }
    }
}

fn decide<T: Int>(
    lang: &ConstraintLanguage<T>,
    limits: &Limits,
    notes: &mut Vec<String>,
) -> Result<ComplexityVerdict<T>> {
    if let Some(v) = dist_shortcut(lang, limits, notes)? {
        return Ok(v);
    }

    let mut profiles = Vec::new();
    for r in lang.relations() {
        for p in all_profiles(r, limits)? {
            profiles.push((r.name().to_string(), p));
        }
    }
    if let Some((name, p)) = profiles
        .iter()
        .find(|(_, p)| p.tag == ProfileTag::OneSidedInfinite)
    {
        notes.push(format!(
            "projection ({}, {}) of {name} is one-sided infinite; order-expressive",
            p.i + 1,
            p.j + 1
        ));
        return order_branch(lang, limits);
    }

    let work = if lang.dialect() == Dialect::Order {
        let mut rewritten = Vec::new();
        for r in lang.relations() {
            if r.dialect() == Dialect::SuccessorOnly {
                rewritten.push(r.clone());
                continue;
            }
            match successor_rewrite(r, limits)? {
                Some(s) => {
                    notes.push(format!("{} rewritten with = and != only", r.name()));
                    rewritten.push(s);
                }
                None => {
                    notes.push(format!(
                        "{} has no successor definition; order-expressive",
                        r.name()
                    ));
                    return order_branch(lang, limits);
                }
            }
        }
        ConstraintLanguage::from_relations(rewritten)?
    } else {
        lang.clone()
    };

    let mut all_positive = true;
    for r in work.relations() {
        if !is_positive(r, limits)? {
            notes.push(format!("{} is not positive", r.name()));
            all_positive = false;
            break;
        }
    }
    if all_positive {
        notes.push("every relation is positive".into());
        let finite: Vec<_> = profiles.iter().map(|(_, p)| p.clone()).collect();
        return positive_branch(&work, &candidate_moduli(&finite), limits, notes);
    }

    let mut checks = Vec::new();
    for r in work.relations() {
        let cnf = reduced_cnf(r, limits)?;
        if let Some(c) = syntactic::horn_clause_index(&cnf) {
            notes.push(format!("{} has a non-Horn reduced clause", r.name()));
            let mut v = ComplexityVerdict::new(VerdictClass::NpHard);
            v.certificate
                .push(non_horn_witness(r, &cnf.clauses[c], limits)?);
            return Ok(v);
        }
        checks.push(format!("{}: Horn", r.name()));
    }
    let mut v = ComplexityVerdict::new(VerdictClass::HornTractable);
    v.checks = checks;
    Ok(v)
}

fn dist_shortcut<T: Int>(
    lang: &ConstraintLanguage<T>,
    limits: &Limits,
    notes: &mut Vec<String>,
) -> Result<Option<ComplexityVerdict<T>>> {
    let find = |i: i64| -> Result<Option<&RelationDef<T>>> {
        let target = dist_formula(T::lit(i));
        for r in lang.relations().iter().filter(|r| r.arity() == 2) {
            if equivalent(r.formula(), &target, 2, limits)? {
                return Ok(Some(r));
            }
        }
        Ok(None)
    };
    let (Some(d1), Some(d5)) = (find(1)?, find(5)?) else {
        return Ok(None);
    };
    notes.push(format!(
        "{} defines Dist_1 and {} defines Dist_5",
        d1.name(),
        d5.name()
    ));
    let mut v = ComplexityVerdict::new(VerdictClass::NpHard);
    v.rule = Some("Dist1/Dist5".into());
    for (r, op) in [(d1, Operation::MAX), (d5, Operation::MIN)] {
        if let Some(w) = violation(r, op, limits)? {
            v.certificate.push(w);
        }
    }
    Ok(Some(v))
}

fn violation<T: Int>(
    r: &RelationDef<T>,
    op: Operation,
    limits: &Limits,
) -> Result<Option<Witness<T>>> {
    Ok(match preserved_by_default(r, &op, limits)? {
        Preservation::Preserved => None,
        Preservation::Violated { first, second } => Some(Witness {
            relation: r.name().to_string(),
            operation: op.to_string(),
            image: op.apply_tuple(&first, &second),
            first,
            second,
        }),
    })
}

/// First relation of `lang` that `op` fails to preserve.
fn first_violation<T: Int>(
    lang: &ConstraintLanguage<T>,
    op: Operation,
    limits: &Limits,
) -> Result<Option<Witness<T>>> {
    for r in lang.relations() {
        if let Some(w) = violation(r, op, limits)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn closed_under<T: Int>(
    lang: &ConstraintLanguage<T>,
    op: Operation,
    class: VerdictClass,
) -> ComplexityVerdict<T> {
    let mut v = ComplexityVerdict::new(class);
    v.checks = lang
        .relations()
        .iter()
        .map(|r| format!("{}: preserved by {op}", r.name()))
        .collect();
    v
}

fn order_branch<T: Int>(
    lang: &ConstraintLanguage<T>,
    limits: &Limits,
) -> Result<ComplexityVerdict<T>> {
    let max = first_violation(lang, Operation::MAX, limits)?;
    let Some(max) = max else {
        return Ok(closed_under(lang, Operation::MAX, VerdictClass::MaxClosed));
    };
    let Some(min) = first_violation(lang, Operation::MIN, limits)? else {
        return Ok(closed_under(lang, Operation::MIN, VerdictClass::MinClosed));
    };
    let mut v = ComplexityVerdict::new(VerdictClass::NpHard);
    v.notes.push("preserved by neither max nor min".into());
    v.certificate = vec![max, min];
    Ok(v)
}

fn positive_branch<T: Int>(
    lang: &ConstraintLanguage<T>,
    moduli: &[u32],
    limits: &Limits,
    notes: &mut Vec<String>,
) -> Result<ComplexityVerdict<T>> {
    notes.push(format!("candidate moduli {moduli:?}"));
    for &d in moduli {
        if first_violation(lang, Operation::mod_max(d), limits)?.is_none() {
            return Ok(closed_under(
                lang,
                Operation::mod_max(d),
                VerdictClass::ModMaxClosed(d),
            ));
        }
    }
    for &d in moduli {
        if first_violation(lang, Operation::mod_min(d), limits)?.is_none() {
            return Ok(closed_under(
                lang,
                Operation::mod_min(d),
                VerdictClass::ModMinClosed(d),
            ));
        }
    }
    let mut v = ComplexityVerdict::new(VerdictClass::NpHard);
    v.notes
        .push("positive but preserved by no candidate modular max or min".into());
    for op in [Operation::MAX, Operation::MIN] {
        if let Some(w) = first_violation(lang, op, limits)? {
            v.certificate.push(w);
        }
    }
    Ok(v)
}

/// `{1, ..., min(spread, 16)}` plus the divisors of each finite profile's gap gcd.
pub fn candidate_moduli<T: Int>(profiles: &[DifferenceProfile<T>]) -> Vec<u32> {
    let mut out = BTreeSet::from([1u32]);
    let mut spread = 0u32;
    for p in profiles.iter().filter(|p| p.tag == ProfileTag::Finite) {
        let s = p.spread().and_then(|s| s.to_u32()).unwrap_or(u32::MAX);
        spread = spread.max(s.min(MAX_SPREAD_MODULUS));
        let g = p
            .gaps()
            .filter_map(|g| g.to_u32())
            .fold(0u32, |a, b| a.gcd(&b));
        out.extend((1..=g).filter(|d| g % d == 0));
    }
    out.extend(1..=spread);
    out.into_iter().collect()
}

/// A pair of tuples showing that a reduced non-Horn clause cannot be dropped
/// or weakened, combined by `x + K(y - x)` into a tuple outside `r`.
///
/// `first` makes only the first positive literal of the clause true, `second`
/// only the second; `K` exceeds every difference in `first` by more than `q`,
/// so the image falsifies every literal of the clause.
fn non_horn_witness<T: Int>(
    r: &RelationDef<T>,
    clause: &[Literal<T>],
    limits: &Limits,
) -> Result<Witness<T>> {
    let mut positives = clause.iter().enumerate().filter(|(_, l)| l.cmp == Cmp::Eq);
    let (i1, _) = positives
        .next()
        .expect("non-Horn clause has two positive literals");
    let (i2, _) = positives
        .next()
        .expect("non-Horn clause has two positive literals");
    let k = r.arity();
    let top = (r.qe_degree() + T::one()) * T::from_usize(k) - T::one();
    let only = |keep: usize| -> Result<Vec<T>> {
        let found = for_each_point(k, T::zero(), top, limits.enumeration, |p| {
            let rest_false = clause
                .iter()
                .enumerate()
                .all(|(i, l)| i == keep || !l.holds(p));
            if rest_false && r.contains(p) {
                ControlFlow::Break(p.to_vec())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        found.ok_or_else(|| Error::Internal(format!("clause of {} is not reduced", r.name())))
    };
    let first = only(i1)?;
    let second = only(i2)?;
    let lo = *first.iter().min().unwrap();
    let hi = *first.iter().max().unwrap();
    let factor = r.qe_degree() + (hi - lo) + T::one();
    let image: Vec<T> = first
        .iter()
        .zip(&second)
        .map(|(&x, &y)| x + factor * (y - x))
        .collect();
    if r.contains(&image) {
        return Err(Error::Internal(format!(
            "non-Horn certificate for {} failed to leave the relation",
            r.name()
        )));
    }
    Ok(Witness {
        relation: r.name().to_string(),
        operation: format!("x + {factor}(y - x)"),
        first,
        second,
        image,
    })
}
