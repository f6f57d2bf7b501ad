//! The modular pipeline: enumerate residues mod `d`, then solve the quotient.
//!
//! Fixing residues `ρ` and substituting `x = d·x' + ρ(x)` turns each literal
//! into one over the quotient variables: `x <= y + c` becomes
//! `x' <= y' + floor((c + ρ(y) - ρ(x)) / d)`, `x < y + c` is handled as
//! `x <= y + c - 1`, and `=`/`!=` survive only when `d` divides the shifted
//! offset (otherwise they are constantly false/true).

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;

use super::{decide_semilattice, Direction};
use crate::error::{Error, Limits, Result};
use crate::formula::{Cmp, Expr, Formula, Literal};
use crate::grid::for_each_point;
use crate::instance::{Assignment, Constraint, Instance};
use crate::language::{ConstraintLanguage, RelationDef};
use crate::num::{span, Int};
use crate::solution::{Solution, Stats};

/// Residue tuples mod `d` realized by some tuple of `r`.
///
/// Gaps wider than `q` can be shrunk into `(q, q + d]` without changing any
/// literal or residue, so tuples with span at most `(k-1)(q+d)` and minimum
/// in `[0, d)` realize every residue pattern.
pub fn residue_projection<T: Int>(
    r: &RelationDef<T>,
    d: u32,
    limits: &Limits,
) -> Result<HashSet<Vec<T>>> {
    let dd = T::from_usize(d as usize);
    let k = r.arity();
    let top = dd - T::one() + T::from_usize(k.saturating_sub(1)) * (r.qe_degree() + dd);
    let mut out = HashSet::new();
    for_each_point::<T, ()>(k, T::zero(), top, limits.enumeration, |p| {
        if r.contains(p) {
            out.insert(p.iter().map(|&x| x.residue(dd)).collect());
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

fn quotient_literal<T: Int>(l: &Literal<T>, rho: &[T], args: &[usize], d: T) -> Expr<T> {
    let shift = rho[args[l.rhs]] - rho[args[l.lhs]];
    match l.cmp {
        Cmp::Le => Expr::Lit(Literal::le(l.lhs, l.rhs, (l.offset + shift).div_floor(&d))),
        Cmp::Lt => Expr::Lit(Literal::le(
            l.lhs,
            l.rhs,
            (l.offset - T::one() + shift).div_floor(&d),
        )),
        Cmp::Eq | Cmp::Ne => {
            let m = l.offset + shift;
            if m.residue(d).is_zero() {
                Expr::Lit(Literal::new(l.lhs, l.cmp, l.rhs, m / d))
            } else {
                Expr::Const(l.cmp == Cmp::Ne)
            }
        }
    }
}

/// The instance over `x'` for the residues `rho`, one relation per constraint.
fn quotient<T: Int>(
    resolved: &[(&RelationDef<T>, &[usize])],
    inst: &Instance,
    rho: &[T],
    d: T,
) -> Result<(ConstraintLanguage<T>, Instance)> {
    let mut lang = ConstraintLanguage::new();
    let mut constraints = Vec::with_capacity(resolved.len());
    for (i, (r, args)) in resolved.iter().enumerate() {
        let expr = r
            .formula()
            .expr()
            .map_literals(&mut |l| quotient_literal(l, rho, args, d));
        let name = format!("Q{i}");
        lang.add(RelationDef::new(
            name.clone(),
            r.arity(),
            Formula::new(expr),
        )?)?;
        constraints.push(Constraint {
            relation: name,
            args: args.to_vec(),
        });
    }
    Ok((lang, Instance::new(inst.variables().to_vec(), constraints)?))
}

/// Decides an instance over a language closed under modular max (or min)
/// with modulus `d`.
///
/// Residue assignments are enumerated by backtracking in declaration order
/// (the first variable is pinned to residue 0, which translation allows);
/// each complete one yields a quotient instance decided by
/// [`decide_semilattice`]. The first satisfiable branch wins.
pub fn solve_modular<T: Int>(
    lang: &ConstraintLanguage<T>,
    inst: &Instance,
    d: u32,
    direction: Direction,
    limits: &Limits,
) -> Result<Solution<T>> {
    assert!(d >= 1, "modulus must be positive");
    let resolved = inst.resolve(lang)?;
    let n = inst.num_vars();
    let mut projections: HashMap<&str, HashSet<Vec<T>>> = HashMap::new();
    for (r, _) in &resolved {
        if !projections.contains_key(r.name()) {
            projections.insert(r.name(), residue_projection(r, d, limits)?);
        }
    }
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ci, (_, args)) in resolved.iter().enumerate() {
        if let Some(&last) = args.iter().max() {
            due[last].push(ci);
        }
    }
    let mut run = Residues {
        resolved: &resolved,
        projections: &projections,
        due: &due,
        inst,
        d,
        direction,
        limits,
        rho: vec![T::zero(); n],
        stats: Stats::default(),
    };
    match run.search(0)? {
        Some(values) => {
            let stats = run.stats;
            if let Some(i) = inst.first_violation(lang, &values)? {
                return Err(Error::Internal(format!(
                    "modular reconstruction violates constraint {i}"
                )));
            }
            Ok(Solution::sat(Assignment::new(values), stats))
        }
        None => Ok(Solution::unsat(
            run.stats,
            "no residue class admits a solution",
        )),
    }
}

pub fn solve_mod_max<T: Int>(
    lang: &ConstraintLanguage<T>,
    inst: &Instance,
    d: u32,
    limits: &Limits,
) -> Result<Solution<T>> {
    solve_modular(lang, inst, d, Direction::Max, limits)
}

pub fn solve_mod_min<T: Int>(
    lang: &ConstraintLanguage<T>,
    inst: &Instance,
    d: u32,
    limits: &Limits,
) -> Result<Solution<T>> {
    solve_modular(lang, inst, d, Direction::Min, limits)
}

struct Residues<'a, T> {
    resolved: &'a [(&'a RelationDef<T>, &'a [usize])],
    projections: &'a HashMap<&'a str, HashSet<Vec<T>>>,
    due: &'a [Vec<usize>],
    inst: &'a Instance,
    d: u32,
    direction: Direction,
    limits: &'a Limits,
    rho: Vec<T>,
    stats: Stats,
}

impl<T: Int> Residues<'_, T> {
    fn search(&mut self, var: usize) -> Result<Option<Vec<T>>> {
        let dd = T::from_usize(self.d as usize);
        if var == self.rho.len() {
            let (ql, qi) = quotient(self.resolved, self.inst, &self.rho, dd)?;
            let s = decide_semilattice(&ql, &qi, self.direction, self.limits)?;
            self.stats.absorb(&s.stats);
            return Ok(s.assignment().map(|a| {
                a.values
                    .iter()
                    .zip(&self.rho)
                    .map(|(&x, &r)| dd * x + r)
                    .collect()
            }));
        }
        let top = if var == 0 { T::zero() } else { dd - T::one() };
        for r in span(T::zero(), top) {
            self.stats.branches += 1;
            if self.stats.branches > self.limits.residue_branches {
                return Err(Error::BudgetExceeded {
                    required: u128::from(self.stats.branches),
                    budget: u128::from(self.limits.residue_branches),
                });
            }
            self.rho[var] = r;
            if self.consistent(var) {
                if let Some(found) = self.search(var + 1)? {
                    return Ok(Some(found));
                }
            }
        }
        Ok(None)
    }

    fn consistent(&self, var: usize) -> bool {
        self.due[var].iter().all(|&ci| {
            let (r, args) = self.resolved[ci];
            let key: Vec<T> = args.iter().map(|&a| self.rho[a]).collect();
            self.projections[r.name()].contains(&key)
        })
    }
}
