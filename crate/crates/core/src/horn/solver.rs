use std::collections::HashMap;
use std::fmt;

use super::{Assert, OffsetUnionFind};
use crate::classifier::reduced_cnf;
use crate::error::{Error, Limits, Result};
use crate::formula::Cmp;
use crate::instance::{Assignment, Instance};
use crate::language::{ConstraintLanguage, Dialect};
use crate::num::Int;
use crate::solution::{Solution, Stats};

/// The atom `value(x) = value(y) + p` over instance variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Atom<T> {
    pub x: usize,
    pub y: usize,
    pub p: T,
}

/// `¬n1 ∨ ... ∨ ¬nk ∨ positive`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornClause<T> {
    pub negatives: Vec<Atom<T>>,
    pub positive: Option<Atom<T>>,
}

impl<T: Int> HornClause<T> {
    pub fn unit(atom: Atom<T>) -> Self {
        HornClause {
            negatives: Vec::new(),
            positive: Some(atom),
        }
    }

    fn atoms(&self) -> impl Iterator<Item = &Atom<T>> {
        self.negatives.iter().chain(self.positive.iter())
    }
}

impl<T: Int> fmt::Display for Atom<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{} = v{} + {}", self.x, self.y, self.p)
    }
}

/// Instantiates the reduced Horn CNF of every applied relation.
///
/// Literals whose sides coincide become constants: a true one drops its
/// clause, a false one is removed from it.
pub fn compile_horn_instance<T: Int>(
    lang: &ConstraintLanguage<T>,
    inst: &Instance,
    limits: &Limits,
) -> Result<Vec<HornClause<T>>> {
    let resolved = inst.resolve(lang)?;
    let mut cnfs = HashMap::new();
    let mut out = Vec::new();
    for (r, args) in resolved {
        if !cnfs.contains_key(r.name()) {
            if r.dialect() != Dialect::SuccessorOnly {
                return Err(Error::NotHorn(r.name().to_string()));
            }
            let cnf = reduced_cnf(r, limits)?;
            if cnf
                .clauses
                .iter()
                .any(|c| c.iter().filter(|l| l.cmp == Cmp::Eq).count() > 1)
            {
                return Err(Error::NotHorn(r.name().to_string()));
            }
            cnfs.insert(r.name().to_string(), cnf);
        }
        'clause: for clause in &cnfs[r.name()].clauses {
            let mut hc = HornClause {
                negatives: Vec::new(),
                positive: None,
            };
            for l in clause {
                let (x, y) = (args[l.lhs], args[l.rhs]);
                if x == y {
                    if l.holds_at_difference(T::zero()) {
                        continue 'clause;
                    }
                    continue;
                }
                let atom = Atom { x, y, p: l.offset };
                match l.cmp {
                    Cmp::Eq => hc.positive = Some(atom),
                    Cmp::Ne => hc.negatives.push(atom),
                    Cmp::Le | Cmp::Lt => unreachable!("successor dialect"),
                }
            }
            out.push(hc);
        }
    }
    Ok(out)
}

/// Facts and residual clauses at the fixpoint of unit resolution.
#[derive(Debug, Clone)]
pub struct HornState<T> {
    pub facts: OffsetUnionFind<T>,
    pub residual: Vec<HornClause<T>>,
}

/// Positive unit resolution. `Ok` carries the satisfiable fixpoint; `Err`
/// describes the refutation.
pub fn solve_horn<T: Int>(
    clauses: &[HornClause<T>],
    nvars: usize,
) -> std::result::Result<HornState<T>, String> {
    let mut uf = OffsetUnionFind::new(nvars);
    let mut live: Vec<HornClause<T>> = clauses.to_vec();
    loop {
        let mut changed = false;
        let mut next = Vec::with_capacity(live.len());
        for mut c in live {
            let mut satisfied = false;
            c.negatives.retain(|a| match uf.implied_offset(a.x, a.y) {
                Some(o) if o == a.p => false,
                Some(_) => {
                    satisfied = true;
                    true
                }
                None => true,
            });
            if satisfied {
                changed = true;
                continue;
            }
            if !c.negatives.is_empty() {
                next.push(c);
                continue;
            }
            changed = true;
            let Some(a) = c.positive else {
                return Err("unit resolution derived the empty clause".into());
            };
            if let Assert::Conflict(k) = uf.assert_fact(a.x, a.y, a.p) {
                return Err(format!(
                    "v{} = v{} + {} contradicts the implied offset {}",
                    k.x, k.y, k.offset, k.implied
                ));
            }
        }
        live = next;
        if !changed {
            return Ok(HornState {
                facts: uf,
                residual: live,
            });
        }
    }
}

/// Places the union-find components `D = 2 q n + 1` apart, in order of
/// their first variable; values within a component are offsets from that
/// variable.
pub fn extract_assignment<T: Int>(uf: &mut OffsetUnionFind<T>, q_inst: T) -> Assignment<T> {
    let n = uf.len();
    let q = q_inst.max(T::one());
    let spacing = T::lit(2) * q * T::from_usize(n) + T::one();
    let mut base: HashMap<usize, (T, T)> = HashMap::new();
    let mut values = Vec::with_capacity(n);
    for v in 0..n {
        let (root, o) = uf.find(v);
        let k = base.len();
        let &mut (start, anchor) = base
            .entry(root)
            .or_insert_with(|| (T::from_usize(k) * spacing, o));
        values.push(start + o - anchor);
    }
    Assignment::new(values)
}

/// Compiles, solves and re-verifies a Horn instance.
pub fn solve_horn_instance<T: Int>(
    lang: &ConstraintLanguage<T>,
    inst: &Instance,
    limits: &Limits,
) -> Result<Solution<T>> {
    let clauses = compile_horn_instance(lang, inst, limits)?;
    let q_inst = clauses
        .iter()
        .flat_map(HornClause::atoms)
        .map(|a| a.p.abs())
        .fold(T::zero(), |a, b| a.max(b));
    match solve_horn(&clauses, inst.num_vars()) {
        Err(reason) => Ok(Solution::unsat(Stats::default(), reason)),
        Ok(mut state) => {
            let stats = Stats {
                facts_asserted: state.facts.facts_asserted(),
                ..Stats::default()
            };
            let a = extract_assignment(&mut state.facts, q_inst);
            if let Some(i) = inst.first_violation(lang, &a.values)? {
                return Err(Error::Internal(format!(
                    "Horn assignment violates constraint {i} ({})",
                    inst.constraints()[i].relation
                )));
            }
            Ok(Solution::sat(a, stats))
        }
    }
}
