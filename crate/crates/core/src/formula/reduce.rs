//! Window-based equivalence and greedy reduction of normal forms.
//!
//! Two formulas with qe-degree at most `q` over `n` variables agree on all of
//! `Z^n` iff they agree on `{0, ..., (q+1)n - 1}^n`: any point where they
//! differ can be gap-compressed (gaps above `q` shrunk to `q + 1`) without
//! changing a single literal, which lands it inside the window.

use std::ops::ControlFlow;

use super::{Formula, NormalForm};
use crate::error::{Limits, Result};
use crate::grid::{for_each_point, grid_size};
use crate::num::Int;

/// Upper end of the equivalence window for `nvars` variables at degree `q`.
pub(crate) fn window_top<T: Int>(q: T, nvars: usize) -> T {
    (q + T::one()) * T::from_usize(nvars.max(1)) - T::one()
}

/// First point of the window (lexicographically) where `f` and `g` disagree.
pub fn distinguishing_point<T: Int>(
    f: &Formula<T>,
    g: &Formula<T>,
    nvars: usize,
    limits: &Limits,
) -> Result<Option<Vec<T>>> {
    let nvars = nvars.max(f.min_vars()).max(g.min_vars());
    let q = f.qe_degree().max(g.qe_degree());
    for_each_point(
        nvars,
        T::zero(),
        window_top(q, nvars),
        limits.enumeration,
        |p| {
            if f.holds(p) != g.holds(p) {
                ControlFlow::Break(p.to_vec())
            } else {
                ControlFlow::Continue(())
            }
        },
    )
}

/// True iff `f` and `g` agree on every integer assignment of `nvars` variables.
pub fn equivalent<T: Int>(
    f: &Formula<T>,
    g: &Formula<T>,
    nvars: usize,
    limits: &Limits,
) -> Result<bool> {
    Ok(distinguishing_point(f, g, nvars, limits)?.is_none())
}

/// Truth table of the original form over the window, reused for every candidate.
struct Table<T> {
    nvars: usize,
    top: T,
    bits: Vec<bool>,
}

impl<T: Int> Table<T> {
    fn build(nf: &NormalForm<T>, nvars: usize, limits: &Limits) -> Result<Self> {
        let top = window_top(nf.qe_degree(), nvars);
        let mut bits = Vec::with_capacity(grid_size(T::zero(), top, nvars).min(1 << 24) as usize);
        for_each_point::<T, ()>(nvars, T::zero(), top, limits.enumeration, |p| {
            bits.push(nf.holds(p));
            ControlFlow::Continue(())
        })?;
        Ok(Table { nvars, top, bits })
    }

    /// Candidates only drop literals, so their degree never exceeds the original's.
    fn matches(&self, candidate: &NormalForm<T>) -> bool {
        let mut i = 0;
        let r = for_each_point(self.nvars, T::zero(), self.top, u128::MAX, |p| {
            let same = candidate.holds(p) == self.bits[i];
            i += 1;
            if same {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(())
            }
        });
        matches!(r, Ok(None))
    }
}

/// Greedy reduction: repeatedly delete the first clause, else the first
/// literal, whose removal keeps the form equivalent; rescan after each
/// deletion. The result admits no equivalence-preserving single deletion.
pub fn reduce<T: Int>(nf: &NormalForm<T>, nvars: usize, limits: &Limits) -> Result<NormalForm<T>> {
    let nvars = nvars.max(nf.literals().map(|l| l.max_var() + 1).max().unwrap_or(0));
    let table = Table::build(nf, nvars, limits)?;
    let mut cur = nf.clone();
    'scan: loop {
        for i in 0..cur.clauses.len() {
            let mut cand = cur.clone();
            cand.clauses.remove(i);
            if table.matches(&cand) {
                cur = cand;
                continue 'scan;
            }
        }
        for i in 0..cur.clauses.len() {
            for j in 0..cur.clauses[i].len() {
                let mut cand = cur.clone();
                cand.clauses[i].remove(j);
                if table.matches(&cand) {
                    cur = cand;
                    continue 'scan;
                }
            }
        }
        return Ok(cur);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::formula::{parse_formula, Literal, Shape};

    fn f(src: &str) -> Formula<i64> {
        parse_formula(src).unwrap()
    }

    const L: Limits = Limits {
        normal_form_literals: 1_000_000,
        enumeration: 100_000_000,
        residue_branches: 1_000_000,
    };

    #[test]
    fn equivalence_examples() {
        let a = f("x1 = x2 + 1");
        assert!(equivalent(&a, &a, 2, &L).unwrap());
        assert!(equivalent(&a, &f("x2 = x1 - 1"), 2, &L).unwrap());
        let dist1 = f("x1 = x2 + 1 | x2 = x1 + 1");
        assert!(!equivalent(&dist1, &a, 2, &L).unwrap());
        let p = distinguishing_point(&dist1, &a, 2, &L).unwrap().unwrap();
        assert_eq!(p, vec![0, 1]);
        assert_ne!(dist1.holds(&p), a.holds(&p));
    }

    #[test]
    fn equivalence_budget() {
        let a = f("x1 = x2 + 9 | x3 = x4 + 9");
        let tight = Limits {
            enumeration: 1000,
            ..L
        };
        assert!(matches!(
            equivalent(&a, &a, 4, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn absorbed_clause_is_removed() {
        let nf = NormalForm::new(
            Shape::Cnf,
            vec![
                vec![Literal::<i64>::eq(0, 1, 1)],
                vec![Literal::eq(0, 1, 1), Literal::eq(0, 1, 2)],
            ],
        );
        let r = reduce(&nf, 2, &L).unwrap();
        assert_eq!(r.clauses, vec![vec![Literal::eq(0, 1, 1)]]);
    }

    #[test]
    fn duplicate_disjunct_is_removed() {
        let nf = NormalForm::new(
            Shape::Dnf,
            vec![
                vec![Literal::<i64>::eq(0, 1, 1)],
                vec![Literal::eq(0, 1, 1)],
            ],
        );
        assert_eq!(reduce(&nf, 2, &L).unwrap().clauses.len(), 1);
    }

    #[test]
    fn biconditional_cnf_is_already_reduced() {
        let g = f("(x2 = x1 + 1 -> x4 = x3 + 1) & (x4 = x3 + 1 -> x2 = x1 + 1)");
        let cnf = g.cnf(&L).unwrap();
        assert_eq!(&reduce(cnf, 4, &L).unwrap(), cnf);
    }

    #[test]
    fn redundant_literal_is_removed() {
        // (x1 <= x2 | x1 < x2) is just x1 <= x2
        let nf = NormalForm::new(
            Shape::Cnf,
            vec![vec![Literal::<i64>::le(0, 1, 0), Literal::lt(0, 1, 0)]],
        );
        assert_eq!(
            reduce(&nf, 2, &L).unwrap().clauses,
            vec![vec![Literal::le(0, 1, 0)]]
        );
    }
}
