use super::{bounded_window, Direction, DomainStore, Propagator};
use crate::error::{Error, Limits, Result};
use crate::instance::{Assignment, Instance};
use crate::language::ConstraintLanguage;
use crate::num::Int;
use crate::solution::{Solution, Stats};

/// Complete search maintaining arc consistency, branching on the first
/// unfixed variable in declaration order with values ascending. The
/// enumeration budget bounds the number of branches.
pub fn backtracking_solve<T: Int>(
    lang: &ConstraintLanguage<T>,
    inst: &Instance,
    domains: &DomainStore<T>,
    limits: &Limits,
) -> Result<Solution<T>> {
    let mut p = Propagator::new(lang, inst)?;
    let mut d = domains.clone();
    let mut branches = 0u64;
    let found = if p.propagate(&mut d) {
        mac(&mut p, d, &mut branches, limits)?
    } else {
        None
    };
    let stats = Stats {
        branches,
        ..p.stats
    };
    match found {
        Some(values) => {
            if let Some(i) = inst.first_violation(lang, &values)? {
                return Err(Error::Internal(format!(
                    "search produced an assignment violating constraint {i}"
                )));
            }
            Ok(Solution::sat(Assignment::new(values), stats))
        }
        None => Ok(Solution::unsat(stats, "search space exhausted")),
    }
}

fn mac<T: Int>(
    p: &mut Propagator<'_, T>,
    d: DomainStore<T>,
    branches: &mut u64,
    limits: &Limits,
) -> Result<Option<Vec<T>>> {
    let Some(var) = (0..d.len()).find(|&v| d.get(v).len() > 1) else {
        return Ok(d.extremes(false));
    };
    for &value in d.get(var) {
        *branches += 1;
        if u128::from(*branches) > limits.enumeration {
            return Err(Error::BudgetExceeded {
                required: u128::from(*branches),
                budget: limits.enumeration,
            });
        }
        let mut child = d.clone();
        child.assign(var, value);
        let dirty = p.watchers(var).to_vec();
        if p.propagate_from(&mut child, &dirty) {
            if let Some(found) = mac(p, child, branches, limits)? {
                return Ok(Some(found));
            }
        }
    }
    Ok(None)
}

/// Arc consistency on the bounded window, then the domain maxima (or minima).
///
/// For languages closed under max (min) arc consistency decides the instance
/// and the extremes form a solution. If they do not, the result comes from
/// [`backtracking_solve`] and `stats.fallbacks` is set.
pub fn decide_semilattice<T: Int>(
    lang: &ConstraintLanguage<T>,
    inst: &Instance,
    direction: Direction,
    limits: &Limits,
) -> Result<Solution<T>> {
    let (lo, hi) = bounded_window(lang, inst);
    decide_semilattice_in(lang, inst, direction, lo, hi, limits)
}

/// [`decide_semilattice`] over an explicit window `[lo, hi]`.
pub fn decide_semilattice_in<T: Int>(
    lang: &ConstraintLanguage<T>,
    inst: &Instance,
    direction: Direction,
    lo: T,
    hi: T,
    limits: &Limits,
) -> Result<Solution<T>> {
    let mut d = DomainStore::window(inst.num_vars(), lo, hi);
    let mut p = Propagator::new(lang, inst)?;
    if !p.propagate(&mut d) {
        return Ok(Solution::unsat(p.stats, "arc consistency emptied a domain"));
    }
    let values = d
        .extremes(direction == Direction::Max)
        .expect("no empty domain after propagation");
    if inst.is_satisfied_by(lang, &values)? {
        return Ok(Solution::sat(Assignment::new(values), p.stats));
    }
    let mut s = backtracking_solve(lang, inst, &d, limits)?;
    s.stats.absorb(&p.stats);
    s.stats.fallbacks += 1;
    Ok(s)
}

pub fn decide_max_closed<T: Int>(
    lang: &ConstraintLanguage<T>,
    inst: &Instance,
    limits: &Limits,
) -> Result<Solution<T>> {
    decide_semilattice(lang, inst, Direction::Max, limits)
}

pub fn decide_min_closed<T: Int>(
    lang: &ConstraintLanguage<T>,
    inst: &Instance,
    limits: &Limits,
) -> Result<Solution<T>> {
    decide_semilattice(lang, inst, Direction::Min, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_language;
    use crate::instance::parse_instance;

    fn setup(dtl: &str, dti: &str) -> (ConstraintLanguage<i64>, Instance) {
        let mut lang = parse_language(dtl).unwrap();
        let inst = parse_instance(dti, &mut lang).unwrap();
        (lang, inst)
    }

    const DIST1: &str = "rel D1/2 := x1 = x2 + 1 | x2 = x1 + 1";

    fn bt(l: &ConstraintLanguage<i64>, i: &Instance) -> Solution<i64> {
        let (lo, hi) = bounded_window(l, i);
        backtracking_solve(
            l,
            i,
            &DomainStore::window(i.num_vars(), lo, hi),
            &Limits::default(),
        )
        .unwrap()
    }

    #[test]
    fn odd_triangle() {
        let (l, i) = setup(DIST1, "var a b c\nD1(a, b)\nD1(b, c)\nD1(a, c)");
        assert!(!bt(&l, &i).is_sat());
    }

    #[test]
    fn single_edge() {
        let (l, i) = setup(DIST1, "var a b\nD1(a, b)");
        assert_eq!(bt(&l, &i).assignment().unwrap().values, vec![0, 1]);
    }

    #[test]
    fn unconstrained() {
        let (l, i) = setup(DIST1, "var a b");
        assert_eq!(bt(&l, &i).assignment().unwrap().values, vec![0, 0]);
    }

    #[test]
    fn max_closed_equal_pair() {
        let (l, i) = setup("", "var a b\na <= b\nb <= a");
        let s = decide_max_closed(&l, &i, &Limits::default()).unwrap();
        assert_eq!(s.assignment().unwrap().values, vec![1, 1]);
        assert_eq!(s.stats.fallbacks, 0);
        let s = decide_min_closed(&l, &i, &Limits::default()).unwrap();
        assert_eq!(s.assignment().unwrap().values, vec![0, 0]);
    }

    #[test]
    fn max_closed_unsat() {
        let (l, i) = setup("", "var a b\na <= b\nb = a + 1\nb <= a");
        assert!(!decide_max_closed(&l, &i, &Limits::default())
            .unwrap()
            .is_sat());
    }

    #[test]
    fn empty_instance() {
        let (l, i) = setup("", "var");
        assert!(decide_max_closed(&l, &i, &Limits::default())
            .unwrap()
            .is_sat());
    }

    #[test]
    fn solutions_translate() {
        let (l, i) = setup(DIST1, "var a b c\nD1(a, b)\nD1(b, c)");
        let a = bt(&l, &i).assignment().unwrap().clone();
        assert!(i.is_satisfied_by(&l, &a.translated(1).values).unwrap());
    }
}
