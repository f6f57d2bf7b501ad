use std::collections::{HashMap, VecDeque};

use super::DomainStore;
use crate::error::Result;
use crate::instance::Instance;
use crate::language::{ConstraintLanguage, RelationDef};
use crate::num::Int;
use crate::solution::Stats;

struct Scoped<'a, T> {
    relation: &'a RelationDef<T>,
    /// Distinct variables, ascending.
    vars: Vec<usize>,
    /// Argument position to index in `vars`.
    slots: Vec<usize>,
}

/// Generalized arc consistency with residual supports.
///
/// Constraints are revised in queue order (constraint index first, then the
/// constraint's variables in ascending order). A constraint is re-queued
/// whenever the domain of one of its variables shrinks.
pub struct Propagator<'a, T> {
    constraints: Vec<Scoped<'a, T>>,
    watchers: Vec<Vec<usize>>,
    residues: HashMap<(usize, usize, T), Vec<T>>,
    pub stats: Stats,
}

impl<'a, T: Int> Propagator<'a, T> {
    pub fn new(lang: &'a ConstraintLanguage<T>, inst: &'a Instance) -> Result<Self> {
        let resolved = inst.resolve(lang)?;
        let mut watchers = vec![Vec::new(); inst.num_vars()];
        let mut constraints = Vec::with_capacity(resolved.len());
        for (ci, (relation, args)) in resolved.into_iter().enumerate() {
            let mut vars = args.to_vec();
            vars.sort_unstable();
            vars.dedup();
            let slots = args
                .iter()
                .map(|a| vars.binary_search(a).unwrap())
                .collect();
            for &v in &vars {
                watchers[v].push(ci);
            }
            constraints.push(Scoped {
                relation,
                vars,
                slots,
            });
        }
        Ok(Propagator {
            constraints,
            watchers,
            residues: HashMap::new(),
            stats: Stats::default(),
        })
    }

    /// Runs to the fixpoint. Returns `false` if a domain became empty.
    pub fn propagate(&mut self, domains: &mut DomainStore<T>) -> bool {
        let all: Vec<usize> = (0..self.constraints.len()).collect();
        self.propagate_from(domains, &all)
    }

    /// Propagation seeded with the constraints in `dirty`.
    pub fn propagate_from(&mut self, domains: &mut DomainStore<T>, dirty: &[usize]) -> bool {
        if domains.wiped_out() {
            return false;
        }
        let mut queued = vec![false; self.constraints.len()];
        let mut queue = VecDeque::new();
        for &c in dirty {
            if !queued[c] {
                queued[c] = true;
                queue.push_back(c);
            }
        }
        while let Some(c) = queue.pop_front() {
            queued[c] = false;
            for vi in 0..self.constraints[c].vars.len() {
                let u = self.constraints[c].vars[vi];
                if !self.revise(c, vi, domains) {
                    continue;
                }
                if domains.get(u).is_empty() {
                    return false;
                }
                for &w in &self.watchers[u] {
                    if w != c && !queued[w] {
                        queued[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        true
    }

    /// Constraints watching variable `v`.
    pub fn watchers(&self, v: usize) -> &[usize] {
        &self.watchers[v]
    }

    fn revise(&mut self, c: usize, vi: usize, domains: &mut DomainStore<T>) -> bool {
        self.stats.ac_revisions += 1;
        let u = self.constraints[c].vars[vi];
        let before = domains.get(u).len();
        let kept: Vec<T> = domains
            .get(u)
            .to_vec()
            .into_iter()
            .filter(|&v| self.supported(c, vi, v, domains))
            .collect();
        let changed = kept.len() != before;
        if changed {
            domains.replace(u, kept);
        }
        changed
    }

    fn supported(&mut self, c: usize, vi: usize, value: T, domains: &DomainStore<T>) -> bool {
        if let Some(res) = self.residues.get(&(c, vi, value)) {
            let con = &self.constraints[c];
            if con
                .vars
                .iter()
                .zip(res)
                .all(|(&v, &x)| domains.contains(v, x))
            {
                return true;
            }
        }
        let con = &self.constraints[c];
        let m = con.vars.len();
        let doms: Vec<&[T]> = con
            .vars
            .iter()
            .enumerate()
            .map(|(i, &v)| if i == vi { &[][..] } else { domains.get(v) })
            .collect();
        if (0..m).any(|i| i != vi && doms[i].is_empty()) {
            return false;
        }
        let mut idx = vec![0usize; m];
        let mut point = vec![value; m];
        let mut tuple = vec![value; con.slots.len()];
        loop {
            for i in 0..m {
                if i != vi {
                    point[i] = doms[i][idx[i]];
                }
            }
            for (t, &s) in tuple.iter_mut().zip(&con.slots) {
                *t = point[s];
            }
            self.stats.nodes += 1;
            if con.relation.contains(&tuple) {
                self.residues.insert((c, vi, value), point);
                return true;
            }
            // odometer over the other variables, last one fastest
            let mut i = m;
            loop {
                if i == 0 {
                    return false;
                }
                i -= 1;
                if i == vi {
                    continue;
                }
                idx[i] += 1;
                if idx[i] < doms[i].len() {
                    break;
                }
                idx[i] = 0;
            }
        }
    }
}

/// Arc consistency from `domains`; `None` when a domain is wiped out.
pub fn arc_consistency<T: Int>(
    lang: &ConstraintLanguage<T>,
    inst: &Instance,
    domains: &DomainStore<T>,
) -> Result<Option<DomainStore<T>>> {
    let mut p = Propagator::new(lang, inst)?;
    let mut d = domains.clone();
    Ok(p.propagate(&mut d).then_some(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::bounded_window;
    use crate::formula::parse_language;
    use crate::instance::parse_instance;

    fn setup(dtl: &str, dti: &str) -> (ConstraintLanguage<i64>, Instance) {
        let mut lang = parse_language(dtl).unwrap();
        let inst = parse_instance(dti, &mut lang).unwrap();
        (lang, inst)
    }

    #[test]
    fn contradictory_order_wipes_out() {
        let (l, i) = setup("", "var a b\na <= b\nb <= a\nb = a + 1");
        let (lo, hi) = bounded_window(&l, &i);
        let d = DomainStore::window(2, lo, hi);
        assert!(arc_consistency(&l, &i, &d).unwrap().is_none());
    }

    #[test]
    fn successor_trims_ends() {
        let (l, i) = setup("", "var a b\nb = a + 1");
        let (lo, hi) = bounded_window(&l, &i);
        assert_eq!((lo, hi), (0, 3));
        let d = arc_consistency(&l, &i, &DomainStore::window(2, lo, hi))
            .unwrap()
            .unwrap();
        assert_eq!(d.get(0), &[0, 1, 2]);
        assert_eq!(d.get(1), &[1, 2, 3]);
    }

    #[test]
    fn no_constraints_is_a_fixpoint() {
        let (l, i) = setup("", "var a b");
        let d = DomainStore::window(2, 0, 4);
        assert_eq!(arc_consistency(&l, &i, &d).unwrap().unwrap(), d);
    }

    #[test]
    fn repeated_variable_scope() {
        let (l, i) = setup("rel D1/2 := x1 = x2 + 1 | x2 = x1 + 1", "var a\nD1(a, a)");
        assert!(arc_consistency(&l, &i, &DomainStore::window(1, 0, 3))
            .unwrap()
            .is_none());
    }
}
