use crate::classifier::{Operation, Preservation};
use crate::error::{Error, Limits, Result};
use crate::instance::{Assignment, Instance};
use crate::language::{ConstraintLanguage, RelationDef};
use crate::num::Int;
use crate::solution::{Solution, Stats};

/// Exhaustive search over `[lo, hi]^n` returning the lexicographically first
/// solution.
///
/// Variables are split into connected components (variables sharing a
/// constraint) and each component is enumerated in declaration order. A
/// constraint is evaluated as soon as its last variable is assigned. The
/// enumeration budget bounds the number of partial assignments visited.
pub fn brute_solve<T: Int>(
    lang: &ConstraintLanguage<T>,
    inst: &Instance,
    lo: T,
    hi: T,
    limits: &Limits,
) -> Result<Solution<T>> {
    let resolved = inst.resolve(lang)?;
    let n = inst.num_vars();
    let mut stats = Stats::default();
    if hi < lo && n > 0 {
        return Ok(Solution::unsat(stats, "empty window"));
    }
    let components = components(n, &resolved);
    let mut values = vec![lo; n];
    // every argument of a constraint lies in one component
    let mut owner = vec![0usize; n];
    let mut slot = vec![0usize; n];
    for (k, comp) in components.iter().enumerate() {
        for (p, &v) in comp.iter().enumerate() {
            owner[v] = k;
            slot[v] = p;
        }
    }
    for (k, comp) in components.iter().enumerate() {
        // constraints are checked once their last variable (in component order) is set
        let mut due: Vec<Vec<usize>> = vec![Vec::new(); comp.len()];
        for (ci, (_, args)) in resolved.iter().enumerate() {
            if args.first().is_some_and(|&a| owner[a] == k) {
                let last = args.iter().map(|&a| slot[a]).max().unwrap();
                due[last].push(ci);
            }
        }
        let mut search = Search {
            resolved: &resolved,
            comp,
            due: &due,
            values: &mut values,
            lo,
            hi,
            tuple: Vec::new(),
            nodes: 0,
            budget: limits.enumeration,
        };
        let found = search.run(0)?;
        stats.nodes += search.nodes as u64;
        if !found {
            return Ok(Solution::unsat(stats, "no assignment in the window"));
        }
    }
    Ok(Solution::sat(Assignment::new(values), stats))
}

fn components<T>(n: usize, resolved: &[(&RelationDef<T>, &[usize])]) -> Vec<Vec<usize>> {
    let mut label: Vec<usize> = (0..n).collect();
    fn root(label: &mut [usize], mut v: usize) -> usize {
        while label[v] != v {
            label[v] = label[label[v]];
            v = label[v];
        }
        v
    }
    for (_, args) in resolved {
        for w in args.windows(2) {
            let (a, b) = (root(&mut label, w[0]), root(&mut label, w[1]));
            if a != b {
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for v in 0..n {
        let r = root(&mut label, v);
        if index[r] == usize::MAX {
            index[r] = comps.len();
            comps.push(Vec::new());
        }
        comps[index[r]].push(v);
    }
    comps
}

struct Search<'a, T> {
    resolved: &'a [(&'a RelationDef<T>, &'a [usize])],
    comp: &'a [usize],
    due: &'a [Vec<usize>],
    values: &'a mut Vec<T>,
    lo: T,
    hi: T,
    tuple: Vec<T>,
    nodes: u128,
    budget: u128,
}

impl<T: Int> Search<'_, T> {
    fn run(&mut self, depth: usize) -> Result<bool> {
        if depth == self.comp.len() {
            return Ok(true);
        }
        let var = self.comp[depth];
        let mut v = self.lo;
        loop {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    required: self.nodes,
                    budget: self.budget,
                });
            }
            self.values[var] = v;
            if self.consistent(depth) && self.run(depth + 1)? {
                return Ok(true);
            }
            if v >= self.hi {
                return Ok(false);
            }
            v = v + T::one();
        }
    }

    fn consistent(&mut self, depth: usize) -> bool {
        for &ci in &self.due[depth] {
            let (r, args) = self.resolved[ci];
            self.tuple.clear();
            self.tuple.extend(args.iter().map(|&a| self.values[a]));
            if !r.contains(&self.tuple) {
                return false;
            }
        }
        true
    }
}

/// Preservation by checking every pair of tuples in `[-halfwidth, halfwidth]^k`.
pub fn brute_preserved_by<T: Int>(
    r: &RelationDef<T>,
    op: &Operation,
    halfwidth: T,
    limits: &Limits,
) -> Result<Preservation<T>> {
    let tuples = super::materialize(r, -halfwidth, halfwidth, limits)?;
    let pairs = (tuples.len() as u128).saturating_mul(tuples.len() as u128);
    crate::error::check_budget(pairs, limits.enumeration)?;
    for s in tuples.iter() {
        for t in tuples.iter() {
            if !r.contains(&op.apply_tuple(s, t)) {
                return Ok(Preservation::Violated {
                    first: s.to_vec(),
                    second: t.to_vec(),
                });
            }
        }
    }
    Ok(Preservation::Preserved)
}
