use proptest::prelude::*;

use dtcsp::classifier::{default_halfwidth, is_horn, is_positive, preserved_by, Preservation};
use dtcsp::finite::{arc_consistency, backtracking_solve};
use dtcsp::horn::{Assert, OffsetUnionFind};
use dtcsp::oracle::{
    brute_solve, materialize, random_instance, random_language, random_relation_in,
};
use dtcsp::{Dialect, DomainStore, Formula, Limits, Operation, RelationDef};

fn limits() -> Limits {
    Limits::default()
}

fn dialect(successor: bool) -> Dialect {
    if successor {
        Dialect::SuccessorOnly
    } else {
        Dialect::Order
    }
}

/// Naive closure over facts `x - y = c`; `None` on a contradiction.
fn naive_offsets(n: usize, facts: &[(usize, usize, i64)]) -> Option<Vec<Vec<Option<i64>>>> {
    let mut d = vec![vec![None; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Some(0);
    }
    for &(x, y, c) in facts {
        let mut changed = true;
        let mut pending = vec![(x, y, c)];
        while changed {
            changed = false;
            for (a, b, k) in pending.drain(..).collect::<Vec<_>>() {
                match d[a][b] {
                    Some(old) if old != k => return None,
                    Some(_) => {}
                    None => {
                        d[a][b] = Some(k);
                        d[b][a] = Some(-k);
                        changed = true;
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    for m in 0..n {
                        if let (Some(p), Some(q)) = (d[i][j], d[j][m]) {
                            match d[i][m] {
                                Some(old) if old != p + q => return None,
                                Some(_) => {}
                                None => pending.push((i, m, p + q)),
                            }
                        }
                    }
                }
            }
            changed |= !pending.is_empty();
        }
    }
    Some(d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn union_find_matches_naive_closure(
        n in 1usize..7,
        raw in prop::collection::vec((0usize..7, 0usize..7, -3i64..=3), 0..10),
    ) {
        let facts: Vec<_> = raw.into_iter().map(|(x, y, c)| (x % n, y % n, c)).collect();
        let mut uf = OffsetUnionFind::<i64>::new(n);
        let mut ok = true;
        for &(x, y, c) in &facts {
            if let Assert::Conflict(_) = uf.assert_fact(x, y, c) {
                ok = false;
                break;
            }
        }
        let naive = naive_offsets(n, &facts);
        prop_assert_eq!(ok, naive.is_some());
        if let Some(d) = naive {
            for x in 0..n {
                for y in 0..n {
                    prop_assert_eq!(uf.implied_offset(x, y), d[x][y]);
                }
            }
        }
    }

    #[test]
    fn union_find_offsets_are_antisymmetric(
        facts in prop::collection::vec((0usize..6, 0usize..6, -4i64..=4), 0..8),
    ) {
        let mut uf = OffsetUnionFind::<i64>::new(6);
        for (x, y, c) in facts {
            if x != y {
                uf.assert_fact(x, y, c);
            }
        }
        for x in 0..6 {
            for y in 0..6 {
                let a = uf.implied_offset(x, y);
                let b = uf.implied_offset(y, x);
                prop_assert_eq!(a.map(|v| -v), b);
            }
        }
    }

    #[test]
    fn more_facts_never_lose_implications(
        facts in prop::collection::vec((0usize..5, 0usize..5, -2i64..=2), 1..8),
    ) {
        let mut small = OffsetUnionFind::<i64>::new(5);
        let mut large = OffsetUnionFind::<i64>::new(5);
        let (head, tail) = facts.split_at(facts.len() / 2);
        let mut conflict = false;
        for &(x, y, c) in head {
            conflict |= matches!(small.assert_fact(x, y, c), Assert::Conflict(_));
        }
        for &(x, y, c) in head.iter().chain(tail) {
            if let Assert::Conflict(_) = large.assert_fact(x, y, c) {
                conflict = true;
                break;
            }
        }
        prop_assume!(!conflict);
        for x in 0..5 {
            for y in 0..5 {
                if let Some(v) = small.implied_offset(x, y) {
                    prop_assert_eq!(large.implied_offset(x, y), Some(v));
                }
            }
        }
    }

    #[test]
    fn arc_consistency_keeps_every_solution(seed in any::<u64>(), successor in any::<bool>()) {
        let lang = random_language::<i64>(dialect(successor), 2, 3, 2, seed);
        let inst = random_instance(&lang, 3, 3, seed ^ 1);
        let store = DomainStore::window(3, 0, 8);
        let pruned = arc_consistency(&lang, &inst, &store).unwrap();
        for a in 0..=8i64 {
            for b in 0..=8 {
                for c in 0..=8 {
                    let v = [a, b, c];
                    if inst.is_satisfied_by(&lang, &v).unwrap() {
                        let d = pruned.as_ref().expect("a solution survives propagation");
                        prop_assert!((0..3).all(|i| d.contains(i, v[i])));
                    }
                }
            }
        }
    }

    #[test]
    fn solvers_are_deterministic(seed in any::<u64>()) {
        let lang = random_language::<i64>(Dialect::Order, 3, 3, 2, seed);
        let inst = random_instance(&lang, 4, 4, seed);
        let store = DomainStore::window(4, 0, 11);
        let a = backtracking_solve(&lang, &inst, &store, &limits()).unwrap();
        let b = backtracking_solve(&lang, &inst, &store, &limits()).unwrap();
        prop_assert_eq!(a, b);
        let c = brute_solve(&lang, &inst, 0, 11, &limits()).unwrap();
        let d = brute_solve(&lang, &inst, 0, 11, &limits()).unwrap();
        prop_assert_eq!(c, d);
    }

    #[test]
    fn wider_brute_window_never_loses_solutions(seed in any::<u64>(), w in 1i64..6) {
        let lang = random_language::<i64>(Dialect::Order, 2, 2, 2, seed);
        let inst = random_instance(&lang, 3, 3, seed);
        let narrow = brute_solve(&lang, &inst, 0, w, &limits()).unwrap();
        let wide = brute_solve(&lang, &inst, -2, w + 2, &limits()).unwrap();
        prop_assert!(!narrow.is_sat() || wide.is_sat());
    }

    #[test]
    fn restricting_a_materialization_matches_rematerializing(
        seed in any::<u64>(), arity in 1usize..4, lo in -3i64..0, hi in 0i64..3,
    ) {
        let r = random_relation_in::<i64>(Dialect::Order, arity, 2, seed);
        let wide = materialize(&r, -4, 4, &limits()).unwrap();
        let direct = materialize(&r, lo, hi, &limits()).unwrap();
        prop_assert_eq!(wide.restrict(lo, hi), direct);
    }

    #[test]
    fn generators_respect_their_bounds(
        seed in any::<u64>(), count in 1usize..5, arity in 1usize..5, q in 0u32..4, successor in any::<bool>(),
    ) {
        let lang = random_language::<i64>(dialect(successor), count, arity, q, seed);
        prop_assert_eq!(lang.relations().len(), count);
        prop_assert!(lang.max_arity() <= arity);
        prop_assert!(lang.qe_degree() <= q as i64);
        if successor {
            prop_assert!(lang.relations().iter().all(|r| r.formula().is_successor_only()));
        }
        let inst = random_instance(&lang, 4, 6, seed);
        prop_assert_eq!(inst.num_vars(), 4);
        prop_assert_eq!(inst.constraints().len(), 6);
        prop_assert!(inst.validate(&lang).is_ok());
    }

    #[test]
    fn modmax_one_is_max(seed in any::<u64>(), arity in 1usize..4, q in 0u32..3) {
        let r = random_relation_in::<i64>(Dialect::Order, arity, q, seed);
        let a = preserved_by(&r, &Operation::MAX, default_halfwidth(&r, &Operation::MAX), &limits()).unwrap();
        let one = Operation::mod_max(1);
        let b = preserved_by(&r, &one, default_halfwidth(&r, &one), &limits()).unwrap();
        prop_assert_eq!(a.is_preserved(), b.is_preserved());
        for x in -3i64..3 {
            for y in -3i64..3 {
                prop_assert_eq!(one.apply(x, y), x.max(y));
            }
        }
    }

    #[test]
    fn violation_witnesses_revalidate_and_shift(seed in any::<u64>(), arity in 1usize..4, d in 1u32..4) {
        let r = random_relation_in::<i64>(Dialect::Order, arity, 2, seed);
        for op in [Operation::MAX, Operation::MIN, Operation::mod_max(d), Operation::mod_min(d)] {
            if let Preservation::Violated { first, second } =
                preserved_by(&r, &op, default_halfwidth(&r, &op), &limits()).unwrap()
            {
                prop_assert!(r.contains(&first) && r.contains(&second));
                prop_assert!(!r.contains(&op.apply_tuple(&first, &second)));
                prop_assert_eq!(first.iter().chain(&second).min().copied(), Some(0));
                // a common shift by the modulus keeps residues and differences
                let m = op.effective_modulus() as i64;
                let up = |t: &[i64]| t.iter().map(|v| v + m).collect::<Vec<_>>();
                let (f2, s2) = (up(&first), up(&second));
                prop_assert!(r.contains(&f2) && r.contains(&s2));
                prop_assert!(!r.contains(&op.apply_tuple(&f2, &s2)));
            }
        }
    }

    #[test]
    fn normal_forms_agree_with_the_formula(seed in any::<u64>(), arity in 1usize..4, successor in any::<bool>()) {
        let r = random_relation_in::<i64>(dialect(successor), arity, 2, seed);
        let f = r.formula();
        let cnf = f.to_cnf(&limits()).unwrap();
        let dnf = f.to_dnf(&limits()).unwrap();
        let mut t = vec![-3i64; arity];
        loop {
            let v = f.holds(&t);
            prop_assert_eq!(cnf.holds(&t), v);
            prop_assert_eq!(dnf.holds(&t), v);
            let mut i = 0;
            while i < arity && t[i] == 3 {
                t[i] = -3;
                i += 1;
            }
            if i == arity {
                break;
            }
            t[i] += 1;
        }
    }

    #[test]
    fn syntactic_tests_ignore_double_negation(seed in any::<u64>(), arity in 2usize..4) {
        let r = random_relation_in::<i64>(Dialect::SuccessorOnly, arity, 2, seed);
        let e = r.formula().expr().clone();
        let twice = dtcsp::Expr::not(dtcsp::Expr::not(e));
        let alt: RelationDef = r.with_formula(Formula::new(twice)).unwrap();
        prop_assert_eq!(is_horn(&r, &limits()).unwrap(), is_horn(&alt, &limits()).unwrap());
        prop_assert_eq!(is_positive(&r, &limits()).unwrap(), is_positive(&alt, &limits()).unwrap());
    }
}
