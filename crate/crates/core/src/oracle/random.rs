//! Seeded generators. Each formula node is a literal with probability 0.4,
//! a binary `&` or `|` with 0.25 each and a negation with 0.1; depth is
//! capped at 4.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Cmp, Expr, Formula, Literal};
use crate::instance::{Constraint, Instance};
use crate::language::{ConstraintLanguage, Dialect, RelationDef};
use crate::num::Int;

const MAX_DEPTH: usize = 4;

/// Random relation using all four comparators.
pub fn random_relation<T: Int>(arity: usize, q: u32, seed: u64) -> RelationDef<T> {
    random_relation_in(Dialect::Order, arity, q, seed)
}

/// Random relation; `SuccessorOnly` restricts literals to `=` and `!=`.
pub fn random_relation_in<T: Int>(
    dialect: Dialect,
    arity: usize,
    q: u32,
    seed: u64,
) -> RelationDef<T> {
    assert!(arity >= 1, "arity must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let expr = node(&mut rng, dialect, arity, q, 0);
    RelationDef::new(format!("R{seed}"), arity, Formula::new(expr))
        .expect("generated literals stay within the arity")
}

fn node<T: Int>(
    rng: &mut ChaCha8Rng,
    dialect: Dialect,
    arity: usize,
    q: u32,
    depth: usize,
) -> Expr<T> {
    let roll: f64 = rng.gen();
    if depth >= MAX_DEPTH || roll < 0.40 {
        return Expr::Lit(literal(rng, dialect, arity, q));
    }
    let child = |rng: &mut ChaCha8Rng| node(rng, dialect, arity, q, depth + 1);
    if roll < 0.65 {
        Expr::And(vec![child(rng), child(rng)])
    } else if roll < 0.90 {
        Expr::Or(vec![child(rng), child(rng)])
    } else {
        Expr::not(child(rng))
    }
}

fn literal<T: Int>(rng: &mut ChaCha8Rng, dialect: Dialect, arity: usize, q: u32) -> Literal<T> {
    let lhs = rng.gen_range(0..arity);
    let rhs = if arity == 1 {
        0
    } else {
        (lhs + rng.gen_range(1..arity)) % arity
    };
    let cmp = match dialect {
        Dialect::SuccessorOnly => [Cmp::Eq, Cmp::Ne][rng.gen_range(0..2)],
        Dialect::Order => [Cmp::Le, Cmp::Lt, Cmp::Eq, Cmp::Ne][rng.gen_range(0..4)],
    };
    let q = q as i64;
    Literal::new(lhs, cmp, rhs, T::lit(rng.gen_range(-q..=q)))
}

/// `count` random relations named `R0, R1, ...` with arities in `1..=max_arity`.
pub fn random_language<T: Int>(
    dialect: Dialect,
    count: usize,
    max_arity: usize,
    q: u32,
    seed: u64,
) -> ConstraintLanguage<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lang = ConstraintLanguage::new();
    for i in 0..count {
        let arity = rng.gen_range(1..=max_arity.max(1));
        let r: RelationDef<T> = random_relation_in(dialect, arity, q, rng.gen());
        let r = RelationDef::new(format!("R{i}"), arity, r.formula().clone()).unwrap();
        lang.add(r).expect("names are distinct");
    }
    lang
}

/// Uniform relation applications over variables `v0..v{nvars-1}`.
pub fn random_instance<T: Int>(
    lang: &ConstraintLanguage<T>,
    nvars: usize,
    nconstraints: usize,
    seed: u64,
) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut constraints = Vec::with_capacity(nconstraints);
    if nvars > 0 && !lang.relations().is_empty() {
        for _ in 0..nconstraints {
            let r = &lang.relations()[rng.gen_range(0..lang.relations().len())];
            let args = (0..r.arity()).map(|_| rng.gen_range(0..nvars)).collect();
            constraints.push(Constraint {
                relation: r.name().to_string(),
                args,
            });
        }
    }
    Instance::with_indexed_variables(nvars, constraints).expect("indices are in range")
}
