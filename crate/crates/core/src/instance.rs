//! CSP instances and the `.dti` instance format.
//!
//! ```text
//! var a b c
//! F(a, b, a, c)
//! b = a + 1        # sugar for an implicit relation x1 = x2 + 1 applied to (b, a)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::parser::{lex, Tok, Token};
use crate::formula::Literal;
use crate::language::{builtin_name, ConstraintLanguage, RelationDef};
use crate::num::Int;

/// One relation application `R(v1, ..., vk)` over instance variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Constraint {
    pub relation: String,
    pub args: Vec<usize>,
}

/// A primitive positive sentence: variables plus relation applications.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    variables: Vec<String>,
    constraints: Vec<Constraint>,
}

impl Instance {
    pub fn new(variables: Vec<String>, constraints: Vec<Constraint>) -> Result<Self> {
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        let n = variables.len();
        if let Some(c) = constraints.iter().find(|c| c.args.iter().any(|&a| a >= n)) {
            return Err(Error::UnknownVariable(format!(
                "index out of range in {}",
                c.relation
            )));
        }
        Ok(Instance {
            variables,
            constraints,
        })
    }

    /// Variables named `v0, v1, ...`.
    pub fn with_indexed_variables(n: usize, constraints: Vec<Constraint>) -> Result<Self> {
        Self::new((0..n).map(|i| format!("v{i}")).collect(), constraints)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// Checks that every constraint names a relation of `lang` with matching arity.
    pub fn validate<T: Int>(&self, lang: &ConstraintLanguage<T>) -> Result<()> {
        for c in &self.constraints {
            let r = lang
                .get(&c.relation)
                .ok_or_else(|| Error::UnknownRelation(c.relation.clone()))?;
            if r.arity() != c.args.len() {
                return Err(Error::ArityMismatch {
                    relation: c.relation.clone(),
                    expected: r.arity(),
                    found: c.args.len(),
                });
            }
        }
        Ok(())
    }

    /// Resolves each constraint to its relation, validating along the way.
    pub fn resolve<'l, T: Int>(
        &self,
        lang: &'l ConstraintLanguage<T>,
    ) -> Result<Vec<(&'l RelationDef<T>, &[usize])>> {
        self.validate(lang)?;
        Ok(self
            .constraints
            .iter()
            .map(|c| (lang.get(&c.relation).unwrap(), c.args.as_slice()))
            .collect())
    }

    /// Largest qe-degree among the relations actually applied.
    pub fn qe_degree<T: Int>(&self, lang: &ConstraintLanguage<T>) -> T {
        self.constraints
            .iter()
            .filter_map(|c| lang.get(&c.relation))
            .map(|r| r.qe_degree())
            .fold(T::zero(), |a, b| a.max(b))
    }

    /// Index of the first constraint that `values` violates.
    pub fn first_violation<T: Int>(
        &self,
        lang: &ConstraintLanguage<T>,
        values: &[T],
    ) -> Result<Option<usize>> {
        if values.len() < self.num_vars() {
            return Err(Error::MissingVariable(values.len()));
        }
        let resolved = self.resolve(lang)?;
        let mut tuple = Vec::new();
        for (i, (r, args)) in resolved.iter().enumerate() {
            tuple.clear();
            tuple.extend(args.iter().map(|&a| values[a]));
            if !r.contains(&tuple) {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn is_satisfied_by<T: Int>(
        &self,
        lang: &ConstraintLanguage<T>,
        values: &[T],
    ) -> Result<bool> {
        Ok(self.first_violation(lang, values)?.is_none())
    }

    /// The instance as a `.dti` document.
    pub fn to_dti(&self) -> String {
        let mut out = String::from("var");
        for v in &self.variables {
            out.push(' ');
            out.push_str(v);
        }
        out.push('\n');
        for c in &self.constraints {
            let args: Vec<&str> = c.args.iter().map(|&a| self.variables[a].as_str()).collect();
            out.push_str(&format!("{}({})\n", c.relation, args.join(", ")));
        }
        out
    }
}

/// Named view of a solution, in instance variable order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment<T> {
    pub values: Vec<T>,
}

impl<T: Int> Assignment<T> {
    pub fn new(values: Vec<T>) -> Self {
        Assignment { values }
    }

    pub fn named<'a>(&'a self, inst: &'a Instance) -> impl Iterator<Item = (&'a str, T)> + 'a {
        inst.variables()
            .iter()
            .map(String::as_str)
            .zip(self.values.iter().copied())
    }

    /// Shifts every value by `delta`; relations definable from differences are invariant.
    pub fn translated(&self, delta: T) -> Self {
        Assignment::new(self.values.iter().map(|&v| v + delta).collect())
    }
}

fn syntax<R>(line: usize, column: usize, message: impl Into<String>) -> Result<R> {
    Err(Error::Syntax {
        line,
        column,
        message: message.into(),
    })
}

/// Parses a `.dti` document against `lang`. Sugar lines such as `b = a + 2`
/// add their implicit relation to `lang` when it is not already present.
pub fn parse_instance<T: Int>(text: &str, lang: &mut ConstraintLanguage<T>) -> Result<Instance> {
    let mut variables: Option<Vec<String>> = None;
    let mut constraints = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = lex(line, lineno)?;
        if toks.is_empty() {
            continue;
        }
        let end = line.chars().count() + 1;
        let Some(vars) = variables.as_ref() else {
            match &toks[0].tok {
                Tok::Ident(k) if k == "var" => {}
                _ => return syntax(lineno, toks[0].col, "expected `var` declaration"),
            }
            let mut names = Vec::new();
            for t in &toks[1..] {
                match &t.tok {
                    Tok::Ident(n) if !names.contains(n) => names.push(n.clone()),
                    Tok::Ident(n) => return Err(Error::DuplicateName(n.clone())),
                    _ => return syntax(lineno, t.col, "expected a variable name"),
                }
            }
            variables = Some(names);
            continue;
        };
        let lookup = |t: &Token| -> Result<usize> {
            match &t.tok {
                Tok::Ident(n) => vars
                    .iter()
                    .position(|v| v == n)
                    .ok_or_else(|| Error::UnknownVariable(n.clone())),
                _ => syntax(lineno, t.col, "expected a variable name"),
            }
        };
        let at = |k: usize| toks.get(k).map(|t| &t.tok);
        let col = |k: usize| toks.get(k).map_or(end, |t| t.col);
        match (at(0), at(1)) {
            (Some(Tok::Ident(name)), Some(Tok::LParen)) => {
                let mut args = Vec::new();
                let mut k = 2;
                if at(k) != Some(&Tok::RParen) {
                    loop {
                        let Some(t) = toks.get(k) else {
                            return syntax(lineno, end, "unterminated argument list");
                        };
                        args.push(lookup(t)?);
                        k += 1;
                        match at(k) {
                            Some(Tok::Comma) => k += 1,
                            Some(Tok::RParen) => break,
                            _ => return syntax(lineno, col(k), "expected `,` or `)`"),
                        }
                    }
                }
                if k + 1 != toks.len() {
                    return syntax(lineno, col(k + 1), "trailing input after constraint");
                }
                constraints.push(Constraint {
                    relation: name.clone(),
                    args,
                });
            }
            (Some(Tok::Ident(_)), Some(Tok::Cmp(cmp))) => {
                let cmp = *cmp;
                let lhs = lookup(&toks[0])?;
                let rhs = match toks.get(2) {
                    Some(t) => lookup(t)?,
                    None => return syntax(lineno, end, "expected a variable name"),
                };
                let mut offset = T::zero();
                let mut k = 3;
                if let Some(sign @ (Tok::Plus | Tok::Minus)) = at(k) {
                    let neg = *sign == Tok::Minus;
                    let Some(Tok::Int(d)) = at(k + 1) else {
                        return syntax(lineno, col(k + 1), "expected an offset");
                    };
                    let text = if neg { format!("-{d}") } else { d.clone() };
                    offset = text
                        .parse()
                        .or_else(|_| syntax(lineno, col(k + 1), "offset out of range"))?;
                    k += 2;
                }
                if k != toks.len() {
                    return syntax(lineno, col(k), "trailing input after constraint");
                }
                let name = builtin_name(cmp, offset);
                if lang.get(&name).is_none() {
                    lang.add(RelationDef::new(
                        name.clone(),
                        2,
                        Literal::new(0, cmp, 1, offset).into(),
                    )?)?;
                }
                constraints.push(Constraint {
                    relation: name,
                    args: vec![lhs, rhs],
                });
            }
            _ => return syntax(lineno, toks[0].col, "expected `R(args)` or `a CMP b + c`"),
        }
    }
    let inst = Instance::new(variables.unwrap_or_default(), constraints)?;
    inst.validate(lang)?;
    Ok(inst)
}
