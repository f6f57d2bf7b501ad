//! Named relations and constraint languages.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{Cmp, Formula, Literal};
use crate::num::Int;

/// Which comparators a definition uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dialect {
    /// Only `=` and `!=` literals.
    SuccessorOnly,
    /// Some `<=` or `<` literal is present.
    Order,
}

/// A relation symbol with its quantifier-free definition over `x1..x{arity}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationDef<T> {
    name: String,
    arity: usize,
    formula: Formula<T>,
    dialect: Dialect,
}

impl<T: Int> RelationDef<T> {
    pub fn new(name: impl Into<String>, arity: usize, formula: Formula<T>) -> Result<Self> {
        let name = name.into();
        if let Some(m) = formula.max_var() {
            if m >= arity {
                return Err(Error::Arity {
                    relation: name,
                    var: m + 1,
                    arity,
                });
            }
        }
        let dialect = if formula.is_successor_only() {
            Dialect::SuccessorOnly
        } else {
            Dialect::Order
        };
        Ok(RelationDef {
            name,
            arity,
            formula,
            dialect,
        })
    }

    /// The binary relation `x2 = x1 + p`.
    pub fn successor(name: impl Into<String>, p: T) -> Self {
        Self::new(name, 2, Literal::eq(1, 0, p).into()).expect("binary literal fits arity 2")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn formula(&self) -> &Formula<T> {
        &self.formula
    }

    pub fn dialect(&self) -> Dialect {
        self.dialect
    }

    pub fn qe_degree(&self) -> T {
        self.formula.qe_degree()
    }

    /// Membership test; `tuple.len()` must equal the arity.
    pub fn contains(&self, tuple: &[T]) -> bool {
        debug_assert_eq!(tuple.len(), self.arity);
        self.formula.holds(tuple)
    }

    /// The same relation under a different definition.
    pub fn with_formula(&self, formula: Formula<T>) -> Result<Self> {
        Self::new(self.name.clone(), self.arity, formula)
    }

    /// One `.dtl` line.
    pub fn to_dtl(&self) -> String {
        format!("rel {}/{} := {}", self.name, self.arity, self.formula)
    }
}

/// An ordered set of uniquely named relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintLanguage<T> {
    relations: Vec<RelationDef<T>>,
    qe_degree: T,
}

impl<T: Int> Default for ConstraintLanguage<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Int> ConstraintLanguage<T> {
    pub fn new() -> Self {
        ConstraintLanguage {
            relations: Vec::new(),
            qe_degree: T::zero(),
        }
    }

    pub fn from_relations(relations: impl IntoIterator<Item = RelationDef<T>>) -> Result<Self> {
        let mut lang = Self::new();
        for r in relations {
            lang.add(r)?;
        }
        Ok(lang)
    }

    pub fn add(&mut self, relation: RelationDef<T>) -> Result<()> {
        if self.get(relation.name()).is_some() {
            return Err(Error::DuplicateName(relation.name.clone()));
        }
        self.qe_degree = self.qe_degree.max(relation.qe_degree());
        self.relations.push(relation);
        Ok(())
    }

    pub fn relations(&self) -> &[RelationDef<T>] {
        &self.relations
    }

    pub fn get(&self, name: &str) -> Option<&RelationDef<T>> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|r| r.name == name)
    }

    /// Largest absolute offset over all literals of all definitions.
    pub fn qe_degree(&self) -> T {
        self.qe_degree
    }

    /// `SuccessorOnly` iff every relation is.
    pub fn dialect(&self) -> Dialect {
        if self
            .relations
            .iter()
            .all(|r| r.dialect == Dialect::SuccessorOnly)
        {
            Dialect::SuccessorOnly
        } else {
            Dialect::Order
        }
    }

    pub fn max_arity(&self) -> usize {
        self.relations.iter().map(|r| r.arity).max().unwrap_or(0)
    }

    /// The language as a `.dtl` document.
    pub fn to_dtl(&self) -> String {
        let mut out = String::new();
        for r in &self.relations {
            out.push_str(&r.to_dtl());
            out.push('\n');
        }
        out
    }
}

/// Name used for the implicit relation behind an `a CMP b + c` instance line.
pub fn builtin_name<T: Int>(cmp: Cmp, offset: T) -> String {
    let tag = match cmp {
        Cmp::Le => "le",
        Cmp::Lt => "lt",
        Cmp::Eq => "eq",
        Cmp::Ne => "ne",
    };
    let sign = if offset < T::zero() { "m" } else { "p" };
    format!("__{tag}_{sign}{}", offset.abs())
}
