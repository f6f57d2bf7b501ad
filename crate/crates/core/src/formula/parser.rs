//! Parser for the `.dtl` relation-definition format.
//!
//! ```text
//! # comment
//! rel F/4 := (x2 = x1 + 1 -> x4 = x3 + 1) & (x4 = x3 + 1 -> x2 = x1 + 1)
//! ```
//!
//! Precedence from loosest to tightest: `->` (right associative), `|`, `&`, `!`.

use super::{Cmp, Expr, Formula, Literal};
use crate::error::{Error, Result};
use crate::language::{ConstraintLanguage, RelationDef};
use crate::num::Int;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Comma,
    Ident(String),
    Int(String),
    Slash,
    Define,
    Or,
    And,
    Not,
    LParen,
    RParen,
    Arrow,
    Cmp(Cmp),
    Plus,
    Minus,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub(crate) tok: Tok,
    pub(crate) col: usize,
}

pub(crate) fn lex(line: &str, lineno: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let next = chars.get(i + 1).copied();
        let (tok, len) = match c {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let end = (i..chars.len())
                    .find(|&j| !(chars[j].is_ascii_alphanumeric() || chars[j] == '_'))
                    .unwrap_or(chars.len());
                (Tok::Ident(chars[i..end].iter().collect()), end - i)
            }
            c if c.is_ascii_digit() => {
                let end = (i..chars.len())
                    .find(|&j| !chars[j].is_ascii_digit())
                    .unwrap_or(chars.len());
                (Tok::Int(chars[i..end].iter().collect()), end - i)
            }
            '/' => (Tok::Slash, 1),
            ',' => (Tok::Comma, 1),
            ':' if next == Some('=') => (Tok::Define, 2),
            '|' => (Tok::Or, 1),
            '&' => (Tok::And, 1),
            '!' if next == Some('=') => (Tok::Cmp(Cmp::Ne), 2),
            '!' => (Tok::Not, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '-' if next == Some('>') => (Tok::Arrow, 2),
            '-' => (Tok::Minus, 1),
            '+' => (Tok::Plus, 1),
            '<' if next == Some('=') => (Tok::Cmp(Cmp::Le), 2),
            '<' => (Tok::Cmp(Cmp::Lt), 1),
            '=' => (Tok::Cmp(Cmp::Eq), 1),
            other => {
                return Err(Error::Syntax {
                    line: lineno,
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push(Token { tok, col });
        i += len;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_col: usize,
    /// Variables referenced, as 1-based surface indices with their column.
    vars: Vec<(usize, usize)>,
}

impl<'a> Parser<'a> {
    fn new(toks: &'a [Token], line: usize, end_col: usize) -> Self {
        Parser {
            toks,
            pos: 0,
            line,
            end_col,
            vars: Vec::new(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn error<R>(&self, message: impl Into<String>) -> Result<R> {
        Err(Error::Syntax {
            line: self.line,
            column: self.col(),
            message: message.into(),
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of line".into(),
            Some(t) => format!("{t:?}"),
        }
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<()> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}, found {}", self.describe()))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error(format!("expected {what}, found {}", self.describe())),
        }
    }

    fn uint(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Int(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error(format!("expected {what}, found {}", self.describe())),
        }
    }

    fn expr<T: Int>(&mut self) -> Result<Expr<T>> {
        let lhs = self.disj()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.expr()?;
            return Ok(Expr::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disj<T: Int>(&mut self) -> Result<Expr<T>> {
        let mut parts = vec![self.conj()?];
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            parts.push(self.conj()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Expr::Or(parts)
        })
    }

    fn conj<T: Int>(&mut self) -> Result<Expr<T>> {
        let mut parts = vec![self.unit()?];
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            parts.push(self.unit()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Expr::And(parts)
        })
    }

    fn unit<T: Int>(&mut self) -> Result<Expr<T>> {
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Expr::not(self.unit()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Ident(_)) => Ok(Expr::Lit(self.literal()?)),
            _ => self.error(format!(
                "expected `!`, `(` or a literal, found {}",
                self.describe()
            )),
        }
    }

    fn var(&mut self) -> Result<usize> {
        let col = self.col();
        let name = self.ident("a variable")?;
        let idx = name
            .strip_prefix('x')
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&k| k >= 1);
        match idx {
            Some(k) => {
                self.vars.push((k, col));
                Ok(k - 1)
            }
            None => Err(Error::Syntax {
                line: self.line,
                column: col,
                message: format!("`{name}` is not a variable (expected x1, x2, ...)"),
            }),
        }
    }

    fn literal<T: Int>(&mut self) -> Result<Literal<T>> {
        let lhs = self.var()?;
        let cmp = match self.peek() {
            Some(Tok::Cmp(c)) => *c,
            _ => return self.error(format!("expected a comparator, found {}", self.describe())),
        };
        self.pos += 1;
        let rhs = self.var()?;
        let sign = match self.peek() {
            Some(Tok::Plus) => Some(false),
            Some(Tok::Minus) => Some(true),
            _ => None,
        };
        let offset = match sign {
            None => T::zero(),
            Some(neg) => {
                self.pos += 1;
                let col = self.col();
                let digits = self.uint("an offset")?;
                let text = if neg { format!("-{digits}") } else { digits };
                text.parse::<T>().map_err(|_| Error::Syntax {
                    line: self.line,
                    column: col,
                    message: format!("offset `{text}` out of range"),
                })?
            }
        };
        Ok(Literal::new(lhs, cmp, rhs, offset))
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            self.error(format!("unexpected {}", self.describe()))
        } else {
            Ok(())
        }
    }
}

/// Parses a single formula over `x1, x2, ...`.
pub fn parse_formula<T: Int>(text: &str) -> Result<Formula<T>> {
    let toks = lex(text, 1)?;
    let mut p = Parser::new(&toks, 1, text.chars().count() + 1);
    let e = p.expr()?;
    p.finish()?;
    Ok(Formula::new(e))
}

/// Parses a `.dtl` document into a constraint language.
pub fn parse_language<T: Int>(text: &str) -> Result<ConstraintLanguage<T>> {
    let mut lang = ConstraintLanguage::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = lex(line, lineno)?;
        if toks.is_empty() {
            continue;
        }
        let mut p = Parser::new(&toks, lineno, line.chars().count() + 1);
        match p.peek() {
            Some(Tok::Ident(k)) if k == "rel" => p.pos += 1,
            _ => return p.error(format!("expected `rel`, found {}", p.describe())),
        }
        let name = p.ident("a relation name")?;
        p.expect(&Tok::Slash, "`/`")?;
        let arity_col = p.col();
        let arity: usize =
            p.uint("an arity")?
                .parse()
                .ok()
                .filter(|&a| a >= 1)
                .ok_or(Error::Syntax {
                    line: lineno,
                    column: arity_col,
                    message: "arity must be a positive integer".into(),
                })?;
        p.expect(&Tok::Define, "`:=`")?;
        let expr = p.expr()?;
        p.finish()?;
        if let Some(&(k, _)) = p.vars.iter().find(|(k, _)| *k > arity) {
            return Err(Error::Arity {
                relation: name,
                var: k,
                arity,
            });
        }
        lang.add(RelationDef::new(name, arity, Formula::new(expr))?)?;
    }
    Ok(lang)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_biconditional_relation() {
        let lang: ConstraintLanguage<i64> = parse_language(
            "# F\nrel F/4 := (x2 = x1 + 1 -> x4 = x3 + 1) & (x4 = x3 + 1 -> x2 = x1 + 1)\n",
        )
        .unwrap();
        assert_eq!(lang.relations().len(), 1);
        assert_eq!(lang.qe_degree(), 1);
        let f = lang.get("F").unwrap();
        assert_eq!(f.arity(), 4);
    }

    #[test]
    fn zero_offset_language() {
        let lang: ConstraintLanguage<i64> = parse_language("rel Leq/2 := x1 <= x2 + 0").unwrap();
        assert_eq!(lang.qe_degree(), 0);
    }

    #[test]
    fn out_of_range_variable() {
        let err = parse_language::<i64>("rel R/2 := x1 <= x3 + 1").unwrap_err();
        assert_eq!(
            err,
            Error::Arity {
                relation: "R".into(),
                var: 3,
                arity: 2
            }
        );
    }

    #[test]
    fn duplicate_names_rejected() {
        let err = parse_language::<i64>("rel A/1 := x1 <= x1\nrel A/1 := x1 <= x1").unwrap_err();
        assert_eq!(err, Error::DuplicateName("A".into()));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_language::<i64>("\nrel R/2 := x1 <= & x2").unwrap_err() {
            Error::Syntax { line, column, .. } => {
                assert_eq!(line, 2);
                assert_eq!(column, 18);
            }
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(
            parse_language::<i64>("rel R/2 := x1 ~ x2"),
            Err(Error::Syntax {
                line: 1,
                column: 15,
                ..
            })
        ));
        assert!(matches!(
            parse_language::<i64>("rel R/0 := x1 <= x1"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn implication_is_right_associative_and_loosest() {
        let f: Formula<i64> = parse_formula("x1 = x2 -> x2 = x3 -> x1 = x3 + 1").unwrap();
        // a -> (b -> c)
        assert!(f.evaluate(&[0, 0, 0]).map(|b| !b).unwrap());
        assert!(f.evaluate(&[0, 1, 0]).unwrap());
        let g: Formula<i64> = parse_formula("x1 = x2 | x1 = x3 -> x2 = x3").unwrap();
        // (a | b) -> c
        assert!(!g.evaluate(&[0, 1, 0]).unwrap());
    }

    #[test]
    fn display_round_trips() {
        let src = "!(x1 = x2 + 1 | x3 < x1 - 2) & (x2 != x3 | !!x1 <= x3 + 4)";
        let f: Formula<i64> = parse_formula(src).unwrap();
        let g: Formula<i64> = parse_formula(&f.to_string()).unwrap();
        assert_eq!(f, g);
    }
}
