//! Prefix s-expression syntax for formulas.
//!
//! ```text
//! f ::= true | false
//!     | (E x y) | (P name x) | (= x y)
//!     | (not f) | (and f ...) | (or f ...)
//!     | (exists x f) | (forall x f)
//! ```
//!
//! Names are runs of characters other than whitespace and parentheses.
//! `(and)` is true and `(or)` is false.

use std::fmt;

use super::Formula;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        let delimiter = c == '(' || c == ')' || c.is_whitespace();
        if delimiter {
            if let Some(s) = start.take() {
                out.push(Token::Atom(&text[s..i]));
            }
            match c {
                '(' => out.push(Token::Open),
                ')' => out.push(Token::Close),
                _ => {}
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token::Atom(&text[s..]));
    }
    out
}

struct Parser<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
}

fn syntax(msg: impl Into<String>) -> Error {
    Error::FormulaSyntax(msg.into())
}

impl<'a> Parser<'a> {
    fn next(&mut self) -> Option<&Token<'a>> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn name(&mut self, what: &str) -> Result<String> {
        match self.next() {
            Some(Token::Atom(a)) => Ok(a.to_string()),
            _ => Err(syntax(format!("expected {what}"))),
        }
    }

    fn close(&mut self) -> Result<()> {
        match self.next() {
            Some(Token::Close) => Ok(()),
            _ => Err(syntax("expected `)`")),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        match self.next() {
            Some(Token::Atom("true")) => Ok(Formula::True),
            Some(Token::Atom("false")) => Ok(Formula::False),
            Some(Token::Atom(a)) => Err(syntax(format!("unexpected atom `{a}`"))),
            Some(Token::Close) => Err(syntax("unexpected `)`")),
            None => Err(syntax("unexpected end of input")),
            Some(Token::Open) => {
                let head = self.name("operator")?;
                let f = match head.as_str() {
                    "E" => Formula::Edge(self.name("variable")?, self.name("variable")?),
                    "P" => Formula::Pred(self.name("predicate name")?, self.name("variable")?),
                    "=" => Formula::Eq(self.name("variable")?, self.name("variable")?),
                    "not" => Formula::Not(Box::new(self.formula()?)),
                    "and" | "or" => {
                        let mut parts = Vec::new();
                        while self.tokens.get(self.pos) != Some(&Token::Close) {
                            if self.pos >= self.tokens.len() {
                                return Err(syntax("unterminated list"));
                            }
                            parts.push(self.formula()?);
                        }
                        if head == "and" {
                            Formula::And(parts)
                        } else {
                            Formula::Or(parts)
                        }
                    }
                    "exists" => Formula::Exists(self.name("variable")?, Box::new(self.formula()?)),
                    "forall" => Formula::Forall(self.name("variable")?, Box::new(self.formula()?)),
                    other => return Err(syntax(format!("unknown operator `{other}`"))),
                };
                self.close()?;
                Ok(f)
            }
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser {
        tokens: tokenize(text),
        pos: 0,
    };
    let f = p.formula()?;
    if p.pos != p.tokens.len() {
        return Err(syntax("trailing input"));
    }
    Ok(f)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Edge(x, y) => write!(f, "(E {x} {y})"),
            Formula::Pred(p, x) => write!(f, "(P {p} {x})"),
            Formula::Eq(x, y) => write!(f, "(= {x} {y})"),
            Formula::Not(g) => write!(f, "(not {g})"),
            Formula::And(gs) | Formula::Or(gs) => {
                write!(f, "({}", if matches!(self, Formula::And(_)) { "and" } else { "or" })?;
                for g in gs {
                    write!(f, " {g}")?;
                }
                write!(f, ")")
            }
            Formula::Exists(x, g) => write!(f, "(exists {x} {g})"),
            Formula::Forall(x, g) => write!(f, "(forall {x} {g})"),
        }
    }
}
