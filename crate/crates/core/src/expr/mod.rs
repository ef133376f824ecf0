//! Textual definition of the integrand.
//!
//! A small closed grammar: `+ - * / ^`, unary `-`, the functions
//! `sin cos tan exp log sqrt abs`, the constants `pi` and `e`, numeric
//! literals and the single variable `x`. Evaluation never returns a
//! non-finite value; anything that leaves the reals is a [`DomainError`].

mod ast;
mod lexer;
mod parser;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use ast::{apply_binary, BinaryOp, Constant, Function, Node};

use crate::error::DomainError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {expected}, found {found}")]
    Syntax {
        offset: usize,
        expected: String,
        found: String,
    },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownIdentifier { offset, .. } => {
                *offset
            }
        }
    }
}

/// A parsed expression in `x`. Immutable once built.
#[derive(Debug, Clone)]
pub struct Expression {
    root: Node,
    source: String,
}

impl Expression {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let tokens = lexer::tokenize(text)?;
        let root = parser::Parser::new(tokens).parse()?;
        Ok(Self {
            root,
            source: text.to_string(),
        })
    }

    /// Wraps an already-built tree; `source` becomes its canonical printout.
    pub fn from_node(root: Node) -> Self {
        let source = root.to_string();
        Self { root, source }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn evaluate(&self, x: f64) -> Result<f64, DomainError> {
        self.root.eval(x).map_err(|e| e.at(x))
    }

    /// Fully parenthesized infix form; parsing it yields the same tree.
    pub fn canonical(&self) -> String {
        self.root.to_string()
    }
}

/// Structural equality of the trees; the source text is not compared.
impl PartialEq for Expression {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

impl FromStr for Expression {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Expression::parse(s)
    }
}

pub fn parse(text: &str) -> Result<Expression, ParseError> {
    Expression::parse(text)
}
