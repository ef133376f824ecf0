//! Recursive-descent parser.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-x^2`
//! is `-(x^2)` while `2^-x` is still accepted.

use super::ast::{BinaryOp, Constant, Function, Node};
use super::lexer::{Token, TokenKind};
use super::ParseError;

pub(super) struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    pub(super) fn new(tokens: Vec<Token>) -> Self {
        Self { tokens, pos: 0 }
    }

    pub(super) fn parse(mut self) -> Result<Node, ParseError> {
        let node = self.expr()?;
        match self.peek().kind {
            TokenKind::End => Ok(node),
            _ => Err(self.unexpected("an operator or end of input")),
        }
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if !matches!(tok.kind, TokenKind::End) {
            self.pos += 1;
        }
        tok
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let tok = self.peek();
        ParseError::Syntax {
            offset: tok.offset,
            expected: expected.to_string(),
            found: tok.kind.describe(),
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> Result<(), ParseError> {
        if self.peek().kind == kind {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Plus => BinaryOp::Add,
                TokenKind::Minus => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Node::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Star => BinaryOp::Mul,
                TokenKind::Slash => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Node::binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if self.peek().kind == TokenKind::Minus {
            self.bump();
            return Ok(Node::negate(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.primary()?;
        if self.peek().kind == TokenKind::Caret {
            self.bump();
            let exponent = self.unary()?;
            return Ok(Node::binary(BinaryOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Node, ParseError> {
        let tok = self.peek().clone();
        match tok.kind {
            TokenKind::Number(v) => {
                self.bump();
                Ok(Node::Literal(v))
            }
            TokenKind::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            TokenKind::Ident(ref name) => {
                self.bump();
                match name.as_str() {
                    "x" => Ok(Node::Var),
                    "pi" => Ok(Node::Constant(Constant::Pi)),
                    "e" => Ok(Node::Constant(Constant::E)),
                    other => match Function::from_name(other) {
                        Some(func) => {
                            self.expect(TokenKind::LParen, "`(` after function name")?;
                            let arg = self.expr()?;
                            self.expect(TokenKind::RParen, "`)`")?;
                            Ok(Node::call(func, arg))
                        }
                        None => Err(ParseError::UnknownIdentifier {
                            name: other.to_string(),
                            offset: tok.offset,
                        }),
                    },
                }
            }
            _ => Err(self.unexpected("a number, `x`, a constant, a function or `(`")),
        }
    }
}
