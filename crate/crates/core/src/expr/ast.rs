use std::fmt;

use crate::error::{DomainError, DomainKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    pub fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Abs,
}

impl Function {
    pub const ALL: [Function; 7] = [
        Function::Sin,
        Function::Cos,
        Function::Tan,
        Function::Exp,
        Function::Log,
        Function::Sqrt,
        Function::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Function::Sin => "sin",
            Function::Cos => "cos",
            Function::Tan => "tan",
            Function::Exp => "exp",
            Function::Log => "log",
            Function::Sqrt => "sqrt",
            Function::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn apply(self, v: f64) -> Result<f64, DomainError> {
        let out = match self {
            Function::Sin => v.sin(),
            Function::Cos => v.cos(),
            Function::Tan => v.tan(),
            Function::Exp => v.exp(),
            Function::Log => {
                if v <= 0.0 {
                    return Err(DomainError::new(DomainKind::LogOfNonPositive));
                }
                v.ln()
            }
            Function::Sqrt => {
                if v < 0.0 {
                    return Err(DomainError::new(DomainKind::SqrtOfNegative));
                }
                v.sqrt()
            }
            Function::Abs => v.abs(),
        };
        finite(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constant {
    Pi,
    E,
}

impl Constant {
    pub fn name(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::E => "e",
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Constant::Pi => std::f64::consts::PI,
            Constant::E => std::f64::consts::E,
        }
    }
}

/// A node of the closed expression grammar. The only free variable is `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Literal(f64),
    Constant(Constant),
    Var,
    Neg(Box<Node>),
    Binary(BinaryOp, Box<Node>, Box<Node>),
    Call(Function, Box<Node>),
}

impl Node {
    pub fn binary(op: BinaryOp, lhs: Node, rhs: Node) -> Node {
        Node::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn negate(inner: Node) -> Node {
        Node::Neg(Box::new(inner))
    }

    pub fn call(func: Function, arg: Node) -> Node {
        Node::Call(func, Box::new(arg))
    }

    pub fn eval(&self, x: f64) -> Result<f64, DomainError> {
        match self {
            Node::Literal(v) => finite(*v),
            Node::Constant(c) => Ok(c.value()),
            Node::Var => finite(x),
            Node::Neg(inner) => Ok(-inner.eval(x)?),
            Node::Call(func, arg) => func.apply(arg.eval(x)?),
            Node::Binary(op, lhs, rhs) => {
                let l = lhs.eval(x)?;
                let r = rhs.eval(x)?;
                apply_binary(*op, l, r)
            }
        }
    }
}

/// Real-valued binary arithmetic under the grammar's domain rules.
pub fn apply_binary(op: BinaryOp, l: f64, r: f64) -> Result<f64, DomainError> {
    let out = match op {
        BinaryOp::Add => l + r,
        BinaryOp::Sub => l - r,
        BinaryOp::Mul => l * r,
        BinaryOp::Div => {
            if r == 0.0 {
                return Err(DomainError::new(DomainKind::DivisionByZero));
            }
            l / r
        }
        BinaryOp::Pow => {
            if l == 0.0 && r < 0.0 {
                return Err(DomainError::new(DomainKind::ZeroToNegativePower));
            }
            if l < 0.0 && r.fract() != 0.0 {
                return Err(DomainError::new(DomainKind::NegativeBaseFractionalPower));
            }
            l.powf(r)
        }
    };
    finite(out)
}

fn finite(v: f64) -> Result<f64, DomainError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(DomainError::new(DomainKind::NonFinite))
    }
}

/// Canonical form: fully parenthesized infix, lowercase names, `.` decimals.
impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // Rust's float Display is the shortest string that parses back
            // to the same value and never uses an exponent.
            Node::Literal(v) => write!(f, "{v}"),
            Node::Constant(c) => f.write_str(c.name()),
            Node::Var => f.write_str("x"),
            Node::Neg(inner) => write!(f, "(-{inner})"),
            Node::Binary(op, lhs, rhs) => write!(f, "({lhs} {} {rhs})", op.symbol()),
            Node::Call(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}
