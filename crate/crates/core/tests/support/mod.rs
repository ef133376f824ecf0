//! Independent oracles shared by the integration tests.
//!
//! Nothing in here calls into the library's evaluation, partition or
//! integration code paths; it only uses the public AST types to generate
//! and print fuzz cases.

#![allow(dead_code)]

pub mod reference;

use primitive_forge::expr::{BinaryOp, Constant, Function, Node};
use primitive_forge::Expression;
use rand::rngs::StdRng;
use rand::Rng;

/// An integrand with a closed-form antiderivative and a valid Lipschitz
/// constant on its interval.
pub struct TestFunction {
    pub name: &'static str,
    pub text: &'static str,
    pub interval: (f64, f64),
    pub antiderivative: fn(f64) -> f64,
    pub lipschitz: f64,
}

impl TestFunction {
    pub fn expression(&self) -> Expression {
        Expression::parse(self.text).unwrap()
    }

    pub fn exact(&self, x: f64) -> f64 {
        (self.antiderivative)(x) - (self.antiderivative)(self.interval.0)
    }
}

fn abs_half_primitive(x: f64) -> f64 {
    // integral of |t - 1/2| from 0 to x
    if x <= 0.5 {
        0.5 * x - 0.5 * x * x
    } else {
        0.125 + 0.5 * (x - 0.5) * (x - 0.5)
    }
}

pub fn oracle_functions() -> Vec<TestFunction> {
    vec![
        TestFunction {
            name: "x^2 on [0,1]",
            text: "x^2",
            interval: (0.0, 1.0),
            antiderivative: |x| x * x * x / 3.0,
            lipschitz: 2.0,
        },
        TestFunction {
            name: "sin on [0,1]",
            text: "sin(x)",
            interval: (0.0, 1.0),
            antiderivative: |x| -x.cos(),
            lipschitz: 1.0,
        },
        TestFunction {
            name: "exp on [0,1]",
            text: "exp(x)",
            interval: (0.0, 1.0),
            antiderivative: f64::exp,
            lipschitz: std::f64::consts::E,
        },
        TestFunction {
            name: "1/(1+x^2) on [0,1]",
            text: "1/(1+x^2)",
            interval: (0.0, 1.0),
            antiderivative: f64::atan,
            // max |2x / (1 + x^2)^2| = 3 sqrt(3) / 8 ~ 0.6495
            lipschitz: 0.65,
        },
        TestFunction {
            name: "sin on [0,pi]",
            text: "sin(x)",
            interval: (0.0, std::f64::consts::PI),
            antiderivative: |x| -x.cos(),
            lipschitz: 1.0,
        },
    ]
}

/// The oracle set plus a non-smooth member.
pub fn property_functions() -> Vec<TestFunction> {
    let mut fns = oracle_functions();
    fns.push(TestFunction {
        name: "|x - 1/2| on [0,1]",
        text: "abs(x - 0.5)",
        interval: (0.0, 1.0),
        antiderivative: abs_half_primitive,
        lipschitz: 1.0,
    });
    fns
}

/// Composite trapezoid rule on `n` equal panels, plain summation.
pub fn trapezoid_rule(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut sum = 0.5 * (f(a) + f(b));
    for i in 1..n {
        sum += f(a + i as f64 * h);
    }
    sum * h
}

/// Midpoint Riemann sum on `n` equal panels, plain summation.
pub fn midpoint_rule(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut sum = 0.0;
    for i in 0..n {
        sum += f(a + (i as f64 + 0.5) * h);
    }
    sum * h
}

/// A smooth random integrand `c0 + c1 x + c2 x^2 + c3 sin(w x + p) + c4 exp(l x)`.
#[derive(Debug, Clone, Copy)]
pub struct SmoothFamily {
    pub c: [f64; 5],
    pub w: f64,
    pub p: f64,
    pub l: f64,
}

impl SmoothFamily {
    pub fn random(rng: &mut StdRng) -> Self {
        let mut c = [0.0; 5];
        for v in &mut c {
            *v = rng.gen_range(-3.0..3.0);
        }
        Self {
            c,
            w: rng.gen_range(0.1..5.0),
            p: rng.gen_range(-3.0..3.0),
            l: rng.gen_range(-1.0..1.0),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let c = &self.c;
        c[0] + c[1] * x + c[2] * x * x + c[3] * (self.w * x + self.p).sin() + c[4] * (self.l * x).exp()
    }
}

/// Random grammar trees. Literals are non-negative, as the parser produces.
pub struct AstFuzzer<'a> {
    pub rng: &'a mut StdRng,
}

impl AstFuzzer<'_> {
    pub fn node(&mut self, depth: u32) -> Node {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return self.leaf();
        }
        match self.rng.gen_range(0..10) {
            0 | 1 => Node::negate(self.node(depth - 1)),
            2 | 3 => {
                let func = Function::ALL[self.rng.gen_range(0..Function::ALL.len())];
                Node::call(func, self.node(depth - 1))
            }
            _ => {
                let op = [
                    BinaryOp::Add,
                    BinaryOp::Sub,
                    BinaryOp::Mul,
                    BinaryOp::Div,
                    BinaryOp::Pow,
                ][self.rng.gen_range(0..5)];
                Node::binary(op, self.node(depth - 1), self.node(depth - 1))
            }
        }
    }

    fn leaf(&mut self) -> Node {
        match self.rng.gen_range(0..8) {
            0..=2 => Node::Var,
            3 => Node::Constant(if self.rng.gen_bool(0.5) {
                Constant::Pi
            } else {
                Constant::E
            }),
            4 => Node::Literal(self.rng.gen_range(0..10) as f64),
            5 => Node::Literal([0.5, 0.25, 1.5e-3, 2.75, 1e-7, 123456.789][self.rng.gen_range(0..6)]),
            _ => Node::Literal(self.rng.gen_range(0.0..10.0)),
        }
    }
}

fn precedence(node: &Node) -> u8 {
    match node {
        Node::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => 1,
        Node::Binary(BinaryOp::Mul | BinaryOp::Div, ..) => 2,
        Node::Neg(_) => 3,
        Node::Binary(BinaryOp::Pow, ..) => 4,
        _ => 5,
    }
}

/// Infix printing with only the parentheses precedence requires.
pub fn minimal_print(node: &Node) -> String {
    let wrap = |child: &Node, needs: bool| {
        let s = minimal_print(child);
        if needs {
            format!("({s})")
        } else {
            s
        }
    };
    match node {
        Node::Literal(v) => format!("{v}"),
        Node::Constant(c) => c.name().to_string(),
        Node::Var => "x".to_string(),
        Node::Neg(inner) => format!("-{}", wrap(inner, precedence(inner) < 3)),
        Node::Call(func, arg) => format!("{}({})", func.name(), minimal_print(arg)),
        Node::Binary(BinaryOp::Pow, l, r) => {
            format!("{}^{}", wrap(l, precedence(l) < 5), wrap(r, precedence(r) < 3))
        }
        Node::Binary(op, l, r) => {
            let p = precedence(node);
            format!(
                "{} {} {}",
                wrap(l, precedence(l) < p),
                op.symbol(),
                wrap(r, precedence(r) <= p)
            )
        }
    }
}

pub fn relative_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}
