//! Shunting-yard reference evaluator, written directly from the grammar.
//!
//! Precedence (low to high): `+ -`, `* /`, prefix `-`, `^` (right
//! associative). Functions apply to a parenthesized argument.

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    X,
    Func(String),
    Op(char),
    Neg,
    LParen,
    RParen,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefError(pub String);

fn lex(text: &str) -> Result<Vec<Tok>, RefError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out: Vec<Tok> = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| RefError(format!("bad number {s}")))?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            out.push(match name.as_str() {
                "x" => Tok::X,
                "pi" => Tok::Num(std::f64::consts::PI),
                "e" => Tok::Num(std::f64::consts::E),
                "sin" | "cos" | "tan" | "exp" | "log" | "sqrt" | "abs" => Tok::Func(name),
                _ => return Err(RefError(format!("unknown name {name}"))),
            });
        } else {
            let prefix_position = matches!(
                out.last(),
                None | Some(Tok::Op(_)) | Some(Tok::Neg) | Some(Tok::LParen)
            );
            out.push(match c {
                '-' if prefix_position => Tok::Neg,
                '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => return Err(RefError(format!("bad char {c}"))),
            });
            i += 1;
        }
    }
    Ok(out)
}

fn prec(t: &Tok) -> u8 {
    match t {
        Tok::Op('+') | Tok::Op('-') => 1,
        Tok::Op('*') | Tok::Op('/') => 2,
        Tok::Neg => 3,
        Tok::Op('^') => 4,
        _ => 0,
    }
}

fn to_rpn(tokens: Vec<Tok>) -> Result<Vec<Tok>, RefError> {
    let mut output = Vec::new();
    let mut stack: Vec<Tok> = Vec::new();
    for tok in tokens {
        match tok {
            Tok::Num(_) | Tok::X => output.push(tok),
            Tok::Func(_) | Tok::LParen | Tok::Neg => stack.push(tok),
            Tok::Op(c) => {
                let p = prec(&tok);
                let right_assoc = c == '^';
                while let Some(top) = stack.last() {
                    let tp = prec(top);
                    let pops = matches!(top, Tok::Op(_) | Tok::Neg) && (tp > p || (tp == p && !right_assoc));
                    if !pops {
                        break;
                    }
                    output.push(stack.pop().unwrap());
                }
                stack.push(tok);
            }
            Tok::RParen => {
                loop {
                    match stack.pop() {
                        Some(Tok::LParen) => break,
                        Some(t) => output.push(t),
                        None => return Err(RefError("unbalanced )".into())),
                    }
                }
                if matches!(stack.last(), Some(Tok::Func(_))) {
                    output.push(stack.pop().unwrap());
                }
            }
        }
    }
    while let Some(t) = stack.pop() {
        if t == Tok::LParen {
            return Err(RefError("unbalanced (".into()));
        }
        output.push(t);
    }
    Ok(output)
}

fn check(v: f64) -> Result<f64, RefError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(RefError("non-finite".into()))
    }
}

/// Evaluates `text` at `x`; any departure from the reals is an error.
pub fn evaluate(text: &str, x: f64) -> Result<f64, RefError> {
    let rpn = to_rpn(lex(text)?)?;
    let mut stack: Vec<f64> = Vec::new();
    let pop = |s: &mut Vec<f64>| s.pop().ok_or_else(|| RefError("stack underflow".into()));
    for tok in rpn {
        let v = match tok {
            Tok::Num(v) => check(v)?,
            Tok::X => check(x)?,
            Tok::Neg => -pop(&mut stack)?,
            Tok::Func(name) => {
                let a = pop(&mut stack)?;
                match name.as_str() {
                    "sin" => a.sin(),
                    "cos" => a.cos(),
                    "tan" => a.tan(),
                    "exp" => a.exp(),
                    "log" if a > 0.0 => a.ln(),
                    "sqrt" if a >= 0.0 => a.sqrt(),
                    "abs" => a.abs(),
                    _ => return Err(RefError(format!("{name} outside domain"))),
                }
            }
            Tok::Op(c) => {
                let r = pop(&mut stack)?;
                let l = pop(&mut stack)?;
                match c {
                    '+' => l + r,
                    '-' => l - r,
                    '*' => l * r,
                    '/' if r != 0.0 => l / r,
                    '^' if !(l == 0.0 && r < 0.0) && !(l < 0.0 && r.trunc() != r) => l.powf(r),
                    _ => return Err(RefError(format!("{c} outside domain"))),
                }
            }
            Tok::LParen | Tok::RParen => unreachable!("parens never reach the output"),
        };
        stack.push(check(v)?);
    }
    match stack.as_slice() {
        [v] => Ok(*v),
        _ => Err(RefError("malformed expression".into())),
    }
}
