//! Multiplier symbols: named built-ins and a small arithmetic grammar in one variable.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '·' | '/') unary)*
//! unary := '-' unary | power
//! power := atom (('^' | '**') unary)?
//! atom  := number | 'λ' | 'lambda' | 'u' | 'x' | func '(' expr ')' | '(' expr ')'
//! func  := exp | ln | sqrt | sin | cos
//! ```

use std::fmt;

use crate::calculus::jet::Jet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Var,
    Const(f64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Ln,
    Sqrt,
    Sin,
    Cos,
}

impl Func {
    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "exp" => Func::Exp,
            "ln" | "log" => Func::Ln,
            "sqrt" => Func::Sqrt,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
        }
    }
}

/// Integer exponents up to this size use repeated multiplication, which stays
/// defined for negative bases.
const MAX_INT_POWER: f64 = 64.0;

fn int_exponent(e: &Expr) -> Option<i32> {
    match e {
        Expr::Const(p) if p.fract() == 0.0 && p.abs() <= MAX_INT_POWER => Some(*p as i32),
        Expr::Neg(inner) => int_exponent(inner).map(|k| -k),
        _ => None,
    }
}

impl Expr {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Expr::Var => x,
            Expr::Const(c) => *c,
            Expr::Neg(a) => -a.eval(x),
            Expr::Add(a, b) => a.eval(x) + b.eval(x),
            Expr::Sub(a, b) => a.eval(x) - b.eval(x),
            Expr::Mul(a, b) => a.eval(x) * b.eval(x),
            Expr::Div(a, b) => a.eval(x) / b.eval(x),
            Expr::Pow(a, e) => match int_exponent(e) {
                Some(k) => a.eval(x).powi(k),
                None => a.eval(x).powf(e.eval(x)),
            },
            Expr::Call(f, a) => {
                let v = a.eval(x);
                match f {
                    Func::Exp => v.exp(),
                    Func::Ln => v.ln(),
                    Func::Sqrt => v.sqrt(),
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                }
            }
        }
    }

    /// Taylor jet of the expression at `x` up to `order`.
    pub fn jet(&self, x: f64, order: usize) -> Jet {
        match self {
            Expr::Var => Jet::variable(x, order),
            Expr::Const(c) => Jet::constant(*c, order),
            Expr::Neg(a) => -&a.jet(x, order),
            Expr::Add(a, b) => &a.jet(x, order) + &b.jet(x, order),
            Expr::Sub(a, b) => &a.jet(x, order) - &b.jet(x, order),
            Expr::Mul(a, b) => &a.jet(x, order) * &b.jet(x, order),
            Expr::Div(a, b) => &a.jet(x, order) / &b.jet(x, order),
            Expr::Pow(a, e) => {
                let base = a.jet(x, order);
                match int_exponent(e) {
                    Some(k) if k >= 0 => base.powi(k as u32),
                    Some(k) => base.powi((-k) as u32).recip(),
                    None => match **e {
                        Expr::Const(p) => base.powf(p),
                        _ => (&e.jet(x, order) * &base.ln()).exp(),
                    },
                }
            }
            Expr::Call(f, a) => {
                let j = a.jet(x, order);
                match f {
                    Func::Exp => j.exp(),
                    Func::Ln => j.ln(),
                    Func::Sqrt => j.sqrt(),
                    Func::Sin => j.sin(),
                    Func::Cos => j.cos(),
                }
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var => write!(f, "λ"),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, b) => write!(f, "({a}^{b})"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Var,
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
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
            // exponent part, e.g. 1e-3
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut k = i + 1;
                if k < chars.len() && (chars[k] == '+' || chars[k] == '-') {
                    k += 1;
                }
                if k < chars.len() && chars[k].is_ascii_digit() {
                    i = k;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v = text.parse::<f64>().map_err(|_| Error::Symbol(format!("bad number '{text}'")))?;
            out.push(Tok::Num(v));
        } else if c == 'λ' {
            out.push(Tok::Var);
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            match word.as_str() {
                "lambda" | "u" | "x" => out.push(Tok::Var),
                _ => out.push(Tok::Ident(word)),
            }
        } else if c == '*' && chars.get(i + 1) == Some(&'*') {
            out.push(Tok::Op('^'));
            i += 2;
        } else if matches!(c, '+' | '-' | '*' | '/' | '^') {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '·' {
            out.push(Tok::Op('*'));
            i += 1;
        } else if c == '(' {
            out.push(Tok::LParen);
            i += 1;
        } else if c == ')' {
            out.push(Tok::RParen);
            i += 1;
        } else {
            return Err(Error::Symbol(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == '+' { Expr::Add(lhs.into(), rhs.into()) } else { Expr::Sub(lhs.into(), rhs.into()) };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Op(op @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if op == '*' { Expr::Mul(lhs.into(), rhs.into()) } else { Expr::Div(lhs.into(), rhs.into()) };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(self.unary()?.into()));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let e = self.unary()?;
            return Ok(Expr::Pow(base.into(), e.into()));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Num(v)) => Ok(Expr::Const(v)),
            Some(Tok::Var) => Ok(Expr::Var),
            Some(Tok::Ident(name)) => {
                let f = Func::from_name(&name).ok_or_else(|| Error::Symbol(format!("unknown function '{name}'")))?;
                if self.next() != Some(Tok::LParen) {
                    return Err(Error::Symbol(format!("expected '(' after {name}")));
                }
                let arg = self.expr()?;
                if self.next() != Some(Tok::RParen) {
                    return Err(Error::Symbol("expected ')'".into()));
                }
                Ok(Expr::Call(f, arg.into()))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.next() != Some(Tok::RParen) {
                    return Err(Error::Symbol("expected ')'".into()));
                }
                Ok(e)
            }
            Some(t) => Err(Error::Symbol(format!("unexpected token {t:?}"))),
            None => Err(Error::Symbol("unexpected end of expression".into())),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Symbol("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Symbol(format!("trailing input after token {}", p.pos)));
    }
    Ok(e)
}

/// A named multiplier symbol `m`, applied as `m(√L)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Symbol {
    pub name: String,
    pub expr: Expr,
}

/// Built-in names accepted by [`Symbol::resolve`]. `linear` is `|λ|`, the even
/// extension of `λ` from the half-line.
pub const BUILTINS: [(&str, &str); 4] =
    [("one", "1"), ("heat", "exp(-λ^2)"), ("rational", "λ^2/(1+λ^2)"), ("linear", "sqrt(λ^2)")];

impl Symbol {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self { name: s.trim().to_string(), expr: parse_expr(s)? })
    }

    /// A built-in name, `oscillatory:<a>`, or an expression string.
    pub fn resolve(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((_, text)) = BUILTINS.iter().find(|(n, _)| *n == s) {
            return Ok(Self { name: s.to_string(), expr: parse_expr(text)? });
        }
        if let Some(a) = s.strip_prefix("oscillatory:") {
            let a: f64 = a.parse().map_err(|_| Error::Symbol(format!("bad oscillation rate '{a}'")))?;
            return Ok(Self::oscillatory(a));
        }
        Self::parse(s)
    }

    /// `1 + cos(a·ln(1+λ²))/2`: bounded by 3/2 for every `a`, with Mihlin
    /// constants growing like `a^ν`.
    pub fn oscillatory(a: f64) -> Self {
        let expr = parse_expr(&format!("1 + 0.5*cos({a}*ln(1+λ^2))")).expect("static expression");
        Self { name: format!("oscillatory:{a}"), expr }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.expr.eval(x)
    }

    /// `m, m′, …, m^{(order)}` at `x`.
    pub fn derivatives(&self, x: f64, order: usize) -> Vec<f64> {
        self.expr.jet(x, order).derivatives()
    }

    /// Pointwise product `m₁·m₂`.
    pub fn product(&self, other: &Symbol) -> Symbol {
        Symbol {
            name: format!("({})*({})", self.name, other.name),
            expr: Expr::Mul(self.expr.clone().into(), other.expr.clone().into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_associativity() {
        let e = parse_expr("1 + 2*3^2^1 - 4/2").unwrap();
        assert_eq!(e.eval(0.0), 1.0 + 18.0 - 2.0);
        assert_eq!(parse_expr("-2^2").unwrap().eval(0.0), -4.0);
        assert_eq!(parse_expr("2**3").unwrap().eval(0.0), 8.0);
        assert_eq!(parse_expr("1e-3 * 2").unwrap().eval(0.0), 2e-3);
        assert_eq!(parse_expr("λ·λ").unwrap().eval(3.0), 9.0);
        assert_eq!(parse_expr("lambda^2 - x").unwrap().eval(2.0), 2.0);
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "1 +", "foo(2)", "exp 2", "(1", "1)", "2 $ 3", "1..2"] {
            assert!(matches!(parse_expr(bad), Err(Error::Symbol(_))), "{bad}");
        }
    }

    #[test]
    fn negative_integer_powers_are_defined_on_negative_bases() {
        let e = parse_expr("λ^-2").unwrap();
        assert_eq!(e.eval(-2.0), 0.25);
        let j = e.jet(-2.0, 2).derivatives();
        assert!((j[1] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn jets_match_finite_differences() {
        let s = Symbol::resolve("rational").unwrap();
        for &x in &[0.3, 1.0, 2.5] {
            let d = s.derivatives(x, 3);
            let h = 1e-4;
            let fd1 = (s.eval(x + h) - s.eval(x - h)) / (2.0 * h);
            let fd2 = (s.eval(x + h) - 2.0 * s.eval(x) + s.eval(x - h)) / (h * h);
            assert!((d[1] - fd1).abs() < 1e-7);
            assert!((d[2] - fd2).abs() < 1e-5);
        }
        // closed form: m' = 2λ/(1+λ²)²
        let x: f64 = 0.7;
        let d = s.derivatives(x, 1);
        assert!((d[1] - 2.0 * x / (1.0 + x * x).powi(2)).abs() < 1e-15);
    }

    #[test]
    fn builtins_resolve() {
        assert_eq!(Symbol::resolve("one").unwrap().eval(5.0), 1.0);
        assert!((Symbol::resolve("heat").unwrap().eval(1.0) - (-1.0f64).exp()).abs() < 1e-16);
        let o = Symbol::resolve("oscillatory:2").unwrap();
        assert!((o.eval(0.0) - 1.5).abs() < 1e-15);
        assert!(Symbol::resolve("oscillatory:x").is_err());
        let p = Symbol::resolve("heat").unwrap().product(&Symbol::resolve("rational").unwrap());
        assert!((p.eval(1.0) - 0.5 * (-1.0f64).exp()).abs() < 1e-16);
    }
}
