//! A tiny expression language for specifying the right-hand side F:
//! coordinate variables `x1..xn`, decimal literals, `+ - * /`, `^` with
//! a nonnegative integer exponent, unary minus and parentheses. That is
//! all the worked examples need — polynomials and affine forms — so
//! there are deliberately no transcendental functions. Extending the
//! grammar means adding a token and an `Expr` variant; evaluation and
//! printing are single `match`es.
//!
//! Precedence, tightest first: `^`, unary `-`, `* /`, `+ -`. Binary
//! operators associate left; `^` associates right and its exponent must
//! fold to a nonnegative integer at parse time.

use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    /// Zero-based coordinate index; `x1` is `Var(0)`.
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprError {
    Syntax { position: usize, message: String },
    UnknownVariable { name: String, dim: usize },
    NegativeExponent { value: i64 },
    DivisionByZero,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Syntax { position, message } => {
                write!(f, "syntax error at byte {position}: {message}")
            }
            ExprError::UnknownVariable { name, dim } => {
                write!(f, "unknown variable {name}: the box has dimension {dim}")
            }
            ExprError::NegativeExponent { value } => {
                write!(f, "exponent {value} must be a nonnegative integer")
            }
            ExprError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

impl std::error::Error for ExprError {}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn lex(src: &str, dim: usize) -> Result<Vec<(usize, Token)>, ExprError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        let b = bytes[i];
        match b {
            b' ' | b'\t' => i += 1,
            b'+' => {
                out.push((start, Token::Plus));
                i += 1;
            }
            b'-' => {
                out.push((start, Token::Minus));
                i += 1;
            }
            b'*' => {
                out.push((start, Token::Star));
                i += 1;
            }
            b'/' => {
                out.push((start, Token::Slash));
                i += 1;
            }
            b'^' => {
                out.push((start, Token::Caret));
                i += 1;
            }
            b'(' => {
                out.push((start, Token::Open));
                i += 1;
            }
            b')' => {
                out.push((start, Token::Close));
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                let text = &src[start..i];
                let v: f64 = text.parse().map_err(|_| ExprError::Syntax {
                    position: start,
                    message: format!("bad number literal `{text}`"),
                })?;
                out.push((start, Token::Num(v)));
            }
            b'x' => {
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return Err(ExprError::Syntax {
                        position: start,
                        message: "variable must be x followed by an index, like x1".into(),
                    });
                }
                let idx: usize = src[digits_start..i].parse().map_err(|_| ExprError::Syntax {
                    position: start,
                    message: "variable index overflow".into(),
                })?;
                if idx == 0 || idx > dim {
                    return Err(ExprError::UnknownVariable {
                        name: src[start..i].into(),
                        dim,
                    });
                }
                out.push((start, Token::Var(idx - 1)));
            }
            _ => {
                return Err(ExprError::Syntax {
                    position: start,
                    message: format!("unexpected character `{}`", &src[start..start + 1]),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if let Some(Token::Minus) = self.peek() {
            self.pos += 1;
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            // The exponent subtree may itself contain `^` (right
            // associativity) and a leading sign, but it must fold to a
            // constant nonnegative integer — mirroring "fᵏ iterates k
            // times", which only makes sense for whole k.
            let at = self.here();
            let exponent = self.unary()?;
            let folded = fold_constant(&exponent).ok_or_else(|| ExprError::Syntax {
                position: at,
                message: "exponent must be a constant integer".into(),
            })?;
            if folded.fract() != 0.0 || folded.abs() > u32::MAX as f64 {
                return Err(ExprError::Syntax {
                    position: at,
                    message: format!("exponent {folded} must be a whole number"),
                });
            }
            let whole = folded as i64;
            if whole < 0 {
                return Err(ExprError::NegativeExponent { value: whole });
            }
            return Ok(Expr::Pow(Box::new(base), whole as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let at = self.here();
        match self.bump() {
            Some(Token::Num(v)) => Ok(Expr::Num(v)),
            Some(Token::Var(i)) => Ok(Expr::Var(i)),
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(ExprError::Syntax {
                        position: self.end,
                        message: "missing closing parenthesis".into(),
                    }),
                }
            }
            Some(t) => Err(ExprError::Syntax {
                position: at,
                message: format!("expected a value, found {t:?}"),
            }),
            None => Err(ExprError::Syntax {
                position: self.end,
                message: "expression ended early".into(),
            }),
        }
    }
}

/// Value of a variable-free subtree, if it is variable-free.
fn fold_constant(e: &Expr) -> Option<f64> {
    match e {
        Expr::Num(v) => Some(*v),
        Expr::Var(_) => None,
        Expr::Neg(a) => fold_constant(a).map(|v| -v),
        Expr::Add(a, b) => Some(fold_constant(a)? + fold_constant(b)?),
        Expr::Sub(a, b) => Some(fold_constant(a)? - fold_constant(b)?),
        Expr::Mul(a, b) => Some(fold_constant(a)? * fold_constant(b)?),
        Expr::Div(a, b) => Some(fold_constant(a)? / fold_constant(b)?),
        Expr::Pow(a, k) => Some(fold_constant(a)?.powi(*k as i32)),
    }
}

pub fn parse_expr(src: &str, dim: usize) -> Result<Expr, ExprError> {
    let tokens = lex(src, dim)?;
    let mut p = Parser { tokens: &tokens, pos: 0, end: src.len() };
    let e = p.expr()?;
    if p.pos != tokens.len() {
        return Err(ExprError::Syntax {
            position: p.here(),
            message: "trailing input after the expression".into(),
        });
    }
    Ok(e)
}

impl Expr {
    pub fn eval(&self, x: &[f64]) -> Result<f64, ExprError> {
        Ok(match self {
            Expr::Num(v) => *v,
            Expr::Var(i) => x[*i],
            Expr::Neg(a) => -a.eval(x)?,
            Expr::Add(a, b) => a.eval(x)? + b.eval(x)?,
            Expr::Sub(a, b) => a.eval(x)? - b.eval(x)?,
            Expr::Mul(a, b) => a.eval(x)? * b.eval(x)?,
            Expr::Div(a, b) => {
                let d = b.eval(x)?;
                if d == 0.0 {
                    return Err(ExprError::DivisionByZero);
                }
                a.eval(x)? / d
            }
            Expr::Pow(a, k) => a.eval(x)?.powi(*k as i32),
        })
    }
}

/// Canonical form: every compound node prints inside its own pair of
/// parentheses, so `parse_expr(to_string(e)) == e` with no precedence
/// bookkeeping. Literals use the shortest round-trip decimal.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Var(i) => write!(f, "x{}", i + 1),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, k) => write!(f, "({a}^{k})"),
        }
    }
}
