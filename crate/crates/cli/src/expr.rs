//! Arithmetic expressions in `u`, `v` and `q = uv`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' uint)? | '-' factor
//! atom   := number | 'u' | 'v' | 'q' | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use stringy_core::hodge;
use stringy_core::{Polynomial, RatFuncError, Rational, RationalFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    U,
    V,
    /// Shorthand for `u*v`.
    Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Number(Rational),
    Var(Var),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
    Paren(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at column {}: {message}", .position + 1)]
pub struct ParseError {
    /// Byte offset into the source.
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error(transparent)]
    RatFunc(#[from] RatFuncError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(char),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
            }
            out.push((pos, Token::Int(digits.parse().expect("ascii digits"))));
        } else if matches!(c, 'u' | 'v' | 'q') {
            chars.next();
            out.push((pos, Token::Ident(c)));
        } else if "+-*/^()".contains(c) {
            chars.next();
            out.push((pos, Token::Op(c)));
        } else {
            return Err(ParseError {
                position: pos,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.position(),
            message: message.into(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek() {
            Some(Token::Int(n)) => {
                let Ok(e) = u32::try_from(n) else {
                    return self.error("exponent too large");
                };
                self.at += 1;
                Ok(Expr::Pow(Box::new(base), e))
            }
            Some(Token::Op('-')) => self.error("negative exponents are not allowed"),
            Some(Token::Op('(')) => self.error("exponent must be a nonnegative integer literal"),
            _ => self.error("expected a nonnegative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return self.error("unexpected end of input");
        };
        self.at += 1;
        match tok {
            Token::Int(n) => Ok(Expr::Number(Rational::from_integer(n))),
            Token::Ident('u') => Ok(Expr::Var(Var::U)),
            Token::Ident('v') => Ok(Expr::Var(Var::V)),
            Token::Ident(_) => Ok(Expr::Var(Var::Q)),
            Token::Op('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected `)`");
                }
                Ok(Expr::Paren(Box::new(inner)))
            }
            Token::Op(c) => {
                self.at -= 1;
                self.error(format!("unexpected `{c}`"))
            }
        }
    }
}

pub fn parse_expression(src: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens: &tokens,
        at: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.at < tokens.len() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

impl Expr {
    pub fn eval(&self) -> Result<RationalFunction, EvalError> {
        let poly = |p: Polynomial| RationalFunction::from_poly(p);
        Ok(match self {
            Expr::Number(c) => RationalFunction::constant(&hodge::HODGE_VARS, c.clone()),
            Expr::Var(Var::U) => poly(hodge::u()),
            Expr::Var(Var::V) => poly(hodge::v()),
            Expr::Var(Var::Q) => poly(hodge::uv()),
            Expr::Add(a, b) => a.eval()? + b.eval()?,
            Expr::Sub(a, b) => a.eval()? - b.eval()?,
            Expr::Mul(a, b) => a.eval()? * b.eval()?,
            Expr::Div(a, b) => {
                let d = b.eval()?;
                if d.is_zero() {
                    return Err(EvalError::DivisionByZero);
                }
                a.eval()?.checked_div(&d)?
            }
            Expr::Pow(a, n) => a.eval()?.pow(*n),
            Expr::Neg(a) => -a.eval()?,
            Expr::Paren(a) => a.eval()?,
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(c) => write!(f, "{c}"),
            Expr::Var(Var::U) => f.write_str("u"),
            Expr::Var(Var::V) => f.write_str("v"),
            Expr::Var(Var::Q) => f.write_str("q"),
            Expr::Add(a, b) => write!(f, "{a} + {b}"),
            Expr::Sub(a, b) => write!(f, "{a} - {b}"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "{a}/{b}"),
            Expr::Pow(a, n) => write!(f, "{a}^{n}"),
            Expr::Neg(a) => write!(f, "-{a}"),
            Expr::Paren(a) => write!(f, "({a})"),
        }
    }
}

/// Parses and evaluates in one step.
pub fn parse_rational_function(src: &str) -> Result<RationalFunction, ExprError> {
    Ok(parse_expression(src)?.eval()?)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
