//! Symbolic expressions for closed-form map components and base-change curves.
//!
//! One small AST serves three consumers: floating-point evaluation against a
//! variable environment (for comparing closed forms with numeric exponentials),
//! exact rational evaluation (transcendentals only at argument 0, where
//! `exp(0) = cos(0) = 1` and `sin(0) = 0` hold on the nose), and conversion to
//! a rational function of the single variable `t` (for deformation curves).
//!
//! Grammar: `+ - * /` with the usual precedence, explicit multiplication only,
//! `^` with an integer exponent binding tighter than unary minus, parentheses,
//! and the function forms `exp(..)`, `cos(..)`, `sin(..)`. Numeric literals
//! are integers; rational constants are spelled as quotients like `1/2`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num::{One, Zero};
use thiserror::Error;

use crate::exact::rational::{rat_int, Rational};
use crate::exact::ratfun::RatFunction;

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Exp(Box<Expr>),
    Cos(Box<Expr>),
    Sin(Box<Expr>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseExprError {
    #[error("unexpected character `{0}` at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("expected {expected}, found `{found}`")]
    Expected { expected: &'static str, found: String },
    #[error("trailing input starting at `{0}`")]
    TrailingInput(String),
    #[error("integer literal out of range")]
    IntOutOfRange,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("`{0}` of a nonzero argument has no exact rational value")]
    NotRational(&'static str),
    #[error("`{0}` cannot appear in a rational function of t")]
    NotRationalFunction(&'static str),
    #[error("variable `{0}` is not the deformation parameter t")]
    NotDeformationVariable(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>, ParseExprError> {
    let mut tokens = Vec::new();
    let bytes: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '(' => {
                tokens.push(Token::LParen);
                i += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = bytes[start..i].iter().collect();
                let value: i64 = text.parse().map_err(|_| ParseExprError::IntOutOfRange)?;
                tokens.push(Token::Int(value));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                tokens.push(Token::Ident(bytes[start..i].iter().collect()));
            }
            other => return Err(ParseExprError::UnexpectedChar(other, i)),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Token, what: &'static str) -> Result<(), ParseExprError> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(ParseExprError::Expected {
                expected: what,
                found: format!("{t:?}"),
            }),
            None => Err(ParseExprError::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseExprError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseExprError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.pos += 1;
            let negative = if matches!(self.peek(), Some(Token::Minus)) {
                self.pos += 1;
                true
            } else {
                false
            };
            match self.next() {
                Some(Token::Int(k)) => {
                    let k = if negative { -k } else { k };
                    return Ok(Expr::Pow(Box::new(base), k));
                }
                Some(t) => {
                    return Err(ParseExprError::Expected {
                        expected: "integer exponent",
                        found: format!("{t:?}"),
                    })
                }
                None => return Err(ParseExprError::UnexpectedEnd),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseExprError> {
        match self.next() {
            Some(Token::Int(v)) => Ok(Expr::Num(rat_int(v))),
            Some(Token::Ident(name)) => {
                if matches!(self.peek(), Some(Token::LParen)) {
                    self.pos += 1;
                    let arg = self.expr()?;
                    self.expect(Token::RParen, "closing parenthesis")?;
                    match name.as_str() {
                        "exp" => Ok(Expr::Exp(Box::new(arg))),
                        "cos" => Ok(Expr::Cos(Box::new(arg))),
                        "sin" => Ok(Expr::Sin(Box::new(arg))),
                        other => Err(ParseExprError::Expected {
                            expected: "function name exp, cos, or sin",
                            found: other.to_string(),
                        }),
                    }
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "closing parenthesis")?;
                Ok(inner)
            }
            Some(t) => Err(ParseExprError::Expected {
                expected: "number, variable, or parenthesized expression",
                found: format!("{t:?}"),
            }),
            None => Err(ParseExprError::UnexpectedEnd),
        }
    }
}

impl Expr {
    /// Parses an expression from text.
    pub fn parse(input: &str) -> Result<Expr, ParseExprError> {
        let mut parser = Parser {
            tokens: tokenize(input)?,
            pos: 0,
        };
        let e = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(ParseExprError::TrailingInput(format!(
                "{:?}",
                parser.tokens[parser.pos]
            )));
        }
        Ok(e)
    }

    /// All variable names occurring in the expression.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Exp(a) | Expr::Cos(a) | Expr::Sin(a) => {
                a.collect_vars(out)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Floating-point evaluation against a variable environment.
    pub fn eval_f64(&self, env: &HashMap<String, f64>) -> Result<f64, EvalError> {
        Ok(match self {
            Expr::Num(r) => crate::exact::rational::to_f64(r),
            Expr::Var(v) => *env
                .get(v)
                .ok_or_else(|| EvalError::UnknownVariable(v.clone()))?,
            Expr::Neg(a) => -a.eval_f64(env)?,
            Expr::Add(a, b) => a.eval_f64(env)? + b.eval_f64(env)?,
            Expr::Sub(a, b) => a.eval_f64(env)? - b.eval_f64(env)?,
            Expr::Mul(a, b) => a.eval_f64(env)? * b.eval_f64(env)?,
            Expr::Div(a, b) => a.eval_f64(env)? / b.eval_f64(env)?,
            Expr::Pow(a, k) => a.eval_f64(env)?.powi(*k as i32),
            Expr::Exp(a) => a.eval_f64(env)?.exp(),
            Expr::Cos(a) => a.eval_f64(env)?.cos(),
            Expr::Sin(a) => a.eval_f64(env)?.sin(),
        })
    }

    /// Exact rational evaluation.
    ///
    /// `exp`, `cos`, and `sin` evaluate only when their argument is exactly
    /// zero (giving 1, 1, and 0); any other transcendental call is an error.
    pub fn eval_exact(&self, env: &HashMap<String, Rational>) -> Result<Rational, EvalError> {
        Ok(match self {
            Expr::Num(r) => r.clone(),
            Expr::Var(v) => env
                .get(v)
                .cloned()
                .ok_or_else(|| EvalError::UnknownVariable(v.clone()))?,
            Expr::Neg(a) => -a.eval_exact(env)?,
            Expr::Add(a, b) => a.eval_exact(env)? + b.eval_exact(env)?,
            Expr::Sub(a, b) => a.eval_exact(env)? - b.eval_exact(env)?,
            Expr::Mul(a, b) => a.eval_exact(env)? * b.eval_exact(env)?,
            Expr::Div(a, b) => {
                let d = b.eval_exact(env)?;
                if d.is_zero() {
                    return Err(EvalError::DivisionByZero);
                }
                a.eval_exact(env)? / d
            }
            Expr::Pow(a, k) => {
                let base = a.eval_exact(env)?;
                if *k < 0 && base.is_zero() {
                    return Err(EvalError::DivisionByZero);
                }
                base.pow(*k as i32)
            }
            Expr::Exp(a) => {
                if a.eval_exact(env)?.is_zero() {
                    Rational::one()
                } else {
                    return Err(EvalError::NotRational("exp"));
                }
            }
            Expr::Cos(a) => {
                if a.eval_exact(env)?.is_zero() {
                    Rational::one()
                } else {
                    return Err(EvalError::NotRational("cos"));
                }
            }
            Expr::Sin(a) => {
                if a.eval_exact(env)?.is_zero() {
                    Rational::zero()
                } else {
                    return Err(EvalError::NotRational("sin"));
                }
            }
        })
    }

    /// Interprets the expression as a rational function of the variable `t`.
    pub fn to_ratfun(&self) -> Result<RatFunction, EvalError> {
        Ok(match self {
            Expr::Num(r) => RatFunction::constant(r.clone()),
            Expr::Var(v) if v == "t" => RatFunction::var(),
            Expr::Var(v) => return Err(EvalError::NotDeformationVariable(v.clone())),
            Expr::Neg(a) => -&a.to_ratfun()?,
            Expr::Add(a, b) => &a.to_ratfun()? + &b.to_ratfun()?,
            Expr::Sub(a, b) => &a.to_ratfun()? - &b.to_ratfun()?,
            Expr::Mul(a, b) => &a.to_ratfun()? * &b.to_ratfun()?,
            Expr::Div(a, b) => {
                let d = b.to_ratfun()?;
                if d.is_zero() {
                    return Err(EvalError::DivisionByZero);
                }
                &a.to_ratfun()? / &d
            }
            Expr::Pow(a, k) => a
                .to_ratfun()?
                .pow(*k)
                .ok_or(EvalError::DivisionByZero)?,
            Expr::Exp(_) => return Err(EvalError::NotRationalFunction("exp")),
            Expr::Cos(_) => return Err(EvalError::NotRationalFunction("cos")),
            Expr::Sin(_) => return Err(EvalError::NotRationalFunction("sin")),
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) => write!(f, "{}", crate::exact::rational::format_rational(r)),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a}*{b})"),
            Expr::Div(a, b) => write!(f, "({a}/{b})"),
            Expr::Pow(a, k) => write!(f, "({a})^{k}"),
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Cos(a) => write!(f, "cos({a})"),
            Expr::Sin(a) => write!(f, "sin({a})"),
        }
    }
}
