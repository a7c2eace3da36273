//! Text format for CDGA models and element expressions.
//!
//! A model file is line oriented. `#` starts a comment and blank lines are
//! ignored.
//!
//! ```text
//! # Heisenberg nilmanifold
//! gen a 1
//! gen b 1
//! gen c 1
//! d a = 0
//! d b = 0
//! d c = -a*b
//! ```
//!
//! Expressions are sums of terms `[coeff*]x[^k]*y...`, where a coefficient
//! is an integer or `p/q`. A bare coefficient is a constant. Factors may be
//! written in any order; they are sorted with the Koszul sign. Declaration
//! order of the generators is significant: it fixes the monomial order and
//! the orientation.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Dga, Element, GeneratorSpec, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: unknown generator `{name}`")]
    UnknownGenerator {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("{line}:{column}: odd generator `{name}` raised to power {power}")]
    OddPower {
        line: usize,
        column: usize,
        name: String,
        power: u32,
    },
    #[error("{line}: duplicate differential for `{name}`")]
    DuplicateDifferential { line: usize, name: String },
    #[error("missing differential for generator `{name}`")]
    MissingDifferential { name: String },
    #[error("{line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: AlgebraError,
    },
}

impl ModelError {
    /// 1-based line of the error, when it has one.
    pub fn line(&self) -> Option<usize> {
        match self {
            ModelError::Syntax { line, .. }
            | ModelError::UnknownGenerator { line, .. }
            | ModelError::OddPower { line, .. }
            | ModelError::DuplicateDifferential { line, .. }
            | ModelError::Invalid { line, .. } => Some(*line),
            ModelError::MissingDifferential { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Equals,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    column: usize,
}

fn tokenize(text: &str, line: usize, column_offset: usize) -> Result<Vec<Token>, ModelError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = column_offset + i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, column });
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n = digits.parse::<BigInt>().expect("ascii digits");
            out.push(Token {
                tok: Tok::Nat(n),
                column,
            });
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                column,
            });
        } else {
            return Err(ModelError::Syntax {
                line,
                column,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct ExprParser<'a> {
    algebra: &'a Algebra,
    tokens: &'a [Token],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn column(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map_or(self.end_column, |t| t.column)
    }

    fn syntax(&self, message: impl Into<String>) -> ModelError {
        ModelError::Syntax {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Element, ModelError> {
        if self.tokens.is_empty() {
            return Err(self.syntax("empty expression"));
        }
        let mut acc = self.algebra.zero();
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            negate = true;
        }
        loop {
            let term = self.term()?;
            let term = if negate { term.neg() } else { term };
            acc = acc.add(&term).expect("same algebra");
            match self.next() {
                None => return Ok(acc),
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                Some(_) => {
                    self.pos -= 1;
                    return Err(self.syntax("expected `+`, `-` or end of expression"));
                }
            }
            if self.peek() == Some(&Tok::Minus) {
                self.pos += 1;
                negate = !negate;
            }
        }
    }

    fn nat(&mut self) -> Result<BigInt, ModelError> {
        match self.next() {
            Some(Tok::Nat(n)) => Ok(n),
            _ => {
                self.pos -= 1;
                Err(self.syntax("expected a natural number"))
            }
        }
    }

    fn term(&mut self) -> Result<Element, ModelError> {
        let mut coeff = Rational::one();
        if let Some(Tok::Nat(_)) = self.peek() {
            let num = self.nat()?;
            let mut den = BigInt::one();
            if self.peek() == Some(&Tok::Slash) {
                self.pos += 1;
                let column = self.column();
                den = self.nat()?;
                if den.is_zero() {
                    return Err(ModelError::Syntax {
                        line: self.line,
                        column,
                        message: "zero denominator".into(),
                    });
                }
            }
            coeff = Rational::new(num, den);
            if self.peek() != Some(&Tok::Star) {
                return Ok(self.algebra.one().scale(&coeff));
            }
            self.pos += 1;
        }
        let mut acc = self.algebra.one().scale(&coeff);
        loop {
            let column = self.column();
            let name = match self.next() {
                Some(Tok::Ident(name)) => name,
                _ => {
                    self.pos -= 1;
                    return Err(self.syntax("expected a generator name"));
                }
            };
            let g = self
                .algebra
                .index_of(&name)
                .ok_or_else(|| ModelError::UnknownGenerator {
                    line: self.line,
                    column,
                    name: name.clone(),
                })?;
            let mut power = 1u32;
            if self.peek() == Some(&Tok::Caret) {
                self.pos += 1;
                let n = self.nat()?;
                power = u32::try_from(n).map_err(|_| self.syntax("exponent too large"))?;
            }
            let factor = self.algebra.word(&[(g, power)]).map_err(|e| match e {
                AlgebraError::OddPower { name, power } => ModelError::OddPower {
                    line: self.line,
                    column,
                    name,
                    power,
                },
                other => ModelError::Invalid {
                    line: self.line,
                    source: other,
                },
            })?;
            acc = acc.mul(&factor).expect("same algebra");
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                return Ok(acc);
            }
        }
    }
}

fn parse_expr_tokens(
    algebra: &Algebra,
    tokens: &[Token],
    line: usize,
    end_column: usize,
) -> Result<Element, ModelError> {
    let mut p = ExprParser {
        algebra,
        tokens,
        pos: 0,
        line,
        end_column,
    };
    p.expr()
}

/// Parses an element expression in the algebra of `dga`.
pub fn parse_element(dga: &Dga, expr: &str) -> Result<Element, ModelError> {
    parse_algebra_element(dga.algebra(), expr)
}

pub fn parse_algebra_element(algebra: &Algebra, expr: &str) -> Result<Element, ModelError> {
    let tokens = tokenize(expr, 1, 0)?;
    parse_expr_tokens(algebra, &tokens, 1, expr.chars().count() + 1)
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(before, _)| before)
}

/// Parses a model file and validates it as a DGA.
pub fn parse_model(src: &str) -> Result<Dga, ModelError> {
    let mut generators = Vec::new();
    let mut gen_lines: HashMap<String, usize> = HashMap::new();
    let mut diffs: Vec<(usize, String, usize, Vec<Token>, usize)> = Vec::new();

    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let text = strip_comment(raw);
        let trimmed_start = text.len() - text.trim_start().len();
        let body = text.trim();
        if body.is_empty() {
            continue;
        }
        let tokens = tokenize(body, line, text[..trimmed_start].chars().count())?;
        let end_column = text.trim_end().chars().count() + 1;
        let syntax = |column: usize, message: &str| ModelError::Syntax {
            line,
            column,
            message: message.to_string(),
        };
        match tokens.first().map(|t| &t.tok) {
            Some(Tok::Ident(kw)) if kw == "gen" => {
                let (name, degree) = match &tokens[1..] {
                    [Token {
                        tok: Tok::Ident(name),
                        ..
                    }, Token {
                        tok: Tok::Nat(n), ..
                    }] => (name.clone(), n.clone()),
                    [_, Token {
                        tok: Tok::Minus,
                        column,
                    }, ..] => {
                        return Err(syntax(*column, "degrees must be natural numbers"));
                    }
                    _ => {
                        let column = tokens.get(1).map_or(end_column, |t| t.column);
                        return Err(syntax(column, "expected `gen NAME DEGREE`"));
                    }
                };
                let degree = i64::try_from(degree)
                    .map_err(|_| syntax(tokens[2].column, "degree too large"))?;
                if gen_lines.insert(name.clone(), line).is_some() {
                    return Err(ModelError::Invalid {
                        line,
                        source: AlgebraError::DuplicateGenerator(name),
                    });
                }
                generators.push(GeneratorSpec::new(name, degree));
            }
            Some(Tok::Ident(kw)) if kw == "d" => {
                let (name, name_column) = match tokens.get(1) {
                    Some(Token {
                        tok: Tok::Ident(name),
                        column,
                    }) => (name.clone(), *column),
                    other => {
                        let column = other.map_or(end_column, |t| t.column);
                        return Err(syntax(column, "expected a generator name after `d`"));
                    }
                };
                match tokens.get(2) {
                    Some(Token {
                        tok: Tok::Equals, ..
                    }) => {}
                    other => {
                        let column = other.map_or(end_column, |t| t.column);
                        return Err(syntax(column, "expected `=`"));
                    }
                }
                diffs.push((line, name, name_column, tokens[3..].to_vec(), end_column));
            }
            _ => {
                return Err(syntax(
                    tokens.first().map_or(1, |t| t.column),
                    "expected `gen` or `d`",
                ))
            }
        }
    }

    let algebra = Algebra::new(generators).map_err(|e| {
        let name = match &e {
            AlgebraError::NonPositiveDegree { name, .. } | AlgebraError::InvalidName(name) => {
                name.clone()
            }
            _ => String::new(),
        };
        ModelError::Invalid {
            line: gen_lines.get(&name).copied().unwrap_or(0),
            source: e,
        }
    })?;

    let mut values: Vec<Option<(usize, Element)>> = vec![None; algebra.num_generators()];
    for (line, name, column, tokens, end_column) in diffs {
        let g = algebra
            .index_of(&name)
            .ok_or_else(|| ModelError::UnknownGenerator {
                line,
                column,
                name: name.clone(),
            })?;
        if values[g].is_some() {
            return Err(ModelError::DuplicateDifferential { line, name });
        }
        let value = parse_expr_tokens(&algebra, &tokens, line, end_column)?;
        values[g] = Some((line, value));
    }

    let mut d_lines = Vec::with_capacity(values.len());
    let mut differentials = Vec::with_capacity(values.len());
    for (g, v) in values.into_iter().enumerate() {
        let (line, value) = v.ok_or_else(|| ModelError::MissingDifferential {
            name: algebra.name(g).to_string(),
        })?;
        d_lines.push(line);
        differentials.push(value);
    }
    Dga::new(algebra.clone(), differentials).map_err(|e| {
        let line = match &e {
            AlgebraError::WrongDegree { generator, .. }
            | AlgebraError::NotSquareZero { generator, .. } => {
                algebra.index_of(generator).map_or(0, |g| d_lines[g])
            }
            _ => 0,
        };
        ModelError::Invalid { line, source: e }
    })
}

fn render_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical text for an element: terms in monomial order, `0` for zero.
pub fn render(u: &Element) -> String {
    if u.is_zero() {
        return "0".to_string();
    }
    let alg = u.algebra();
    let mut out = String::new();
    for (i, (m, c)) in u.terms().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if m.is_unit() {
            out.push_str(&render_rational(&abs));
            continue;
        }
        if !abs.is_one() {
            out.push_str(&render_rational(&abs));
            out.push('*');
        }
        for (j, &(g, e)) in m.factors().iter().enumerate() {
            if j > 0 {
                out.push('*');
            }
            out.push_str(alg.name(g));
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
    }
    out
}

/// Model file text for `dga`, accepted by [`parse_model`].
pub fn render_model(dga: &Dga) -> String {
    let alg = dga.algebra();
    let mut out = String::new();
    for g in alg.generators() {
        let _ = writeln!(out, "gen {} {}", g.name, g.degree);
    }
    for (i, value) in dga.differential_values().iter().enumerate() {
        let _ = writeln!(out, "d {} = {}", alg.name(i), render(value));
    }
    out
}
