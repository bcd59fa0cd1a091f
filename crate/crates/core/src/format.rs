//! Text format for operators and operator files.
//!
//! An expression uses `x`, `t` (for τ), integer literals, `+ - * ^`,
//! parentheses, and division by a numeric constant. Products are evaluated in
//! the Ore ring, so `t*x` is `(x+1)*t`.
//!
//! A file is a list of statements separated by newlines or `;`: `key=value`
//! settings (`p`, `name`, `source`, `expect_lc1`, `expect_denom_chi`) and
//! operator expressions. `#` starts a comment line.

use std::fmt;

use num_bigint::BigInt;

use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::ore::OrePoly;
use crate::poly::Poly;
use crate::ratfun::RatFun;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    X,
    T,
    Op(char),
}

struct Lexed {
    toks: Vec<(Tok, usize)>,
}

fn lex(s: &str, line: usize, col0: usize) -> Result<Lexed, ParseError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        match c {
            ' ' | '\t' | '\r' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                toks.push((Tok::Int(digits.parse().expect("digits")), col));
            }
            'x' => {
                toks.push((Tok::X, col));
                i += 1;
            }
            't' => {
                toks.push((Tok::T, col));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                toks.push((Tok::Op(c), col));
                i += 1;
            }
            _ => {
                return Err(ParseError { line, column: col, message: format!("unexpected character '{c}'") })
            }
        }
    }
    Ok(Lexed { toks })
}

struct Parser<'a, F: Field> {
    field: &'a F,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a, F: Field> Parser<'a, F> {
    fn err(&self, message: impl Into<String>) -> ParseError {
        let column = self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col);
        ParseError { line: self.line, column, message: message.into() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<OrePoly<F>, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<OrePoly<F>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.unary()?;
                let c = match d.coeffs() {
                    [c] if c.is_polynomial() && c.numer().is_constant() => c.numer().coeff(0),
                    _ => {
                        self.pos = at;
                        return Err(self.err("division only by a nonzero numeric constant"));
                    }
                };
                if self.field.is_zero(&c) {
                    self.pos = at;
                    return Err(self.err("division by zero"));
                }
                acc = acc.scale_left(&RatFun::constant(self.field, self.field.inv(&c)));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<OrePoly<F>, ParseError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<OrePoly<F>, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                if negative {
                    self.pos -= 1;
                    return Err(self.err("negative exponent"));
                }
                let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                self.pos += 1;
                let mut acc = OrePoly::one(self.field);
                for _ in 0..e {
                    acc = &acc * &base;
                }
                Ok(acc)
            }
            _ => Err(self.err("expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<OrePoly<F>, ParseError> {
        let f = self.field;
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(OrePoly::from_polys(f, vec![Poly::constant(f, f.from_bigint(&n))]))
            }
            Some(Tok::X) => {
                self.pos += 1;
                Ok(OrePoly::from_polys(f, vec![Poly::x(f)]))
            }
            Some(Tok::T) => {
                self.pos += 1;
                Ok(OrePoly::tau(f))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(_) => Err(self.err("unexpected token")),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Parse one expression over `field`; `line` and `column` locate it in a file.
pub fn parse_expr_at<F: Field>(
    field: &F,
    text: &str,
    line: usize,
    column: usize,
) -> Result<OrePoly<F>, ParseError> {
    let lexed = lex(text, line, column)?;
    let mut p = Parser { field, toks: lexed.toks, pos: 0, line, end_col: column + text.chars().count() };
    if p.toks.is_empty() {
        return Err(p.err("empty expression"));
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

pub fn parse_expr<F: Field>(field: &F, text: &str) -> Result<OrePoly<F>, ParseError> {
    parse_expr_at(field, text, 1, 1)
}

/// Canonical text for an operator; parses back to the same value.
pub fn to_text<F: Field>(l: &OrePoly<F>) -> String {
    l.fmt_with("x", "t")
}

/// One operator expression with its position in the file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

/// Parsed contents of an operator file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OperatorFile {
    pub p: Option<u64>,
    pub name: Option<String>,
    pub source: Option<String>,
    pub expect_lc1: Option<Statement>,
    pub expect_denom_chi: Option<Statement>,
    pub operators: Vec<Statement>,
}

impl OperatorFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut out = OperatorFile::default();
        for (ln, line) in text.lines().enumerate() {
            let ln = ln + 1;
            if line.trim_start().starts_with('#') {
                continue;
            }
            let mut col = 1;
            for part in line.split(';') {
                let lead = part.len() - part.trim_start().len();
                let stmt = part.trim();
                let at = col + lead;
                col += part.chars().count() + 1;
                if stmt.is_empty() {
                    continue;
                }
                let Some((key, value)) = stmt.split_once('=') else {
                    out.operators.push(Statement { text: stmt.to_string(), line: ln, column: at });
                    continue;
                };
                let value_col = at + key.len() + 1 + (value.len() - value.trim_start().len());
                let (key, value) = (key.trim(), value.trim());
                let st = Statement { text: value.to_string(), line: ln, column: value_col };
                match key {
                    "p" => {
                        let p: u64 = value.parse().map_err(|_| ParseError {
                            line: ln,
                            column: value_col,
                            message: format!("invalid characteristic '{value}'"),
                        })?;
                        FieldSpec::new(p).map_err(|e| ParseError {
                            line: ln,
                            column: value_col,
                            message: e.to_string(),
                        })?;
                        out.p = Some(p);
                    }
                    "name" => out.name = Some(value.to_string()),
                    "source" => out.source = Some(value.to_string()),
                    "expect_lc1" => out.expect_lc1 = Some(st),
                    "expect_denom_chi" => out.expect_denom_chi = Some(st),
                    _ => {
                        return Err(ParseError { line: ln, column: at, message: format!("unknown key '{key}'") })
                    }
                }
            }
        }
        Ok(out)
    }
}

/// An operator over whichever field the file selected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyOperator {
    Rational(OrePoly<Rationals>),
    Modular(OrePoly<PrimeField>),
}

impl AnyOperator {
    pub fn spec(&self) -> FieldSpec {
        match self {
            AnyOperator::Rational(l) => l.field().spec(),
            AnyOperator::Modular(l) => l.field().spec(),
        }
    }
}

fn parse_stmt_nonzero<F: Field>(field: &F, s: &Statement) -> Result<OrePoly<F>, ParseError> {
    let l = parse_expr_at(field, &s.text, s.line, s.column)?;
    if l.is_zero() {
        return Err(ParseError { line: s.line, column: s.column, message: "zero operator".into() });
    }
    Ok(l)
}

/// Parse every operator statement of a file in its declared field
/// (default: the rationals).
pub fn parse_operators(file: &OperatorFile) -> Result<Vec<AnyOperator>, ParseError> {
    match file.p.unwrap_or(0) {
        0 => file
            .operators
            .iter()
            .map(|s| parse_stmt_nonzero(&Rationals, s).map(AnyOperator::Rational))
            .collect(),
        p => {
            let fp = PrimeField::new(p).expect("validated");
            file.operators
                .iter()
                .map(|s| parse_stmt_nonzero(&fp, s).map(AnyOperator::Modular))
                .collect()
        }
    }
}

/// Parse text holding exactly one operator, e.g. `"p=7; t - 1"`.
pub fn parse_operator(text: &str) -> Result<(AnyOperator, FieldSpec), ParseError> {
    let file = OperatorFile::parse(text)?;
    let mut ops = parse_operators(&file)?;
    match ops.len() {
        1 => {
            let op = ops.pop().expect("one");
            let spec = op.spec();
            Ok((op, spec))
        }
        n => Err(ParseError { line: 1, column: 1, message: format!("expected one operator, found {n}") }),
    }
}
