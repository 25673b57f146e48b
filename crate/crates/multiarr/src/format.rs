//! Text formats: arrangement files, polynomial and derivation expressions.
//!
//! An arrangement file looks like
//!
//! ```text
//! field F 7
//! # ax ay multiplicity
//! 1 0 2
//! 2 4 1
//! ```
//!
//! Polynomials are written the way [`HomogPoly`]'s `Display` prints them
//! (`3*x^2*y - 1/2*y^3`); juxtaposition and parentheses are also accepted.
//! Derivations are `(f) ∂x + (g) ∂y`, with `dx`/`dy` allowed for `∂x`/`∂y`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use multiarr_core::{Derivation, FieldElement, FieldSpec, HomogPoly, LinearForm, Multiarrangement};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Line { line: usize, reason: String },
    #[error("{0}")]
    Expr(String),
}

fn at(line: usize) -> impl Fn(String) -> ParseError {
    move |reason| ParseError::Line { line, reason }
}

/// Parses a field name: `Q`, `F 7`, `F7` or `F_7`.
pub fn parse_field(text: &str) -> Result<FieldSpec, String> {
    let compact: String = text.split_whitespace().collect();
    if compact == "Q" {
        return Ok(FieldSpec::rationals());
    }
    let digits = compact
        .strip_prefix("F_")
        .or_else(|| compact.strip_prefix('F'))
        .ok_or_else(|| format!("unknown field `{}`", text.trim()))?;
    let p: u64 = digits.parse().map_err(|_| format!("bad characteristic `{digits}`"))?;
    FieldSpec::prime(p).map_err(|e| e.to_string())
}

/// `a` or `a/b` with integers `a`, `b ≠ 0`.
pub fn parse_scalar(spec: FieldSpec, text: &str) -> Result<FieldElement, String> {
    let int = |s: &str| s.trim().parse::<BigInt>().map_err(|_| format!("bad number `{}`", text.trim()));
    match text.split_once('/') {
        None => Ok(spec.from_bigint(&int(text)?)),
        Some((n, d)) => spec.ratio(&int(n)?, &int(d)?).map_err(|e| e.to_string()),
    }
}

pub fn parse_arrangement(text: &str) -> Result<Multiarrangement, ParseError> {
    let mut spec = None;
    let mut seen: BTreeMap<LinearForm, usize> = BTreeMap::new();
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = at(line);
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some(spec) = spec else {
            let rest = content
                .strip_prefix("field")
                .ok_or_else(|| err("expected header `field Q` or `field F <p>`".into()))?;
            spec = Some(parse_field(rest).map_err(&err)?);
            continue;
        };
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [ax, ay, mult] = fields[..] else {
            return Err(err(format!("expected `<ax> <ay> <mult>`, got {} fields", fields.len())));
        };
        let ax = parse_scalar(spec, ax).map_err(&err)?;
        let ay = parse_scalar(spec, ay).map_err(&err)?;
        let form = LinearForm::new(ax, ay).map_err(|e| err(e.to_string()))?;
        let mult: i64 = mult.parse().map_err(|_| err(format!("bad multiplicity `{mult}`")))?;
        if mult <= 0 {
            return Err(err(format!("multiplicity must be positive, got {mult}")));
        }
        let mult = u32::try_from(mult).map_err(|_| err(format!("multiplicity {mult} too large")))?;
        if let Some(first) = seen.insert(form.clone(), line) {
            return Err(err(format!("duplicate hyperplane {form} (also on line {first})")));
        }
        pairs.push((form, mult));
    }
    let spec = spec.ok_or_else(|| at(1)("missing header `field Q` or `field F <p>`".into()))?;
    Multiarrangement::from_pairs(spec, pairs).map_err(|e| ParseError::Expr(e.to_string()))
}

pub fn render_arrangement(m: &Multiarrangement) -> String {
    let mut out = String::new();
    match m.spec().characteristic() {
        None => out.push_str("field Q\n"),
        Some(p) => writeln!(out, "field F {p}").unwrap(),
    }
    for (form, k) in m.iter() {
        writeln!(out, "{} {} {k}", form.ax(), form.ay()).unwrap();
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    X,
    Y,
    Dx,
    Dy,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        let tok = match c {
            c if c.is_whitespace() => continue,
            '0'..='9' => {
                let mut digits = String::from(c);
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(d);
                    chars.next();
                }
                Token::Num(digits.parse().expect("digits"))
            }
            'x' => Token::X,
            'y' => Token::Y,
            '∂' | 'd' => match chars.next() {
                Some('x') => Token::Dx,
                Some('y') => Token::Dy,
                _ => return Err(ParseError::Expr(format!("expected ∂x or ∂y in `{text}`"))),
            },
            '+' => Token::Plus,
            '-' | '−' => Token::Minus,
            '*' | '·' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::Open,
            ')' => Token::Close,
            other => return Err(ParseError::Expr(format!("unexpected character `{other}`"))),
        };
        out.push(tok);
    }
    Ok(out)
}

/// Sparse polynomial: `(x exponent, y exponent) → coefficient`.
type Sparse = BTreeMap<(usize, usize), FieldElement>;

struct Parser {
    spec: FieldSpec,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn fail<T>(&self, what: &str) -> Result<T, ParseError> {
        Err(ParseError::Expr(match self.peek() {
            Some(t) => format!("{what}, found {t:?}"),
            None => format!("{what}, found end of input"),
        }))
    }

    fn constant(&self, c: FieldElement) -> Sparse {
        let mut s = Sparse::new();
        if !c.is_zero() {
            s.insert((0, 0), c);
        }
        s
    }

    fn add(&self, mut a: Sparse, b: Sparse, sign: bool) -> Sparse {
        for (k, v) in b {
            let v = if sign { v } else { -&v };
            let sum = match a.remove(&k) {
                Some(w) => &w + &v,
                None => v,
            };
            if !sum.is_zero() {
                a.insert(k, sum);
            }
        }
        a
    }

    fn mul(&self, a: &Sparse, b: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (&(i, j), u) in a {
            for (&(k, l), v) in b {
                out = self.add(out, [((i + k, j + l), u * v)].into(), true);
            }
        }
        out
    }

    fn expr(&mut self) -> Result<Sparse, ParseError> {
        let mut acc = self.term()?;
        loop {
            let sign = match self.peek() {
                Some(Token::Plus) => true,
                Some(Token::Minus) => false,
                _ => return Ok(acc),
            };
            self.bump();
            let t = self.term()?;
            acc = self.add(acc, t, sign);
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Token::Num(_) | Token::X | Token::Y | Token::Open))
    }

    fn term(&mut self) -> Result<Sparse, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = self.mul(&acc, &f);
                }
                Some(Token::Slash) => {
                    self.bump();
                    let f = self.factor()?;
                    let c = match f.len() {
                        1 => f.get(&(0, 0)).cloned(),
                        _ => None,
                    };
                    let c = c.ok_or_else(|| ParseError::Expr("can only divide by a nonzero constant".into()))?;
                    let inv = c.inv().map_err(|e| ParseError::Expr(e.to_string()))?;
                    acc = self.mul(&acc, &self.constant(inv));
                }
                _ if self.starts_factor() => {
                    let f = self.factor()?;
                    acc = self.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Sparse, ParseError> {
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            let f = self.factor()?;
            return Ok(self.add(Sparse::new(), f, false));
        }
        let base = match self.bump() {
            Some(Token::Num(n)) => self.constant(self.spec.from_bigint(&n)),
            Some(Token::X) => [((1, 0), self.spec.one())].into(),
            Some(Token::Y) => [((0, 1), self.spec.one())].into(),
            Some(Token::Open) => {
                let e = self.expr()?;
                if self.bump() != Some(Token::Close) {
                    self.pos -= 1;
                    return self.fail("expected `)`");
                }
                e
            }
            _ => {
                self.pos -= 1;
                return self.fail("expected a number, x, y or `(`");
            }
        };
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.bump();
        let Some(Token::Num(e)) = self.bump() else {
            self.pos -= 1;
            return self.fail("expected an exponent");
        };
        let e = usize::try_from(e).map_err(|_| ParseError::Expr("exponent too large".into()))?;
        let mut acc = self.constant(self.spec.one());
        for _ in 0..e {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }
}

fn to_homog(spec: FieldSpec, s: Sparse) -> Result<HomogPoly, ParseError> {
    let mut degrees = s.keys().map(|&(i, j)| i + j);
    let Some(d) = degrees.next() else {
        return Ok(HomogPoly::zero(spec, 0));
    };
    if degrees.any(|e| e != d) {
        return Err(ParseError::Expr("polynomial is not homogeneous".into()));
    }
    let mut coeffs = vec![spec.zero(); d + 1];
    for ((i, _), c) in s {
        coeffs[i] = c;
    }
    HomogPoly::from_coeffs(spec, coeffs).map_err(|e| ParseError::Expr(e.to_string()))
}

pub fn parse_poly(spec: FieldSpec, text: &str) -> Result<HomogPoly, ParseError> {
    let mut p = Parser { spec, tokens: tokenize(text)?, pos: 0 };
    let s = p.expr()?;
    if p.pos != p.tokens.len() {
        return p.fail("unexpected trailing input");
    }
    to_homog(spec, s)
}

/// `(f) ∂x + (g) ∂y`; either part may be missing and a bare `∂x` means
/// coefficient 1.
pub fn parse_derivation(spec: FieldSpec, text: &str) -> Result<Derivation, ParseError> {
    let mut p = Parser { spec, tokens: tokenize(text)?, pos: 0 };
    let (mut f, mut g) = (Sparse::new(), Sparse::new());
    let mut sign = true;
    loop {
        if p.peek() == Some(&Token::Minus) {
            p.bump();
            sign = !sign;
        }
        let coeff = match p.peek() {
            Some(Token::Dx | Token::Dy) => p.constant(spec.one()),
            _ => p.term()?,
        };
        let target = match p.bump() {
            Some(Token::Dx) => &mut f,
            Some(Token::Dy) => &mut g,
            _ => {
                p.pos -= 1;
                return p.fail("expected ∂x or ∂y");
            }
        };
        *target = p.add(std::mem::take(target), coeff, sign);
        match p.bump() {
            None => break,
            Some(Token::Plus) => sign = true,
            Some(Token::Minus) => sign = false,
            Some(_) => {
                p.pos -= 1;
                return p.fail("expected `+`, `-` or end of input");
            }
        }
    }
    let (f, g) = (to_homog(spec, f)?, to_homog(spec, g)?);
    Derivation::new(f, g).map_err(|e| ParseError::Expr(e.to_string()))
}

/// `ax ay j` triples separated by `;`, used for Frobenius shift maps.
pub fn parse_shifts(spec: FieldSpec, text: &str) -> Result<BTreeMap<LinearForm, u64>, ParseError> {
    let mut out = BTreeMap::new();
    for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let fields: Vec<&str> = item.split_whitespace().collect();
        let [ax, ay, j] = fields[..] else {
            return Err(ParseError::Expr(format!("expected `<ax> <ay> <shift>`, got `{item}`")));
        };
        let ax = parse_scalar(spec, ax).map_err(ParseError::Expr)?;
        let ay = parse_scalar(spec, ay).map_err(ParseError::Expr)?;
        let form = LinearForm::new(ax, ay).map_err(|e| ParseError::Expr(e.to_string()))?;
        let j: u64 = j.parse().map_err(|_| ParseError::Expr(format!("bad shift `{j}`")))?;
        if out.insert(form.clone(), j).is_some() {
            return Err(ParseError::Expr(format!("duplicate hyperplane {form} in shifts")));
        }
    }
    Ok(out)
}
