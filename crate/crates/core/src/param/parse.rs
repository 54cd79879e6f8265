//! Parser for parameterization files.
//!
//! Text form: one `name = expression` per line or `;`-separated; `#` starts a
//! comment. Expressions use `+ - * /`, `^` with a non-negative integer
//! exponent, parentheses, integer or decimal literals, implicit multiplication
//! (`3t`, `2(t+1)`), and `sin(s)` / `cos(s)` of a bare parameter symbol.
//! Every identifier that is not a coordinate name is a parameter, ordered by
//! first appearance.
//!
//! JSON form: `{"params":["t"],"coords":[{"num":"3*t","den":"1+t^3"}, ...]}`
//! with optional `"names"`. JSON expressions may use negative exponents
//! (Laurent input); these are cleared into the denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Deserialize;

use super::trig::trig_atom;
use super::{default_coord_names, half_angle, ParametricMap, RationalFunction, SourceForm};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

const UNSUPPORTED_FUNCTIONS: &[&str] = &[
    "tan", "cot", "sec", "csc", "exp", "log", "ln", "sqrt", "abs", "sinh", "cosh", "tanh", "asin",
    "acos", "atan",
];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Op(char),
}

fn lex(src: &str, base: usize) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let int_part = &src[start..i];
            let mut frac_part = "";
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                let fs = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                frac_part = &src[fs..i];
            }
            if int_part.is_empty() && frac_part.is_empty() {
                return Err(Error::Syntax {
                    pos: base + start,
                    msg: "malformed number".into(),
                });
            }
            let digits = format!("{int_part}{frac_part}");
            let n: BigInt = digits.parse().expect("digits only");
            let d = BigInt::from(10u32).pow(frac_part.len() as u32);
            out.push((base + start, Tok::Num(BigRational::new(n, d))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((base + start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((base + i, Tok::Op(c)));
            i += 1;
        } else {
            let ch = src[i..].chars().next().unwrap_or('?');
            return Err(Error::Syntax {
                pos: base + i,
                msg: format!("unexpected character `{ch}`"),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(BigRational),
    Var(String),
    Trig(&'static str, String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    allow_negative_powers: bool,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
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

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('('))) {
                // juxtaposition, e.g. `3t` or `2(t+1)`
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let neg = self.eat('-');
        if neg && !self.allow_negative_powers {
            return self.err("negative exponents are only accepted in JSON input");
        }
        let k = match self.peek() {
            Some(Tok::Num(n)) if n.is_integer() => {
                let k: i64 = n
                    .to_integer()
                    .try_into()
                    .or_else(|_| self.err("exponent too large"))?;
                self.pos += 1;
                k
            }
            _ => return self.err("exponent must be an integer literal"),
        };
        if paren {
            self.expect(')')?;
        }
        if k > u32::MAX as i64 {
            return self.err("exponent too large");
        }
        Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }))
    }

    fn primary(&mut self) -> Result<Expr> {
        let start = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let is_call = self.peek() == Some(&Tok::Op('('));
                if is_call && (name == "sin" || name == "cos") {
                    self.pos += 1;
                    let arg_pos = self.here();
                    let arg = self.expr()?;
                    self.expect(')')?;
                    let func = if name == "sin" { "sin" } else { "cos" };
                    match arg {
                        Expr::Var(s) => Ok(Expr::Trig(func, s)),
                        _ => Err(Error::Syntax {
                            pos: arg_pos,
                            msg: "trigonometric argument must be a single parameter symbol".into(),
                        }),
                    }
                } else if is_call && UNSUPPORTED_FUNCTIONS.contains(&name.as_str()) {
                    Err(Error::UnsupportedFunction(name))
                } else if name == "sin" || name == "cos" {
                    Err(Error::Syntax {
                        pos: start,
                        msg: format!("`{name}` must be applied to a parenthesised argument"),
                    })
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of expression"),
        }
    }
}

fn parse_expr_ast(src: &str, base: usize, allow_negative_powers: bool) -> Result<Expr> {
    let toks = lex(src, base)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: base + src.len(),
        allow_negative_powers,
    };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Symbols used bare and as trigonometric arguments, in first-appearance order.
#[derive(Default)]
struct Symbols {
    ring: Vec<String>,
    bare: Vec<String>,
    trig_args: Vec<String>,
}

impl Symbols {
    fn push_ring(&mut self, name: String) {
        if !self.ring.contains(&name) {
            self.ring.push(name);
        }
    }

    fn collect(&mut self, e: &Expr) {
        match e {
            Expr::Num(_) => {}
            Expr::Var(v) => {
                if !self.bare.contains(v) {
                    self.bare.push(v.clone());
                }
                self.push_ring(v.clone());
            }
            Expr::Trig(f, a) => {
                if !self.trig_args.contains(a) {
                    self.trig_args.push(a.clone());
                }
                self.push_ring(trig_atom(f, a));
            }
            Expr::Neg(a) | Expr::Pow(a, _) => self.collect(a),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                self.collect(a);
                self.collect(b);
            }
        }
    }

    fn check_mixed(&self) -> Result<()> {
        match self.trig_args.iter().find(|a| self.bare.contains(a)) {
            Some(a) => Err(Error::MixedTrigonometric(a.clone())),
            None => Ok(()),
        }
    }
}

fn to_rational(e: &Expr, ring: &[String]) -> Result<RationalFunction> {
    let var = |name: &str| -> Result<RationalFunction> {
        let i = ring
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::InvalidMap(format!("unknown symbol `{name}`")))?;
        Ok(RationalFunction::from_poly(MultiPoly::var(ring, i)))
    };
    Ok(match e {
        Expr::Num(n) => RationalFunction::constant(ring, n.clone()),
        Expr::Var(v) => var(v)?,
        Expr::Trig(f, a) => var(&trig_atom(f, a))?,
        Expr::Neg(a) => to_rational(a, ring)?.neg(),
        Expr::Add(a, b) => to_rational(a, ring)?.add(&to_rational(b, ring)?),
        Expr::Sub(a, b) => to_rational(a, ring)?.sub(&to_rational(b, ring)?),
        Expr::Mul(a, b) => to_rational(a, ring)?.mul(&to_rational(b, ring)?),
        Expr::Div(a, b) => to_rational(a, ring)?.div(&to_rational(b, ring)?)?,
        Expr::Pow(a, k) => to_rational(a, ring)?.pow(*k)?,
    })
}

fn classify(coords: &[RationalFunction], trig: bool) -> SourceForm {
    if trig {
        SourceForm::Trigonometric
    } else if coords.iter().all(RationalFunction::is_polynomial) {
        SourceForm::Polynomial
    } else {
        SourceForm::Rational
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses a single expression over a fixed ring of variables. Trigonometric
/// atoms must already be present in `vars` as `sin(s)` / `cos(s)`.
pub fn parse_expression(
    text: &str,
    vars: &[String],
    allow_negative_powers: bool,
) -> Result<RationalFunction> {
    let ast = parse_expr_ast(text, 0, allow_negative_powers)?;
    to_rational(&ast, vars)
}

/// Parses the text grammar. With `apply_half_angle` false, trigonometric maps
/// are returned with their `sin(s)` / `cos(s)` atoms intact.
pub fn parse_map_text(text: &str, apply_half_angle: bool) -> Result<ParametricMap> {
    let mut names = Vec::new();
    let mut asts = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let content = line.split('#').next().unwrap_or("");
        let mut stmt_off = offset;
        for stmt in content.split(';') {
            let here = stmt_off;
            stmt_off += stmt.len() + 1;
            if stmt.trim().is_empty() {
                continue;
            }
            let Some(eq) = stmt.find('=') else {
                return Err(Error::Syntax {
                    pos: here,
                    msg: "expected `name = expression`".into(),
                });
            };
            let name = stmt[..eq].trim();
            if !is_identifier(name) {
                return Err(Error::Syntax {
                    pos: here,
                    msg: format!("invalid coordinate name `{name}`"),
                });
            }
            if names.iter().any(|n| n == name) {
                return Err(Error::InvalidMap(format!("coordinate `{name}` defined twice")));
            }
            names.push(name.to_string());
            asts.push(parse_expr_ast(&stmt[eq + 1..], here + eq + 1, false)?);
        }
        offset += line.len();
    }
    if asts.is_empty() {
        return Err(Error::InvalidMap("no coordinates given".into()));
    }

    let mut syms = Symbols::default();
    for a in &asts {
        syms.collect(a);
    }
    syms.check_mixed()?;
    if let Some(n) = syms.ring.iter().find(|v| names.contains(v)) {
        return Err(Error::InvalidMap(format!(
            "coordinate name `{n}` used inside an expression"
        )));
    }
    if let Some(a) = syms.trig_args.iter().find(|a| names.contains(a)) {
        return Err(Error::InvalidMap(format!(
            "coordinate name `{a}` used as a trigonometric argument"
        )));
    }
    let ring = syms.ring;
    let coords = asts
        .iter()
        .map(|a| to_rational(a, &ring))
        .collect::<Result<Vec<_>>>()?;
    let form = classify(&coords, !syms.trig_args.is_empty());
    let map = ParametricMap::new(ring, names, coords, form)?;
    if apply_half_angle {
        half_angle(&map)
    } else {
        Ok(map)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonCoord {
    num: String,
    #[serde(default)]
    den: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonMap {
    params: Vec<String>,
    coords: Vec<JsonCoord>,
    #[serde(default)]
    names: Option<Vec<String>>,
}

/// Parses the JSON form and applies the half-angle transform.
pub fn parse_map_json(text: &str) -> Result<ParametricMap> {
    let raw: JsonMap = serde_json::from_str(text).map_err(|e| Error::Syntax {
        pos: 0,
        msg: format!("invalid JSON: {e}"),
    })?;
    if let Some(p) = raw.params.iter().find(|p| !is_identifier(p)) {
        return Err(Error::InvalidMap(format!("invalid parameter name `{p}`")));
    }
    let names = raw
        .names
        .unwrap_or_else(|| default_coord_names(raw.coords.len()));

    let mut syms = Symbols::default();
    let mut asts = Vec::new();
    for c in &raw.coords {
        let num = parse_expr_ast(&c.num, 0, true)?;
        let den = match &c.den {
            Some(d) => parse_expr_ast(d, 0, true)?,
            None => Expr::Num(BigRational::one()),
        };
        syms.collect(&num);
        syms.collect(&den);
        asts.push((num, den));
    }
    syms.check_mixed()?;
    let unknown = syms
        .bare
        .iter()
        .chain(&syms.trig_args)
        .find(|s| !raw.params.contains(s));
    if let Some(s) = unknown {
        return Err(Error::InvalidMap(format!("symbol `{s}` is not a declared parameter")));
    }
    // Declared order for plain parameters; trig atoms take the slot of their argument.
    let mut ring = Vec::new();
    for p in &raw.params {
        if syms.trig_args.contains(p) {
            for f in ["sin", "cos"] {
                let atom = trig_atom(f, p);
                if syms.ring.contains(&atom) {
                    ring.push(atom);
                }
            }
        } else {
            ring.push(p.clone());
        }
    }
    let mut coords = Vec::new();
    for (num, den) in &asts {
        let d = to_rational(den, &ring)?;
        if d.numerator().is_zero() {
            return Err(Error::InvalidMap("denominator is identically zero".into()));
        }
        coords.push(to_rational(num, &ring)?.div(&d)?);
    }
    let form = classify(&coords, !syms.trig_args.is_empty());
    half_angle(&ParametricMap::new(ring, names, coords, form)?)
}

/// Parses either form (JSON when the input starts with `{`) and applies the
/// half-angle transform.
pub fn parse_map(text: &str) -> Result<ParametricMap> {
    if text.trim_start().starts_with('{') {
        parse_map_json(text)
    } else {
        parse_map_text(text, true)
    }
}
