//! The `.ring` description language.
//!
//! A file holds one or more blocks
//!
//! ```text
//! ring "ex2" {
//!   field F2
//!   gens u v w
//!   sqzero u v w
//!   rel u*v, v*w, w*u
//!   rel u*w*v + v*u*w, u*w*v + w*v*u
//!   expect reflexive=true, semicommutative=false
//! }
//! ```
//!
//! Statements are line oriented. `gens`, `sqzero`, `rel` and `expect` take the
//! rest of their line; the other statements take a fixed number of arguments,
//! so `ring "f2d8" { field F2 group D8 }` fits on one line. The ring described
//! by a file is its last block; earlier blocks can be referenced by `sum`.

use std::fmt::{self, Write as _};
use std::path::Path;

use thiserror::Error;

use crate::algebra::FiniteAlgebra;
use crate::constructors::{self, ConstructError, GroupTable};
use crate::gf::{Field, FieldElem};
use crate::linalg::PVec;
use crate::rewrite::{self, CommRule, Monomial, NCPolynomial, Presentation, DEFAULT_DEGREE_BOUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DslError {
    #[error("{line}:{col}: syntax error: {message}")]
    SyntaxError { line: usize, col: usize, message: String },
    #[error("{line}:{col}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, col: usize, name: String },
    #[error("{line}:{col}: unknown field `{name}`")]
    UnknownField { line: usize, col: usize, name: String },
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error(transparent)]
    Dsl(#[from] DslError),
    #[error("ring \"{ring}\": {source}")]
    Construct { ring: String, source: ConstructError },
    #[error("ring \"{ring}\": cannot read group table {path}: {source}")]
    GroupFile { ring: String, path: String, source: std::io::Error },
    #[error("ring \"{ring}\" refers to undefined ring \"{name}\"")]
    UnknownRing { ring: String, name: String },
    #[error("file defines no ring")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Dihedral8,
    Quaternion8,
    Cyclic(usize),
    File(String),
}

/// Generators and relations for the rewriting constructor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationSpec {
    pub gens: Vec<String>,
    pub sqzero: Vec<u8>,
    pub relations: Vec<NCPolynomial>,
    /// Nonzero Frobenius exponents, `(generator, exponent)` in declaration order.
    pub skew: Vec<(u8, u32)>,
    pub comm: Vec<CommRule>,
    pub maxdeg: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Presentation(PresentationSpec),
    Group(GroupSpec),
    Matrix(usize),
    Upper(usize),
    Chain(usize),
    Sum(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpectValue {
    Bool(bool),
    Int(u64),
    List(Vec<u64>),
}

impl fmt::Display for ExpectValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpectValue::Bool(b) => write!(f, "{b}"),
            ExpectValue::Int(n) => write!(f, "{n}"),
            ExpectValue::List(v) => {
                write!(f, "[{}]", v.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
            }
        }
    }
}

/// Keys accepted by `expect` besides the property names.
pub const EXPECT_KEYS: [&str; 8] =
    ["order", "dim", "local", "chain", "nilpotency_index", "unit_order_max", "filtration_dims", "residue_field_size"];

pub fn is_expect_key(key: &str) -> bool {
    EXPECT_KEYS.contains(&key) || crate::props::Property::from_name(key).is_some_and(|p| p.name() == key)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub name: String,
    pub field: Field,
    pub body: Body,
    pub expect: Vec<(String, ExpectValue)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpecFile {
    pub rings: Vec<RingSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Str(String),
    Sym(char),
    Newline,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, col) = (li + 1, i + 1);
            let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line, col });
            if c == '#' {
                break;
            } else if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                push(&mut out, Tok::Ident(chars[start..i].iter().collect()));
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s.parse().map_err(|_| syntax(line, col, "number too large"))?;
                push(&mut out, Tok::Num(n));
            } else if c == '"' {
                let start = i + 1;
                i = start;
                while i < chars.len() && chars[i] != '"' {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(syntax(line, col, "unterminated string"));
                }
                push(&mut out, Tok::Str(chars[start..i].iter().collect()));
                i += 1;
            } else if "{}()*+-^=,[]".contains(c) {
                push(&mut out, Tok::Sym(c));
                i += 1;
            } else {
                return Err(syntax(line, col, &format!("unexpected character `{c}`")));
            }
        }
        out.push(Token { tok: Tok::Newline, line: li + 1, col: chars.len() + 1 });
    }
    Ok(out)
}

fn syntax(line: usize, col: usize, message: &str) -> DslError {
    DslError::SyntaxError { line, col, message: message.into() }
}

const KEYWORDS: [&str; 13] =
    ["field", "gens", "sqzero", "rel", "skew", "comm", "group", "matrix", "upper", "chain", "sum", "maxdeg", "expect"];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

#[derive(Default)]
struct Draft {
    field: Option<Field>,
    gens: Option<Vec<String>>,
    sqzero: Vec<u8>,
    relations: Vec<NCPolynomial>,
    skew: Vec<(u8, u32)>,
    comm: Vec<CommRule>,
    maxdeg: Option<usize>,
    body: Option<Body>,
    expect: Vec<(String, ExpectValue)>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn next(&mut self) -> Result<Token, DslError> {
        if self.at_end() {
            let last = self.toks.last().map(|t| (t.line, t.col)).unwrap_or((1, 1));
            return Err(syntax(last.0, last.1, "unexpected end of file"));
        }
        self.pos += 1;
        Ok(self.toks[self.pos - 1].clone())
    }

    fn err_here(&self, message: &str) -> DslError {
        let t = self.peek();
        syntax(t.line, t.col, message)
    }

    fn skip_newlines(&mut self) {
        while !self.at_end() && self.peek().tok == Tok::Newline {
            self.pos += 1;
        }
    }

    fn is_sym(&self, c: char) -> bool {
        !self.at_end() && self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> Result<(), DslError> {
        if self.is_sym(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err_here(&format!("expected `{c}`")))
        }
    }

    /// End of a line-long statement.
    fn at_line_end(&self) -> bool {
        self.at_end() || matches!(self.peek().tok, Tok::Newline | Tok::Sym('}'))
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize, usize), DslError> {
        let t = self.next()?;
        match t.tok {
            Tok::Ident(s) => Ok((s, t.line, t.col)),
            _ => Err(syntax(t.line, t.col, &format!("expected {what}"))),
        }
    }

    fn number(&mut self, what: &str) -> Result<u64, DslError> {
        let t = self.next()?;
        match t.tok {
            Tok::Num(n) => Ok(n),
            _ => Err(syntax(t.line, t.col, &format!("expected {what}"))),
        }
    }

    fn file(&mut self) -> Result<RingSpecFile, DslError> {
        let mut rings: Vec<RingSpec> = Vec::new();
        loop {
            self.skip_newlines();
            if self.at_end() {
                break;
            }
            let (kw, line, col) = self.ident("`ring`")?;
            if kw != "ring" {
                return Err(syntax(line, col, "expected `ring`"));
            }
            let t = self.next()?;
            let Tok::Str(name) = t.tok else {
                return Err(syntax(t.line, t.col, "expected a quoted ring name"));
            };
            if rings.iter().any(|r| r.name == name) {
                return Err(syntax(t.line, t.col, &format!("ring \"{name}\" defined twice")));
            }
            self.skip_newlines();
            self.expect_sym('{')?;
            rings.push(self.block(name, &rings)?);
        }
        Ok(RingSpecFile { rings })
    }

    fn block(&mut self, name: String, earlier: &[RingSpec]) -> Result<RingSpec, DslError> {
        let open = self.toks[self.pos - 1].clone();
        let mut d = Draft::default();
        loop {
            self.skip_newlines();
            if self.at_end() {
                return Err(syntax(open.line, open.col, "unclosed `{`"));
            }
            if self.is_sym('}') {
                self.pos += 1;
                break;
            }
            let (kw, line, col) = self.ident("a statement")?;
            if !KEYWORDS.contains(&kw.as_str()) {
                return Err(syntax(line, col, &format!("unknown statement `{kw}`")));
            }
            if kw != "field" && kw != "expect" && d.field.is_none() {
                return Err(syntax(line, col, "`field` must come first"));
            }
            self.statement(&kw, line, col, &mut d, earlier)?;
        }
        let field = d.field.ok_or_else(|| syntax(open.line, open.col, "missing `field`"))?;
        let body = match (d.body, d.gens) {
            (Some(b), None) => b,
            (None, Some(gens)) => Body::Presentation(PresentationSpec {
                gens,
                sqzero: d.sqzero,
                relations: d.relations,
                skew: d.skew,
                comm: d.comm,
                maxdeg: d.maxdeg,
            }),
            (None, None) => return Err(syntax(open.line, open.col, "ring has no constructor")),
            (Some(_), Some(_)) => unreachable!("rejected when the second constructor was read"),
        };
        Ok(RingSpec { name, field, body, expect: d.expect })
    }

    fn set_body(&self, d: &mut Draft, body: Body, line: usize, col: usize) -> Result<(), DslError> {
        if d.body.is_some() || d.gens.is_some() {
            return Err(syntax(line, col, "a ring has exactly one constructor"));
        }
        d.body = Some(body);
        Ok(())
    }

    fn gens_of<'d>(&self, d: &'d Draft, line: usize, col: usize) -> Result<&'d [String], DslError> {
        d.gens.as_deref().ok_or_else(|| syntax(line, col, "`gens` must come before this statement"))
    }

    fn generator(&mut self, d: &Draft, line: usize, col: usize) -> Result<u8, DslError> {
        let gens = self.gens_of(d, line, col)?.to_vec();
        let (g, l, c) = self.ident("a generator")?;
        gens.iter()
            .position(|x| *x == g)
            .map(|i| i as u8)
            .ok_or(DslError::UnknownGenerator { line: l, col: c, name: g })
    }

    fn statement(&mut self, kw: &str, line: usize, col: usize, d: &mut Draft, earlier: &[RingSpec]) -> Result<(), DslError> {
        match kw {
            "field" => {
                if d.field.is_some() {
                    return Err(syntax(line, col, "field declared twice"));
                }
                d.field = Some(self.field()?);
            }
            "gens" => {
                if d.body.is_some() || d.gens.is_some() {
                    return Err(syntax(line, col, "a ring has exactly one constructor"));
                }
                let mut gens: Vec<String> = Vec::new();
                while !self.at_line_end() {
                    let (g, l, c) = self.ident("a generator name")?;
                    if gens.contains(&g) || KEYWORDS.contains(&g.as_str()) {
                        return Err(syntax(l, c, &format!("invalid or repeated generator `{g}`")));
                    }
                    if g == "a" && !d.field.as_ref().is_some_and(Field::is_prime_field) {
                        return Err(syntax(l, c, "`a` names the field generator"));
                    }
                    gens.push(g);
                }
                if gens.is_empty() {
                    return Err(syntax(line, col, "`gens` needs at least one name"));
                }
                d.gens = Some(gens);
            }
            "sqzero" => {
                self.gens_of(d, line, col)?;
                while !self.at_line_end() {
                    let g = self.generator(d, line, col)?;
                    if !d.sqzero.contains(&g) {
                        d.sqzero.push(g);
                    }
                }
            }
            "rel" => {
                let gens = self.gens_of(d, line, col)?.to_vec();
                let field = d.field.clone().expect("field checked");
                loop {
                    d.relations.push(self.polynomial(&field, &gens)?);
                    if self.is_sym(',') {
                        self.pos += 1;
                    } else if self.at_line_end() {
                        break;
                    } else {
                        return Err(self.err_here("expected `,` or end of line"));
                    }
                }
            }
            "skew" => {
                let g = self.generator(d, line, col)?;
                let (f, l, c) = self.ident("`frob`")?;
                if f != "frob" {
                    return Err(syntax(l, c, "expected `frob`"));
                }
                let e = if self.is_sym('^') {
                    self.pos += 1;
                    self.number("an exponent")? as u32
                } else {
                    1
                };
                let k = d.field.as_ref().expect("field checked").degree();
                d.skew.retain(|&(h, _)| h != g);
                if e % k != 0 {
                    d.skew.push((g, e % k));
                }
            }
            "comm" => {
                let left = self.generator(d, line, col)?;
                let right = self.generator(d, line, col)?;
                let field = d.field.clone().expect("field checked");
                let scalar = self.scalar(&field)?;
                d.comm.push(CommRule { left, right, scalar });
            }
            "group" => {
                let (g, l, c) = self.ident("D8, Q8, C<n> or file")?;
                let spec = match g.as_str() {
                    "D8" => GroupSpec::Dihedral8,
                    "Q8" => GroupSpec::Quaternion8,
                    "file" => {
                        let t = self.next()?;
                        let Tok::Str(path) = t.tok else {
                            return Err(syntax(t.line, t.col, "expected a quoted path"));
                        };
                        GroupSpec::File(path)
                    }
                    s if s.starts_with('C') && s[1..].parse::<usize>().is_ok_and(|n| n > 0) => {
                        GroupSpec::Cyclic(s[1..].parse().expect("checked"))
                    }
                    _ => return Err(syntax(l, c, &format!("unknown group `{g}`"))),
                };
                self.set_body(d, Body::Group(spec), line, col)?;
            }
            "matrix" | "upper" | "chain" => {
                let n = self.number("a size")? as usize;
                if n == 0 {
                    return Err(syntax(line, col, "size must be at least 1"));
                }
                let body = match kw {
                    "matrix" => Body::Matrix(n),
                    "upper" => Body::Upper(n),
                    _ => Body::Chain(n),
                };
                self.set_body(d, body, line, col)?;
            }
            "sum" => {
                let mut names = Vec::new();
                for _ in 0..2 {
                    let t = self.next()?;
                    let Tok::Str(n) = t.tok else {
                        return Err(syntax(t.line, t.col, "expected a quoted ring name"));
                    };
                    if !earlier.iter().any(|r| r.name == n) {
                        return Err(syntax(t.line, t.col, &format!("ring \"{n}\" is not defined above")));
                    }
                    names.push(n);
                }
                let b = names.pop().expect("two names");
                let a = names.pop().expect("two names");
                self.set_body(d, Body::Sum(a, b), line, col)?;
            }
            "maxdeg" => {
                self.gens_of(d, line, col)?;
                d.maxdeg = Some(self.number("a degree bound")? as usize);
            }
            "expect" => self.expectations(&mut d.expect)?,
            _ => unreachable!("keyword list checked"),
        }
        Ok(())
    }

    fn expectations(&mut self, out: &mut Vec<(String, ExpectValue)>) -> Result<(), DslError> {
        loop {
            let (key, l, c) = self.ident("an expectation key")?;
            if !is_expect_key(&key) {
                return Err(syntax(l, c, &format!("unknown expectation key `{key}`")));
            }
            self.expect_sym('=')?;
            let value = self.expect_value()?;
            out.retain(|(k, _)| *k != key);
            out.push((key, value));
            if self.is_sym(',') {
                self.pos += 1;
            } else if self.at_line_end() {
                return Ok(());
            } else {
                return Err(self.err_here("expected `,` or end of line"));
            }
        }
    }

    fn expect_value(&mut self) -> Result<ExpectValue, DslError> {
        let t = self.next()?;
        match t.tok {
            Tok::Ident(s) if s == "true" => Ok(ExpectValue::Bool(true)),
            Tok::Ident(s) if s == "false" => Ok(ExpectValue::Bool(false)),
            Tok::Num(n) => Ok(ExpectValue::Int(n)),
            Tok::Sym('[') => {
                let mut v = Vec::new();
                if self.is_sym(']') {
                    self.pos += 1;
                    return Ok(ExpectValue::List(v));
                }
                loop {
                    v.push(self.number("a number")?);
                    if self.is_sym(',') {
                        self.pos += 1;
                    } else {
                        self.expect_sym(']')?;
                        return Ok(ExpectValue::List(v));
                    }
                }
            }
            _ => Err(syntax(t.line, t.col, "expected true, false, a number or a list")),
        }
    }

    fn field(&mut self) -> Result<Field, DslError> {
        let (name, line, col) = self.ident("a field")?;
        let unknown = || DslError::UnknownField { line, col, name: name.clone() };
        if name == "GF" {
            self.expect_sym('(')?;
            let p = self.number("the characteristic")?;
            self.expect_sym(',')?;
            let k = self.number("the degree")?;
            self.expect_sym(',')?;
            let modulus = self.modulus_poly(p)?;
            self.expect_sym(')')?;
            let (p, k) = (u32::try_from(p).map_err(|_| unknown())?, u32::try_from(k).map_err(|_| unknown())?);
            return Field::new(p, k, &modulus).map_err(|_| unknown());
        }
        match name.as_str() {
            "F4" => Ok(Field::f4()),
            s if s.starts_with('F') => {
                let p: u32 = s[1..].parse().map_err(|_| unknown())?;
                Field::prime(p).map_err(|_| unknown())
            }
            _ => Err(unknown()),
        }
    }

    /// A polynomial in `x` with integer coefficients, constant term first in the result.
    fn modulus_poly(&mut self, p: u64) -> Result<Vec<u32>, DslError> {
        let mut coeffs: Vec<u64> = Vec::new();
        loop {
            let mut c = 1;
            let mut e = 0;
            let mut any = false;
            if let Tok::Num(n) = self.peek().tok {
                self.pos += 1;
                c = n;
                any = true;
                if self.is_sym('*') {
                    self.pos += 1;
                }
            }
            if matches!(&self.peek().tok, Tok::Ident(s) if s == "x") {
                self.pos += 1;
                e = 1;
                any = true;
                if self.is_sym('^') {
                    self.pos += 1;
                    e = self.number("an exponent")? as usize;
                }
            }
            if !any {
                return Err(self.err_here("expected a term of the modulus"));
            }
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] = (coeffs[e] + c) % p.max(1);
            if self.is_sym('+') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(coeffs.into_iter().map(|c| c as u32).collect())
    }

    /// A field constant: an integer, `a`, `a^n`, or a parenthesized sum of these.
    fn scalar(&mut self, f: &Field) -> Result<FieldElem, DslError> {
        if self.is_sym('(') {
            self.pos += 1;
            let mut acc = f.zero();
            let mut negate = false;
            if self.is_sym('-') {
                self.pos += 1;
                negate = true;
            }
            loop {
                let t = self.scalar_term(f)?;
                acc = if negate { f.sub(acc, t) } else { f.add(acc, t) };
                if self.is_sym('+') {
                    negate = false;
                } else if self.is_sym('-') {
                    negate = true;
                } else {
                    break;
                }
                self.pos += 1;
            }
            self.expect_sym(')')?;
            Ok(acc)
        } else {
            self.scalar_term(f)
        }
    }

    fn scalar_term(&mut self, f: &Field) -> Result<FieldElem, DslError> {
        let mut c = f.one();
        let mut any = false;
        if let Tok::Num(n) = self.peek().tok {
            self.pos += 1;
            c = f.from_int((n % f.characteristic() as u64) as i64);
            any = true;
            if self.is_sym('*') && matches!(&self.toks.get(self.pos + 1).map(|t| &t.tok), Some(Tok::Ident(s)) if s == "a") {
                self.pos += 1;
            }
        }
        if !f.is_prime_field() && matches!(&self.peek().tok, Tok::Ident(s) if s == "a") {
            self.pos += 1;
            let mut e = 1;
            if self.is_sym('^') {
                self.pos += 1;
                e = self.number("an exponent")?;
            }
            c = f.mul(c, f.pow(f.generator(), e));
            any = true;
        }
        if any {
            Ok(c)
        } else {
            Err(self.err_here("expected a field constant"))
        }
    }

    fn polynomial(&mut self, f: &Field, gens: &[String]) -> Result<NCPolynomial, DslError> {
        let mut p = NCPolynomial::zero();
        let mut negate = false;
        if self.is_sym('-') {
            self.pos += 1;
            negate = true;
        }
        loop {
            let (c, w) = self.term(f, gens)?;
            p.add_term(f, if negate { f.neg(c) } else { c }, Monomial(w));
            if self.is_sym('+') {
                negate = false;
            } else if self.is_sym('-') {
                negate = true;
            } else {
                return Ok(p);
            }
            self.pos += 1;
        }
    }

    /// A product of an optional leading scalar and generator powers.
    fn term(&mut self, f: &Field, gens: &[String]) -> Result<(FieldElem, Vec<u8>), DslError> {
        let mut c = f.one();
        let mut word = Vec::new();
        let mut first = true;
        loop {
            let t = self.peek().clone();
            let is_scalar = match &t.tok {
                Tok::Num(_) | Tok::Sym('(') => true,
                Tok::Ident(s) => s == "a" && !f.is_prime_field(),
                _ => false,
            };
            if is_scalar {
                if !word.is_empty() {
                    return Err(syntax(t.line, t.col, "coefficients go on the left of a term"));
                }
                c = f.mul(c, self.scalar_atom(f)?);
            } else if let Tok::Ident(name) = &t.tok {
                self.pos += 1;
                let g = gens
                    .iter()
                    .position(|x| x == name)
                    .ok_or(DslError::UnknownGenerator { line: t.line, col: t.col, name: name.clone() })?;
                let mut e = 1;
                if self.is_sym('^') {
                    self.pos += 1;
                    e = self.number("an exponent")? as usize;
                }
                word.extend(std::iter::repeat_n(g as u8, e));
            } else if first {
                return Err(syntax(t.line, t.col, "expected a term"));
            } else {
                return Err(syntax(t.line, t.col, "expected a factor after `*`"));
            }
            first = false;
            if self.is_sym('*') {
                self.pos += 1;
            } else {
                return Ok((c, word));
            }
        }
    }

    /// A scalar factor inside a term; `2*a` is read as two factors.
    fn scalar_atom(&mut self, f: &Field) -> Result<FieldElem, DslError> {
        if self.is_sym('(') {
            return self.scalar(f);
        }
        let t = self.next()?;
        match t.tok {
            Tok::Num(n) => {
                let c = f.from_int((n % f.characteristic() as u64) as i64);
                if !f.is_prime_field() && matches!(&self.peek().tok, Tok::Ident(s) if s == "a") {
                    return Ok(f.mul(c, self.scalar_atom(f)?));
                }
                Ok(c)
            }
            Tok::Ident(_) => {
                let mut e = 1;
                if self.is_sym('^') {
                    self.pos += 1;
                    e = self.number("an exponent")?;
                }
                Ok(f.pow(f.generator(), e))
            }
            _ => Err(syntax(t.line, t.col, "expected a field constant")),
        }
    }
}

pub fn parse(text: &str) -> Result<RingSpecFile, DslError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    p.file()
}

/// Parses `key=value, …` as written after `expect`.
pub fn parse_expectations(text: &str) -> Result<Vec<(String, ExpectValue)>, DslError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut out = Vec::new();
    p.expectations(&mut out)?;
    Ok(out)
}

/// Evaluates an expression such as `(a^2)*u + v` or `1 + rs` in `alg`.
///
/// Identifiers name basis elements by label and juxtaposed factors multiply.
pub fn element(alg: &FiniteAlgebra, text: &str) -> Result<PVec, DslError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let labels = alg.labels().to_vec();
    let poly = p.polynomial(alg.field(), &labels)?;
    if !p.at_end() && p.peek().tok != Tok::Newline {
        return Err(p.err_here("unexpected text after the expression"));
    }
    let mut total = alg.zero();
    for (m, c) in poly.terms() {
        let mut x = alg.one_packed();
        for &g in &m.0 {
            x = alg.mul(x, alg.pack(&alg.basis_element(g as usize)).expect("basis element"));
        }
        let term = alg.elem_mul(&alg.scalar(c), &alg.unpack(x)).expect("same algebra");
        total = alg.add(&total, &term).expect("same algebra");
    }
    Ok(alg.pack(&total).expect("packed"))
}

fn render_scalar(f: &Field, c: FieldElem) -> String {
    let s = f.format(c);
    if s.contains('+') {
        format!("({s})")
    } else {
        s
    }
}

fn modulus_string(f: &Field) -> String {
    let m = f.modulus();
    let mut terms = Vec::new();
    for (i, &c) in m.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        terms.push(match i {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        });
    }
    terms.join("+")
}

fn field_decl(f: &Field) -> String {
    match (f.characteristic(), f.degree()) {
        (p, 1) => format!("F{p}"),
        (2, 2) => "F4".into(),
        (p, k) => format!("GF({p},{k},{})", modulus_string(f)),
    }
}

impl RingSpec {
    pub fn render(&self) -> String {
        let mut s = format!("ring \"{}\" {{\n  field {}\n", self.name, field_decl(&self.field));
        match &self.body {
            Body::Presentation(p) => {
                let name = |g: u8| p.gens[g as usize].as_str();
                let _ = writeln!(s, "  gens {}", p.gens.join(" "));
                if !p.sqzero.is_empty() {
                    let _ = writeln!(s, "  sqzero {}", p.sqzero.iter().map(|&g| name(g)).collect::<Vec<_>>().join(" "));
                }
                for &(g, e) in &p.skew {
                    let _ = writeln!(s, "  skew {} frob{}", name(g), if e == 1 { String::new() } else { format!("^{e}") });
                }
                for c in &p.comm {
                    let _ = writeln!(s, "  comm {} {} {}", name(c.left), name(c.right), render_scalar(&self.field, c.scalar));
                }
                for r in &p.relations {
                    let _ = writeln!(s, "  rel {}", r.render(&self.field, &p.gens));
                }
                if let Some(m) = p.maxdeg {
                    let _ = writeln!(s, "  maxdeg {m}");
                }
            }
            Body::Group(g) => {
                let g = match g {
                    GroupSpec::Dihedral8 => "D8".to_string(),
                    GroupSpec::Quaternion8 => "Q8".to_string(),
                    GroupSpec::Cyclic(n) => format!("C{n}"),
                    GroupSpec::File(path) => format!("file \"{path}\""),
                };
                let _ = writeln!(s, "  group {g}");
            }
            Body::Matrix(n) => {
                let _ = writeln!(s, "  matrix {n}");
            }
            Body::Upper(n) => {
                let _ = writeln!(s, "  upper {n}");
            }
            Body::Chain(k) => {
                let _ = writeln!(s, "  chain {k}");
            }
            Body::Sum(a, b) => {
                let _ = writeln!(s, "  sum \"{a}\" \"{b}\"");
            }
        }
        if !self.expect.is_empty() {
            let items: Vec<String> = self.expect.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "  expect {}", items.join(", "));
        }
        s.push_str("}\n");
        s
    }

    /// The presentation handed to the rewriting engine.
    pub fn presentation(&self) -> Option<Presentation> {
        let Body::Presentation(p) = &self.body else {
            return None;
        };
        let mut pres = Presentation::new(self.field.clone(), p.gens.clone());
        pres.sqzero = p.sqzero.clone();
        pres.relations = p.relations.clone();
        for &(g, e) in &p.skew {
            pres.twists[g as usize] = e;
        }
        pres.comm = p.comm.clone();
        pres.degree_bound = p.maxdeg.unwrap_or(DEFAULT_DEGREE_BOUND);
        Some(pres)
    }
}

impl RingSpecFile {
    pub fn render(&self) -> String {
        self.rings.iter().map(RingSpec::render).collect::<Vec<_>>().join("\n")
    }

    /// The ring a file describes: its last block.
    pub fn primary(&self) -> Option<&RingSpec> {
        self.rings.last()
    }

    pub fn get(&self, name: &str) -> Option<&RingSpec> {
        self.rings.iter().find(|r| r.name == name)
    }

    /// Builds the primary ring. `base` resolves relative group-table paths.
    pub fn build(&self, base: &Path) -> Result<FiniteAlgebra, BuildError> {
        let spec = self.primary().ok_or(BuildError::Empty)?;
        self.build_ring(spec, base, 0)
    }

    pub fn build_named(&self, name: &str, base: &Path) -> Result<FiniteAlgebra, BuildError> {
        let spec = self
            .get(name)
            .ok_or_else(|| BuildError::UnknownRing { ring: name.into(), name: name.into() })?;
        self.build_ring(spec, base, 0)
    }

    fn build_ring(&self, spec: &RingSpec, base: &Path, depth: usize) -> Result<FiniteAlgebra, BuildError> {
        let ring = spec.name.clone();
        let wrap = |source: ConstructError| BuildError::Construct { ring: ring.clone(), source };
        let f = &spec.field;
        let alg = match &spec.body {
            Body::Presentation(_) => {
                let p = spec.presentation().expect("presentation body");
                rewrite::build_algebra(&spec.name, &p).map_err(|e| wrap(e.into()))?
            }
            Body::Group(g) => {
                let table = match g {
                    GroupSpec::Dihedral8 => GroupTable::dihedral8(),
                    GroupSpec::Quaternion8 => GroupTable::quaternion8(),
                    GroupSpec::Cyclic(n) => GroupTable::cyclic(*n).map_err(|e| wrap(e.into()))?,
                    GroupSpec::File(path) => {
                        let full = base.join(path);
                        let text = std::fs::read_to_string(&full).map_err(|source| BuildError::GroupFile {
                            ring: ring.clone(),
                            path: full.display().to_string(),
                            source,
                        })?;
                        GroupTable::parse_cayley(&text).map_err(|e| wrap(e.into()))?
                    }
                };
                constructors::group_algebra(f, &table).map_err(wrap)?
            }
            Body::Matrix(n) => constructors::matrix_algebra(f, *n).map_err(wrap)?,
            Body::Upper(n) => constructors::upper_triangular(f, *n).map_err(wrap)?,
            Body::Chain(k) => constructors::chain_ring(f, *k).map_err(wrap)?,
            Body::Sum(a, b) => {
                let get = |n: &str| {
                    self.get(n).ok_or_else(|| BuildError::UnknownRing { ring: ring.clone(), name: n.into() })
                };
                if depth > self.rings.len() {
                    return Err(BuildError::UnknownRing { ring: ring.clone(), name: a.clone() });
                }
                let x = self.build_ring(get(a)?, base, depth + 1)?;
                let y = self.build_ring(get(b)?, base, depth + 1)?;
                if x.field() != f || y.field() != f {
                    let e = crate::algebra::AlgebraError::FieldMismatch(f.name(), x.field().name());
                    return Err(wrap(e.into()));
                }
                constructors::direct_sum(&x, &y).map_err(wrap)?
            }
        };
        Ok(alg.with_name(spec.name.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX2: &str = r#"
ring "ex2" {
  field F2
  gens u v w
  sqzero u v w
  rel u*v, v*w, w*u
  rel u*w*v + v*u*w, u*w*v + w*v*u
}
"#;

    #[test]
    fn one_line_group_ring() {
        let f = parse(r#"ring "f2d8" { field F2 group D8 }"#).unwrap();
        assert_eq!(f.rings[0].body, Body::Group(GroupSpec::Dihedral8));
        assert_eq!(f.rings[0].field, Field::f2());
    }

    #[test]
    fn ex2_presentation() {
        let f = parse(EX2).unwrap();
        let p = f.primary().unwrap().presentation().unwrap();
        assert_eq!(p.generators, ["u", "v", "w"]);
        assert_eq!(p.sqzero, [0, 1, 2]);
        assert_eq!(p.relations.len(), 5);
        assert_eq!(p.relations[3].len(), 2);
        let alg = f.build(Path::new(".")).unwrap();
        assert_eq!(alg.dim(), 8);
        assert_eq!(alg.name(), "ex2");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("ring \"x\" {\n field F2\n gens u v\n rel u*q\n}").unwrap_err();
        assert_eq!(e, DslError::UnknownGenerator { line: 4, col: 8, name: "q".into() });
        let e = parse("ring \"x\" {\n field F9\n}").unwrap_err();
        assert!(matches!(e, DslError::UnknownField { line: 2, col: 8, .. }));
        let e = parse("ring \"x\" { field F2 gens u\n rel u + }").unwrap_err();
        assert!(matches!(e, DslError::SyntaxError { line: 2, .. }));
        assert!(parse("ring \"x\" { field F2 chain 2 matrix 2 }").is_err());
        assert!(parse("ring \"x\" { field F2 chain 2 ").is_err());
        assert!(parse("ring \"x\" { field F2 chain 2 expect bogus=1 }").is_err());
    }

    #[test]
    fn skew_coefficients() {
        let text = "ring \"ex3\" {\n field F4\n gens u v\n skew v frob\n comm v u a\n rel u^2, v^2\n}";
        let f = parse(text).unwrap();
        let spec = f.primary().unwrap();
        let p = spec.presentation().unwrap();
        assert_eq!(p.twists, [0, 1]);
        assert_eq!(p.comm[0].scalar, Field::f4().generator());
        assert_eq!(parse(&f.render()).unwrap(), f);
        let alg = f.build(Path::new(".")).unwrap();
        assert_eq!(alg.labels(), ["1", "u", "v", "uv"]);
    }

    #[test]
    fn coefficients_and_fields() {
        let text = "ring \"c\" { field GF(3,2,x^2+1)\n gens u\n rel u^3 - (a+2)*u^2 + 2*a*u\n}";
        let f = parse(text).unwrap();
        assert_eq!(f.rings[0].field.size(), 9);
        assert_eq!(parse(&f.render()).unwrap(), f);
    }

    #[test]
    fn sums_reference_earlier_blocks() {
        let text = "ring \"a\" { field F2 chain 2 }\nring \"b\" { field F2 chain 3 }\nring \"s\" { field F2 sum \"a\" \"b\"\n expect order=32, local=false\n}";
        let f = parse(text).unwrap();
        let alg = f.build(Path::new(".")).unwrap();
        assert_eq!(alg.order(), 32);
        assert_eq!(f.primary().unwrap().expect[0], ("order".into(), ExpectValue::Int(32)));
        assert!(parse("ring \"s\" { field F2 sum \"a\" \"b\" }").is_err());
    }
}
