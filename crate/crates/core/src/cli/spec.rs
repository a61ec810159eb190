//! Ring and bimodule specifications.
//!
//! ```text
//! ring   := "Z" "(" int ")" | "GF" "(" int "," poly ")" | "Mat" "(" int "," ring ")"
//!         | "Prod" "(" ring "," ring ")" | "TrivExt" "(" ring "," module ")"
//!         | "Table" "(" name ")"
//! module := "Reg" "(" ring ")" | "Twist" "(" ring "," endo ")" | "Zero" "(" ring ")"
//! endo   := "id" | "frobenius" | "swap" | "conj" "(" element ")" | "[" int {"," int} "]"
//! element:= int | "[" "[" int {"," int} "]" {"," "[" ... "]"} "]"
//! ```
//!
//! `Table(F2xy)` names the built-in table of `F_2[x,y]/(x,y)^2`; any other
//! table name is read as a file path in the import format.

use std::fmt;

use serde::Serialize;

use crate::ring::{is_prime, poly_label};
use crate::torsion::parse_poly;

/// Byte range in the source text. Spans never affect equality.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Span {}

impl Span {
    fn join(self, other: Span) -> Span {
        Span {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecErrorKind {
    Syntax,
    Semantic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("{} error at {}..{}: {message}", match kind { SpecErrorKind::Syntax => "syntax", SpecErrorKind::Semantic => "semantic" }, span.start, span.end)]
pub struct SpecError {
    pub kind: SpecErrorKind,
    pub message: String,
    pub span: Span,
}

impl SpecError {
    fn syntax(span: Span, message: impl Into<String>) -> Self {
        SpecError {
            kind: SpecErrorKind::Syntax,
            message: message.into(),
            span,
        }
    }

    fn semantic(span: Span, message: impl Into<String>) -> Self {
        SpecError {
            kind: SpecErrorKind::Semantic,
            message: message.into(),
            span,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Number {
    pub value: u64,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    pub kind: RingKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingKind {
    Cyclic(Number),
    /// Modulus coefficients lowest degree first, reduced mod `p`.
    Galois { p: Number, modulus: Vec<u64> },
    Matrix { k: Number, base: Box<RingSpec> },
    Product(Box<RingSpec>, Box<RingSpec>),
    TrivExt { base: Box<RingSpec>, module: Box<ModuleSpec> },
    Table(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleSpec {
    pub kind: ModuleKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleKind {
    Regular(RingSpec),
    Twisted(RingSpec, EndoSpec),
    Zero(RingSpec),
}

impl ModuleSpec {
    pub fn ring(&self) -> &RingSpec {
        match &self.kind {
            ModuleKind::Regular(r) | ModuleKind::Twisted(r, _) | ModuleKind::Zero(r) => r,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoSpec {
    pub kind: EndoKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndoKind {
    Identity,
    Frobenius,
    Swap,
    Conjugation(ElementSpec),
    Images(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementSpec {
    Index(u64),
    /// Matrix entries as base-ring indices.
    Entries(Vec<Vec<u64>>),
}

/// Top-level parse result: a ring, possibly a trivial extension.
pub type SpecAst = RingSpec;

/// Parses and validates a ring specification.
pub fn parse_spec(text: &str) -> Result<SpecAst, SpecError> {
    let mut cur = Cursor { src: text, pos: 0 };
    let ring = cur.ring()?;
    cur.skip_ws();
    if cur.pos < text.len() {
        return Err(SpecError::syntax(cur.here(), "trailing input"));
    }
    validate(&ring)?;
    Ok(ring)
}

/// Parses a standalone module specification.
pub fn parse_module_spec(text: &str) -> Result<ModuleSpec, SpecError> {
    let mut cur = Cursor { src: text, pos: 0 };
    let module = cur.module()?;
    cur.skip_ws();
    if cur.pos < text.len() {
        return Err(SpecError::syntax(cur.here(), "trailing input"));
    }
    validate_module(&module)?;
    Ok(module)
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn here(&self) -> Span {
        let len = self.peek().map_or(0, char::len_utf8);
        Span {
            start: self.pos,
            end: self.pos + len,
        }
    }

    fn expect(&mut self, c: char) -> Result<Span, SpecError> {
        self.skip_ws();
        match self.peek() {
            Some(d) if d == c => {
                let span = self.here();
                self.pos += 1;
                Ok(span)
            }
            Some(d) => Err(SpecError::syntax(self.here(), format!("expected {c:?}, found {d:?}"))),
            None => Err(SpecError::syntax(self.here(), format!("expected {c:?}, found end of input"))),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(String, Span), SpecError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos || self.src.as_bytes()[start].is_ascii_digit() {
            self.pos = start;
            return Err(SpecError::syntax(self.here(), "expected a name"));
        }
        Ok((self.src[start..self.pos].to_string(), Span { start, end: self.pos }))
    }

    fn number(&mut self) -> Result<Number, SpecError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let span = Span { start, end: self.pos };
        if start == self.pos {
            return Err(SpecError::syntax(self.here(), "expected an integer"));
        }
        let value = self.src[start..self.pos]
            .parse()
            .map_err(|_| SpecError::syntax(span, "integer out of range"))?;
        Ok(Number { value, span })
    }

    /// Raw text up to the `)` closing the current argument list.
    fn raw_argument(&mut self) -> Result<(String, Span), SpecError> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0usize;
        while let Some(c) = self.peek() {
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => break,
                ')' => depth -= 1,
                ',' if depth == 0 => break,
                _ => {}
            }
            self.pos += c.len_utf8();
        }
        let span = Span { start, end: self.pos };
        let text = self.src[start..self.pos].trim().to_string();
        if text.is_empty() {
            return Err(SpecError::syntax(span, "expected a polynomial"));
        }
        Ok((text, span))
    }

    fn table_name(&mut self) -> Result<String, SpecError> {
        self.skip_ws();
        if self.peek() == Some('"') {
            let start = self.pos;
            self.pos += 1;
            let body = &self.src[self.pos..];
            let close = body
                .find('"')
                .ok_or_else(|| SpecError::syntax(Span { start, end: self.src.len() }, "unterminated string"))?;
            let name = body[..close].to_string();
            self.pos += close + 1;
            Ok(name)
        } else {
            Ok(self.ident()?.0)
        }
    }

    fn ring(&mut self) -> Result<RingSpec, SpecError> {
        let (head, head_span) = self.ident()?;
        self.expect('(')?;
        let kind = match head.as_str() {
            "Z" => RingKind::Cyclic(self.number()?),
            "GF" => {
                let p = self.number()?;
                self.expect(',')?;
                if !is_prime(p.value) {
                    return Err(SpecError::semantic(p.span, format!("{} is not prime", p.value)));
                }
                let (text, span) = self.raw_argument()?;
                let modulus = parse_poly(&text, p.value).map_err(|e| SpecError::syntax(span, e.to_string()))?;
                if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
                    return Err(SpecError::semantic(span, format!("modulus {text} must be monic of positive degree")));
                }
                RingKind::Galois { p, modulus }
            }
            "Mat" => {
                let k = self.number()?;
                self.expect(',')?;
                RingKind::Matrix {
                    k,
                    base: Box::new(self.ring()?),
                }
            }
            "Prod" => {
                let left = self.ring()?;
                self.expect(',')?;
                RingKind::Product(Box::new(left), Box::new(self.ring()?))
            }
            "TrivExt" => {
                let base = self.ring()?;
                self.expect(',')?;
                RingKind::TrivExt {
                    base: Box::new(base),
                    module: Box::new(self.module()?),
                }
            }
            "Table" => RingKind::Table(self.table_name()?),
            other => return Err(SpecError::syntax(head_span, format!("unknown ring constructor {other:?}"))),
        };
        let close = self.expect(')')?;
        Ok(RingSpec {
            kind,
            span: head_span.join(close),
        })
    }

    fn module(&mut self) -> Result<ModuleSpec, SpecError> {
        let (head, head_span) = self.ident()?;
        self.expect('(')?;
        let kind = match head.as_str() {
            "Reg" => ModuleKind::Regular(self.ring()?),
            "Zero" => ModuleKind::Zero(self.ring()?),
            "Twist" => {
                let ring = self.ring()?;
                self.expect(',')?;
                ModuleKind::Twisted(ring, self.endo()?)
            }
            other => return Err(SpecError::syntax(head_span, format!("unknown module constructor {other:?}"))),
        };
        let close = self.expect(')')?;
        Ok(ModuleSpec {
            kind,
            span: head_span.join(close),
        })
    }

    fn int_list(&mut self) -> Result<(Vec<u64>, Span), SpecError> {
        let open = self.expect('[')?;
        let mut items = Vec::new();
        if !self.eat(']') {
            loop {
                items.push(self.number()?.value);
                if self.eat(']') {
                    break;
                }
                self.expect(',')?;
            }
        }
        Ok((items, Span { start: open.start, end: self.pos }))
    }

    fn endo(&mut self) -> Result<EndoSpec, SpecError> {
        self.skip_ws();
        if self.peek() == Some('[') {
            let (images, span) = self.int_list()?;
            return Ok(EndoSpec {
                kind: EndoKind::Images(images),
                span,
            });
        }
        let (name, span) = self.ident()?;
        let kind = match name.as_str() {
            "id" => EndoKind::Identity,
            "frobenius" => EndoKind::Frobenius,
            "swap" => EndoKind::Swap,
            "conj" => {
                self.expect('(')?;
                let element = self.element()?;
                let close = self.expect(')')?;
                return Ok(EndoSpec {
                    kind: EndoKind::Conjugation(element),
                    span: span.join(close),
                });
            }
            other => return Err(SpecError::syntax(span, format!("unknown endomorphism {other:?}"))),
        };
        Ok(EndoSpec { kind, span })
    }

    fn element(&mut self) -> Result<ElementSpec, SpecError> {
        self.skip_ws();
        if self.peek() != Some('[') {
            return Ok(ElementSpec::Index(self.number()?.value));
        }
        self.expect('[')?;
        let mut rows = Vec::new();
        loop {
            rows.push(self.int_list()?.0);
            if self.eat(']') {
                break;
            }
            self.expect(',')?;
        }
        Ok(ElementSpec::Entries(rows))
    }
}

fn validate(ring: &RingSpec) -> Result<(), SpecError> {
    match &ring.kind {
        RingKind::Cyclic(n) if n.value == 0 => Err(SpecError::semantic(n.span, "Z(0) is not finite")),
        RingKind::Cyclic(_) | RingKind::Galois { .. } | RingKind::Table(_) => Ok(()),
        RingKind::Matrix { k, base } => {
            if k.value == 0 {
                return Err(SpecError::semantic(k.span, "matrix size must be positive"));
            }
            validate(base)
        }
        RingKind::Product(l, r) => {
            validate(l)?;
            validate(r)
        }
        RingKind::TrivExt { base, module } => {
            validate(base)?;
            validate_module(module)?;
            if module.ring() != base.as_ref() {
                return Err(SpecError::semantic(
                    module.ring().span,
                    format!("module is over {} but the base ring is {}", module.ring(), base),
                ));
            }
            Ok(())
        }
    }
}

fn validate_module(module: &ModuleSpec) -> Result<(), SpecError> {
    let ring = module.ring();
    validate(ring)?;
    let ModuleKind::Twisted(_, endo) = &module.kind else {
        return Ok(());
    };
    match &endo.kind {
        EndoKind::Frobenius => match &ring.kind {
            RingKind::Galois { .. } => Ok(()),
            RingKind::Cyclic(n) if is_prime(n.value) => Ok(()),
            _ => Err(SpecError::semantic(endo.span, format!("frobenius needs a Galois field, not {ring}"))),
        },
        EndoKind::Swap => match &ring.kind {
            RingKind::Product(l, r) if l == r => Ok(()),
            _ => Err(SpecError::semantic(
                endo.span,
                format!("swap needs a product of two identical factors, not {ring}"),
            )),
        },
        EndoKind::Conjugation(ElementSpec::Entries(rows)) => match &ring.kind {
            RingKind::Matrix { k, .. } if rows.len() as u64 == k.value && rows.iter().all(|r| r.len() as u64 == k.value) => Ok(()),
            _ => Err(SpecError::semantic(endo.span, format!("matrix entries do not fit {ring}"))),
        },
        _ => Ok(()),
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RingKind::Cyclic(n) => write!(f, "Z({})", n.value),
            RingKind::Galois { p, modulus } => write!(f, "GF({}, {})", p.value, poly_label(modulus)),
            RingKind::Matrix { k, base } => write!(f, "Mat({}, {})", k.value, base),
            RingKind::Product(l, r) => write!(f, "Prod({l}, {r})"),
            RingKind::TrivExt { base, module } => write!(f, "TrivExt({base}, {module})"),
            RingKind::Table(name) if is_plain_name(name) => write!(f, "Table({name})"),
            RingKind::Table(name) => write!(f, "Table({name:?})"),
        }
    }
}

fn is_plain_name(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ModuleKind::Regular(r) => write!(f, "Reg({r})"),
            ModuleKind::Twisted(r, e) => write!(f, "Twist({r}, {e})"),
            ModuleKind::Zero(r) => write!(f, "Zero({r})"),
        }
    }
}

fn join_ints(items: &[u64]) -> String {
    items.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for EndoSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            EndoKind::Identity => f.write_str("id"),
            EndoKind::Frobenius => f.write_str("frobenius"),
            EndoKind::Swap => f.write_str("swap"),
            EndoKind::Conjugation(ElementSpec::Index(i)) => write!(f, "conj({i})"),
            EndoKind::Conjugation(ElementSpec::Entries(rows)) => {
                let rows: Vec<String> = rows.iter().map(|r| format!("[{}]", join_ints(r))).collect();
                write!(f, "conj([{}])", rows.join(", "))
            }
            EndoKind::Images(images) => write!(f, "[{}]", join_ints(images)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_instances() {
        let s = parse_spec("TrivExt(Z(4), Reg(Z(4)))").unwrap();
        assert!(matches!(s.kind, RingKind::TrivExt { .. }));
        assert_eq!(s.to_string(), "TrivExt(Z(4), Reg(Z(4)))");
        let s = parse_spec("TrivExt(Prod(Z(2),Z(2)), Twist(Prod(Z(2),Z(2)), swap))").unwrap();
        assert_eq!(s.to_string(), "TrivExt(Prod(Z(2), Z(2)), Twist(Prod(Z(2), Z(2)), swap))");
        assert_eq!(s.span.start, 0);
        assert_eq!(s.span.end, 54);
    }

    #[test]
    fn galois_requires_prime() {
        let err = parse_spec("GF(4, x^2+x+1)").unwrap_err();
        assert_eq!(err.kind, SpecErrorKind::Semantic);
        assert!(err.message.contains("4 is not prime"));
        assert_eq!((err.span.start, err.span.end), (3, 4));
        let ok = parse_spec("GF( 2 , x^2 + x + 1 )").unwrap();
        assert_eq!(ok, parse_spec("GF(2,x^2+x+1)").unwrap());
    }

    #[test]
    fn semantic_errors() {
        assert!(parse_spec("TrivExt(Z(4), Twist(Z(4), frobenius))").is_err());
        assert!(parse_spec("TrivExt(Z(2), Twist(Z(2), frobenius))").is_ok());
        assert!(parse_spec("TrivExt(Z(4), Reg(Z(2)))").is_err());
        assert!(parse_spec("TrivExt(Prod(Z(2),Z(3)), Twist(Prod(Z(2),Z(3)), swap))").is_err());
        assert!(parse_spec("GF(2, x^2)").is_ok());
        assert!(parse_spec("GF(3, 2x^2+1)").is_err());
        assert!(parse_spec("Z(0)").is_err());
    }

    #[test]
    fn syntax_errors() {
        for bad in ["Z(4", "Z(4))", "Q(4)", "Mat(2 Z(2))", "TrivExt(Z(2), Foo(Z(2)))", "", "Z()"] {
            let err = parse_spec(bad).unwrap_err();
            assert_eq!(err.kind, SpecErrorKind::Syntax, "{bad}");
        }
    }

    #[test]
    fn endomorphism_forms() {
        let s = parse_spec("TrivExt(Mat(2,Z(2)), Twist(Mat(2,Z(2)), conj([[1,1],[0,1]])))").unwrap();
        assert_eq!(s.to_string(), "TrivExt(Mat(2, Z(2)), Twist(Mat(2, Z(2)), conj([[1, 1], [0, 1]])))");
        let s = parse_spec("TrivExt(Z(3), Twist(Z(3), [0,1,2]))").unwrap();
        assert_eq!(parse_spec(&s.to_string()).unwrap(), s);
        let t = parse_spec("Table(\"some/path.table\")").unwrap();
        assert_eq!(t.to_string(), "Table(\"some/path.table\")");
    }
}
