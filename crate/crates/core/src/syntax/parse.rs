//! Grammar, loosest binding first:
//!
//! ```text
//! term   ::= unary (("+" | "(+" bias ")") unary)*      left associative
//! unary  ::= "\" x ":" type "." term | weight "." unary | app
//! app    ::= atom atom*
//! atom   ::= x | n | True | False | "(" term ")" | "D[" term "," term "]"
//!          | "ifz(" term "," term "," term ")" | succ atom | pred atom | Y atom
//! weight ::= n | n "/" n | x
//! bias   ::= x | n "/" n | weight "," weight
//! type   ::= o | Nat | x | "(" type ")" | type "->" type | "!" n type "-o" type
//! ```
//!
//! In `stlc`, `bstlc` and `stdlc` the literal `0` is the empty sum and `+` is
//! the idempotent sum; in `pcfl`, `0` is a numeral and `+` is binary choice.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::{Bias, Term, Type, Weight};
use crate::tropical::{Rational, TropValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dialect {
    Stlc,
    Bstlc,
    Stdlc,
    Pcfl,
}

impl FromStr for Dialect {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "stlc" => Ok(Dialect::Stlc),
            "bstlc" => Ok(Dialect::Bstlc),
            "stdlc" => Ok(Dialect::Stdlc),
            "pcfl" => Ok(Dialect::Pcfl),
            _ => Err(format!("unknown dialect `{s}` (expected stlc, bstlc, stdlc or pcfl)")),
        }
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Dialect::Stlc => "stlc",
            Dialect::Bstlc => "bstlc",
            Dialect::Stdlc => "stdlc",
            Dialect::Pcfl => "pcfl",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at {line}:{col}: {msg}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Backslash,
    Colon,
    Dot,
    Comma,
    Slash,
    LParen,
    ChoiceOpen,
    RParen,
    LBracket,
    RBracket,
    Plus,
    Arrow,
    Lolli,
    Bang,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Eof => write!(f, "end of input"),
            other => write!(f, "{other:?}"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize, usize)>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let at = (line, col);
        let mut adv = 1;
        let tok = match c {
            '\n' => {
                line += 1;
                col = 0;
                None
            }
            c if c.is_whitespace() => None,
            '#' => {
                while i + adv < chars.len() && chars[i + adv] != '\n' {
                    adv += 1;
                }
                None
            }
            '\\' | 'λ' => Some(Tok::Backslash),
            ':' => Some(Tok::Colon),
            '.' => Some(Tok::Dot),
            ',' => Some(Tok::Comma),
            '/' => Some(Tok::Slash),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '+' => Some(Tok::Plus),
            '!' => Some(Tok::Bang),
            '(' if chars.get(i + 1) == Some(&'+') => {
                adv = 2;
                Some(Tok::ChoiceOpen)
            }
            '(' => Some(Tok::LParen),
            '-' if chars.get(i + 1) == Some(&'>') => {
                adv = 2;
                Some(Tok::Arrow)
            }
            '-' if chars.get(i + 1) == Some(&'o') => {
                adv = 2;
                Some(Tok::Lolli)
            }
            c if c.is_ascii_digit() => {
                while i + adv < chars.len() && chars[i + adv].is_ascii_digit() {
                    adv += 1;
                }
                let s: String = chars[i..i + adv].iter().collect();
                let n = s.parse().map_err(|_| SyntaxError { line, col, msg: format!("numeral `{s}` too large") })?;
                Some(Tok::Num(n))
            }
            c if c.is_alphabetic() || c == '_' => {
                while i + adv < chars.len() && (chars[i + adv].is_alphanumeric() || matches!(chars[i + adv], '_' | '\'')) {
                    adv += 1;
                }
                Some(Tok::Ident(chars[i..i + adv].iter().collect()))
            }
            other => return Err(SyntaxError { line, col, msg: format!("unexpected character `{other}`") }),
        };
        if let Some(t) = tok {
            out.push((t, at.0, at.1));
        }
        i += adv;
        col += adv;
    }
    out.push((Tok::Eof, line, col));
    Ok(out)
}

const KEYWORDS: &[&str] = &["succ", "pred", "ifz", "Y", "True", "False", "D"];

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    dialect: Dialect,
}

type PResult<T> = Result<T, SyntaxError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let (_, line, col) = self.toks[self.pos];
        Err(SyntaxError { line, col, msg: msg.into() })
    }

    fn expect(&mut self, t: Tok) -> PResult<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {t}, found {}", self.peek()))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            other => self.err(format!("expected identifier, found {other}")),
        }
    }

    fn pcf(&self) -> bool {
        self.dialect == Dialect::Pcfl
    }

    fn term(&mut self) -> PResult<Term> {
        let first = self.unary()?;
        if !self.pcf() {
            let mut parts = vec![first];
            while *self.peek() == Tok::Plus {
                self.bump();
                parts.push(self.unary()?);
            }
            return Ok(if parts.len() == 1 { parts.pop().unwrap_or(Term::Zero) } else { Term::sum(parts) });
        }
        let mut acc = first;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Term::nd(acc, self.unary()?);
                }
                Tok::ChoiceOpen => {
                    self.bump();
                    let b = self.bias()?;
                    self.expect(Tok::RParen)?;
                    acc = Term::choice(b, acc, self.unary()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn rational(&mut self) -> PResult<Rational> {
        let n = match self.bump() {
            Tok::Num(n) => n,
            other => return self.err(format!("expected number, found {other}")),
        };
        if *self.peek() == Tok::Slash {
            self.bump();
            let d = match self.bump() {
                Tok::Num(d) if d != 0 => d,
                _ => return self.err("expected nonzero denominator"),
            };
            return Ok(Rational::new(BigInt::from(n), BigInt::from(d)));
        }
        Ok(Rational::from_integer(BigInt::from(n)))
    }

    fn weight(&mut self) -> PResult<Weight> {
        match self.peek().clone() {
            Tok::Num(_) => Ok(Weight::Const(TropValue::Rat(self.rational()?))),
            Tok::Ident(s) if s == "inf" => {
                self.bump();
                Ok(Weight::Const(TropValue::Inf))
            }
            Tok::Ident(_) => Ok(Weight::Param(self.ident()?)),
            other => self.err(format!("expected weight, found {other}")),
        }
    }

    fn bias(&mut self) -> PResult<Bias> {
        let first = self.weight()?;
        if *self.peek() == Tok::Comma {
            self.bump();
            return Ok(Bias::Weights(first, self.weight()?));
        }
        match first {
            Weight::Param(p) => Ok(Bias::Param(p)),
            Weight::Const(TropValue::Rat(q)) if q <= Rational::from_integer(1.into()) => Ok(Bias::Prob(q)),
            _ => self.err("probability label must lie in [0, 1]"),
        }
    }

    fn starts_weight(&self) -> bool {
        match (self.peek(), self.peek_at(1)) {
            (Tok::Num(_), Tok::Dot) => true,
            (Tok::Num(_), Tok::Slash) => matches!(self.peek_at(3), Tok::Dot),
            (Tok::Ident(s), Tok::Dot) => !KEYWORDS.contains(&s.as_str()),
            _ => false,
        }
    }

    fn unary(&mut self) -> PResult<Term> {
        if *self.peek() == Tok::Backslash {
            self.bump();
            let x = self.ident()?;
            self.expect(Tok::Colon)?;
            let ty = self.ty()?;
            self.expect(Tok::Dot)?;
            let body = self.term()?;
            return Ok(Term::lam(&x, ty, body));
        }
        if self.starts_weight() {
            let w = self.weight()?;
            self.expect(Tok::Dot)?;
            return Ok(Term::scalar(w, self.unary()?));
        }
        self.app()
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Num(_) | Tok::LParen)
    }

    fn app(&mut self) -> PResult<Term> {
        let mut acc = self.atom()?;
        while self.starts_atom() && !self.starts_weight() {
            acc = Term::app(acc, self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Num(n) => {
                self.bump();
                match (self.pcf(), n) {
                    (true, n) => match u32::try_from(n) {
                        Ok(n) => Ok(Term::Num(n)),
                        Err(_) => self.err(format!("numeral {n} too large")),
                    },
                    (false, 0) => Ok(Term::Zero),
                    (false, _) => self.err("numerals other than 0 need the pcfl dialect"),
                }
            }
            Tok::Ident(s) => match s.as_str() {
                "True" | "False" if self.pcf() => {
                    self.bump();
                    Ok(Term::Num(if s == "True" { 0 } else { 1 }))
                }
                "succ" | "pred" | "Y" => {
                    self.bump();
                    let a = Box::new(self.atom()?);
                    Ok(match s.as_str() {
                        "succ" => Term::Succ(a),
                        "pred" => Term::Pred(a),
                        _ => Term::Fix(a),
                    })
                }
                "ifz" => {
                    self.bump();
                    self.expect(Tok::LParen)?;
                    let c = self.term()?;
                    self.expect(Tok::Comma)?;
                    let t = self.term()?;
                    self.expect(Tok::Comma)?;
                    let e = self.term()?;
                    self.expect(Tok::RParen)?;
                    Ok(Term::Ifz(Box::new(c), Box::new(t), Box::new(e)))
                }
                "D" => {
                    self.bump();
                    self.expect(Tok::LBracket)?;
                    let f = self.term()?;
                    self.expect(Tok::Comma)?;
                    let a = self.term()?;
                    self.expect(Tok::RBracket)?;
                    Ok(Term::dapp(f, a))
                }
                _ => Ok(Term::Var(self.ident()?)),
            },
            other => self.err(format!("expected a term, found {other}")),
        }
    }

    fn ty(&mut self) -> PResult<Type> {
        if *self.peek() == Tok::Bang {
            self.bump();
            let n = match self.bump() {
                Tok::Num(n) => u32::try_from(n).unwrap_or(u32::MAX),
                other => return self.err(format!("expected grade, found {other}")),
            };
            let a = self.ty_atom()?;
            self.expect(Tok::Lolli)?;
            let b = self.ty()?;
            return Ok(Type::graded(n, a, b));
        }
        let a = self.ty_atom()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            return Ok(Type::arrow(a, self.ty()?));
        }
        Ok(a)
    }

    fn ty_atom(&mut self) -> PResult<Type> {
        match self.bump() {
            Tok::LParen => {
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(s) if s == "Nat" => Ok(Type::Nat),
            Tok::Ident(s) => Ok(Type::Ground(s)),
            other => self.err(format!("expected a type, found {other}")),
        }
    }
}

pub fn parse(src: &str, dialect: Dialect) -> Result<Term, SyntaxError> {
    let mut p = Parser { toks: lex(src)?, pos: 0, dialect };
    let t = p.term()?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("unexpected {} after term", p.peek()));
    }
    Ok(t)
}

pub fn parse_type(src: &str) -> Result<Type, SyntaxError> {
    let mut p = Parser { toks: lex(src)?, pos: 0, dialect: Dialect::Stlc };
    let t = p.ty()?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("unexpected {} after type", p.peek()));
    }
    Ok(t)
}

/// Typing context `x1: T1, x2: T2` (empty string gives the empty context).
pub fn parse_context(src: &str) -> Result<Vec<(String, Type)>, SyntaxError> {
    let mut out = Vec::new();
    for part in split_top_level(src) {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (x, ty) = part
            .split_once(':')
            .ok_or_else(|| SyntaxError { line: 1, col: 1, msg: format!("expected `x: T`, found `{part}`") })?;
        out.push((x.trim().to_string(), parse_type(ty)?));
    }
    Ok(out)
}

fn split_top_level(src: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in src.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&src[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&src[start..]);
    out
}
