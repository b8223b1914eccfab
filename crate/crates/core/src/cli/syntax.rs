//! Word expressions.
//!
//! ```text
//! expr    := term (['*'] term)*
//! term    := primary ('~' | '^-1')*
//! primary := 'g' DIGITS | 'e' | '(' expr ')' | '[' expr ',' expr ']'
//!          | '\'' NAME '\'' | 'seq(' BITS ',' BITS ')'
//! ```

use std::fmt;

use thiserror::Error;

use crate::relcalc::{EventuallyPeriodic, Point, XLetter, XWord};
use crate::word::{Generator, Letter, Sign, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("SyntaxError at byte {offset}: expected {}", expected.join(" or "))]
pub struct SyntaxError {
    pub offset: usize,
    pub expected: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("ExpectedGenerators: found point {0}")]
    ExpectedGenerators(String),
    #[error("ExpectedPoints: found generator {0}")]
    ExpectedPoints(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordExpr {
    Empty,
    Gen(Generator),
    Point(Point),
    Inverse(Box<WordExpr>),
    Concat(Vec<WordExpr>),
    Group(Box<WordExpr>),
    Commutator(Box<WordExpr>, Box<WordExpr>),
}

/// A letter of either alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyLetter {
    Gen(Letter),
    Point(XLetter),
}

impl AnyLetter {
    fn inverse(&self) -> AnyLetter {
        match self {
            AnyLetter::Gen(l) => AnyLetter::Gen(l.inverse()),
            AnyLetter::Point(x) => AnyLetter::Point(x.inverse()),
        }
    }
}

impl fmt::Display for AnyLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyLetter::Gen(l) => l.fmt(f),
            AnyLetter::Point(x) => x.fmt(f),
        }
    }
}

impl WordExpr {
    /// The flattened letter sequence, commutators expanded, no reduction.
    pub fn letters(&self) -> Vec<AnyLetter> {
        let mut out = Vec::new();
        self.push_letters(&mut out);
        out
    }

    fn push_letters(&self, out: &mut Vec<AnyLetter>) {
        match self {
            WordExpr::Empty => {}
            WordExpr::Gen(g) => out.push(AnyLetter::Gen(Letter::new(*g, Sign::Pos))),
            WordExpr::Point(p) => out.push(AnyLetter::Point(XLetter::new(p.clone(), Sign::Pos))),
            WordExpr::Inverse(inner) => {
                out.extend(inner.letters().iter().rev().map(AnyLetter::inverse));
            }
            WordExpr::Concat(parts) => parts.iter().for_each(|p| p.push_letters(out)),
            WordExpr::Group(inner) => inner.push_letters(out),
            WordExpr::Commutator(u, v) => {
                let (u, v) = (u.letters(), v.letters());
                out.extend(u.iter().cloned());
                out.extend(v.iter().cloned());
                out.extend(u.iter().rev().map(AnyLetter::inverse));
                out.extend(v.iter().rev().map(AnyLetter::inverse));
            }
        }
    }

    pub fn to_word(&self) -> Result<Word, EvalError> {
        self.letters()
            .into_iter()
            .map(|l| match l {
                AnyLetter::Gen(g) => Ok(g),
                AnyLetter::Point(x) => Err(EvalError::ExpectedGenerators(x.point.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word::new)
    }

    pub fn to_xword(&self) -> Result<XWord, EvalError> {
        self.letters()
            .into_iter()
            .map(|l| match l {
                AnyLetter::Point(x) => Ok(x),
                AnyLetter::Gen(g) => Err(EvalError::ExpectedPoints(g.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(XWord::new)
    }
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordExpr::Empty => f.write_str("e"),
            WordExpr::Gen(g) => write!(f, "g{}", g.index()),
            WordExpr::Point(p) => p.fmt(f),
            WordExpr::Inverse(inner) => match **inner {
                WordExpr::Concat(_) => write!(f, "({inner})~"),
                _ => write!(f, "{inner}~"),
            },
            WordExpr::Concat(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    p.fmt(f)?;
                }
                Ok(())
            }
            WordExpr::Group(inner) => write!(f, "({inner})"),
            WordExpr::Commutator(u, v) => write!(f, "[{u},{v}]"),
        }
    }
}

pub fn parse_word(text: &str) -> Result<WordExpr, SyntaxError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(&["letter", "'*'", "end of input"]));
    }
    Ok(expr)
}

/// Canonical text of a letter sequence: space separated, `~` for inverses,
/// `e` when empty.
pub fn format_letters<L: fmt::Display>(letters: &[L]) -> String {
    if letters.is_empty() {
        return "e".to_string();
    }
    letters
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn format_word(w: &Word) -> String {
    format_letters(w.letters())
}

pub fn format_xword(w: &XWord) -> String {
    format_letters(w.letters())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn is_name_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b == b'-' || b == b'.'
}

impl Parser<'_> {
    fn error(&self, expected: &[&str]) -> SyntaxError {
        SyntaxError {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), SyntaxError> {
        self.skip_ws();
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{s}'")]))
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Some(b'g' | b'e' | b'(' | b'[' | b'\'' | b's'))
    }

    fn expr(&mut self) -> Result<WordExpr, SyntaxError> {
        let mut parts = vec![self.term()?];
        loop {
            self.skip_ws();
            if self.eat("*") || self.starts_primary() {
                parts.push(self.term()?);
            } else {
                break;
            }
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            WordExpr::Concat(parts)
        })
    }

    fn term(&mut self) -> Result<WordExpr, SyntaxError> {
        let mut e = self.primary()?;
        loop {
            if self.eat("~") || self.eat("^-1") {
                e = WordExpr::Inverse(Box::new(e));
            } else {
                return Ok(e);
            }
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn bits(&mut self) -> Vec<bool> {
        let mut out = Vec::new();
        while let Some(b @ (b'0' | b'1')) = self.peek() {
            out.push(b == b'1');
            self.pos += 1;
        }
        out
    }

    fn primary(&mut self) -> Result<WordExpr, SyntaxError> {
        const START: &[&str] = &["generator", "'e'", "'('", "'['", "point"];
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(b'g') => {
                self.pos += 1;
                let digits = self.digits();
                let gen = digits.parse::<u32>().ok().and_then(Generator::new);
                match gen {
                    Some(g) => Ok(WordExpr::Gen(g)),
                    None => {
                        self.pos = start + 1;
                        Err(self.error(&["generator index >= 1"]))
                    }
                }
            }
            Some(b'e') if !self.src.get(self.pos + 1).is_some_and(|&b| is_name_byte(b)) => {
                self.pos += 1;
                Ok(WordExpr::Empty)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(")")?;
                Ok(WordExpr::Group(Box::new(inner)))
            }
            Some(b'[') => {
                self.pos += 1;
                let u = self.expr()?;
                self.expect(",")?;
                let v = self.expr()?;
                self.expect("]")?;
                Ok(WordExpr::Commutator(Box::new(u), Box::new(v)))
            }
            Some(b'\'') => {
                self.pos += 1;
                let name_start = self.pos;
                while self.peek().is_some_and(is_name_byte) {
                    self.pos += 1;
                }
                if self.pos == name_start {
                    return Err(self.error(&["atom name"]));
                }
                let name = std::str::from_utf8(&self.src[name_start..self.pos]).expect("ascii");
                let point = Point::atom(name);
                if !self.eat("'") {
                    return Err(self.error(&["'''"]));
                }
                Ok(WordExpr::Point(point))
            }
            Some(b's') if self.eat("seq(") => {
                let prefix = self.bits();
                if !self.eat(",") {
                    return Err(self.error(&["bit", "','"]));
                }
                let period_at = self.pos;
                let period = self.bits();
                if !self.eat(")") {
                    return Err(self.error(&["bit", "')'"]));
                }
                EventuallyPeriodic::new(prefix, period)
                    .map(|s| WordExpr::Point(Point::Seq(s)))
                    .map_err(|_| SyntaxError {
                        offset: period_at,
                        expected: vec!["non-empty period".into()],
                    })
            }
            _ => Err(self.error(START)),
        }
    }
}
