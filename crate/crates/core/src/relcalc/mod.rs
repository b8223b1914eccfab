//! The free group `F(X)` over a point universe, and the coset relation
//! `F(E)` given by the normal subgroup generated by `x^-1 y` for `x E y`.
//!
//! The normal subgroup is never built. Instead every word is brought to a
//! normal form with no adjacent pair `x y^-1` or `x^-1 y` where `x E y`, by
//! deleting the leftmost such pair until none remains. Two normal forms are
//! equivalent iff they have the same length and are pointwise related with
//! matching signs.

mod point;
mod relation;

use std::fmt;

use thiserror::Error;

pub use point::{EventuallyPeriodic, Point};
pub use relation::{EquivRelation, Partition};

use crate::word::{stack_reduce, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelError {
    #[error("point {0} is outside the relation's universe")]
    UniverseMismatch(String),
    #[error("word is not in normal form at position {0}")]
    NotNormal(usize),
    #[error("the relation has no computable class representatives")]
    NoCanonicalRep,
    #[error("sequence period must be non-empty")]
    EmptyPeriod,
    #[error("expected a bit string, found {0:?}")]
    BadBits(String),
    #[error("atom {0:?} appears in more than one block")]
    OverlappingBlocks(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XLetter {
    pub point: Point,
    pub sign: Sign,
}

impl XLetter {
    pub fn new(point: Point, sign: Sign) -> XLetter {
        XLetter { point, sign }
    }

    pub fn inverse(&self) -> XLetter {
        XLetter {
            point: self.point.clone(),
            sign: self.sign.flip(),
        }
    }
}

impl fmt::Display for XLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "{}", self.point),
            Sign::Neg => write!(f, "{}~", self.point),
        }
    }
}

fn write_xletters(f: &mut fmt::Formatter<'_>, letters: &[XLetter]) -> fmt::Result {
    if letters.is_empty() {
        return write!(f, "e");
    }
    for (i, l) in letters.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

/// A word over points; may be unreduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XWord(Vec<XLetter>);

impl XWord {
    pub fn new(letters: Vec<XLetter>) -> XWord {
        XWord(letters)
    }

    pub fn empty() -> XWord {
        XWord(Vec::new())
    }

    pub fn letters(&self) -> &[XLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<XLetter>> for XWord {
    fn from(letters: Vec<XLetter>) -> XWord {
        XWord(letters)
    }
}

impl fmt::Display for XWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_xletters(f, &self.0)
    }
}

/// A word with no adjacent `E`-cancelling pair.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NormalWord(Vec<XLetter>);

impl NormalWord {
    pub fn letters(&self) -> &[XLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_xword(&self) -> XWord {
        XWord(self.0.clone())
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_xletters(f, &self.0)
    }
}

fn check_word(e: &EquivRelation, w: &XWord) -> Result<(), RelError> {
    w.0.iter().try_for_each(|l| e.check_point(&l.point))
}

fn e_cancels(e: &EquivRelation, a: &XLetter, b: &XLetter) -> bool {
    a.sign != b.sign && e.related_unchecked(&a.point, &b.point)
}

pub fn e_related(e: &EquivRelation, x: &Point, y: &Point) -> Result<bool, RelError> {
    e.check_point(x)?;
    e.check_point(y)?;
    Ok(e.related_unchecked(x, y))
}

/// Leftmost-first deletion of `E`-cancelling pairs. A left-to-right stack
/// scan performs exactly the same deletions: the stack never holds a
/// cancelling pair, so the leftmost one always involves the incoming letter.
pub fn e_normal_form(e: &EquivRelation, w: &XWord) -> Result<NormalWord, RelError> {
    check_word(e, w)?;
    Ok(NormalWord(stack_reduce(w.0.iter().cloned(), |a, b| {
        e_cancels(e, a, b)
    })))
}

fn pointwise_equal(e: &EquivRelation, u: &[XLetter], v: &[XLetter]) -> bool {
    u.len() == v.len()
        && u.iter()
            .zip(v)
            .all(|(a, b)| a.sign == b.sign && e.related_unchecked(&a.point, &b.point))
}

/// Decides `u F(E) v`.
pub fn fe_equivalent(e: &EquivRelation, u: &XWord, v: &XWord) -> Result<bool, RelError> {
    let nu = e_normal_form(e, u)?;
    let nv = e_normal_form(e, v)?;
    Ok(pointwise_equal(e, &nu.0, &nv.0))
}

/// Product in `F(X)`: concatenate, then cancel identical points only.
pub fn fx_multiply(u: &XWord, v: &XWord) -> XWord {
    XWord(stack_reduce(u.0.iter().chain(&v.0).cloned(), |a, b| {
        a.sign != b.sign && a.point == b.point
    }))
}

pub fn fx_invert(u: &XWord) -> XWord {
    XWord(stack_reduce(
        u.0.iter().rev().map(XLetter::inverse),
        |a, b| a.sign != b.sign && a.point == b.point,
    ))
}

pub fn embed_point(x: &Point) -> XWord {
    XWord(vec![XLetter::new(x.clone(), Sign::Pos)])
}

/// Equality in the disjoint union of the powers of `E x {+1,-1}`, for words
/// that are already normal. Serves as an independent definition to compare
/// with [`fe_equivalent`].
pub fn product_view_equal(e: &EquivRelation, u: &XWord, v: &XWord) -> Result<bool, RelError> {
    for w in [u, v] {
        check_word(e, w)?;
        if let Some(i) = w.0.windows(2).position(|p| e_cancels(e, &p[0], &p[1])) {
            return Err(RelError::NotNormal(i));
        }
    }
    Ok(u.len() == v.len()
        && u.0
            .iter()
            .zip(&v.0)
            .all(|(a, b)| a.sign == b.sign && e.related_unchecked(&a.point, &b.point)))
}

/// Normal form with every point replaced by its class representative. Two
/// words are `F(E)`-equivalent iff their quotient words are identical.
pub fn quotient_word(e: &EquivRelation, u: &XWord) -> Result<XWord, RelError> {
    if matches!(e, EquivRelation::E0) {
        return Err(RelError::NoCanonicalRep);
    }
    let nf = e_normal_form(e, u)?;
    nf.0.iter()
        .map(|l| Ok(XLetter::new(e.representative(&l.point)?, l.sign)))
        .collect::<Result<Vec<_>, _>>()
        .map(XWord)
}
