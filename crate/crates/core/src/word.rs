//! Words in free groups on positive-integer-indexed generators `g1, g2, ...`.
//!
//! [`Word`] is an arbitrary (possibly unreduced) letter sequence, [`ReducedWord`]
//! is a freely reduced one. Every operation returns a fresh value.

use std::fmt;

/// Exponent sign of a letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// A generator `g_n`, `n >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(u32);

impl Generator {
    pub fn new(index: u32) -> Option<Generator> {
        (index >= 1).then_some(Generator(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Generator,
    pub sign: Sign,
}

impl Letter {
    pub fn new(gen: Generator, sign: Sign) -> Letter {
        Letter { gen, sign }
    }

    /// `g_index`. Panics if `index == 0`.
    pub fn pos(index: u32) -> Letter {
        Letter::new(
            Generator::new(index).expect("generator index must be >= 1"),
            Sign::Pos,
        )
    }

    /// `g_index^-1`. Panics if `index == 0`.
    pub fn neg(index: u32) -> Letter {
        Letter::new(
            Generator::new(index).expect("generator index must be >= 1"),
            Sign::Neg,
        )
    }

    pub fn index(self) -> u32 {
        self.gen.index()
    }

    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            sign: self.sign.flip(),
        }
    }

    /// True iff `self` followed by `other` is `x x^-1` or `x^-1 x`.
    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "g{}", self.index()),
            Sign::Neg => write!(f, "g{}~", self.index()),
        }
    }
}

/// Single left-to-right stack scan: push, or pop when the top cancels the
/// incoming item. Shared by every word type in the crate.
pub(crate) fn stack_reduce<T, I, F>(items: I, mut cancels: F) -> Vec<T>
where
    I: IntoIterator<Item = T>,
    F: FnMut(&T, &T) -> bool,
{
    let mut stack: Vec<T> = Vec::new();
    for item in items {
        match stack.last() {
            Some(top) if cancels(top, &item) => {
                stack.pop();
            }
            _ => stack.push(item),
        }
    }
    stack
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    if letters.is_empty() {
        return write!(f, "e");
    }
    for (i, l) in letters.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

/// A finite, possibly unreduced, sequence of letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| !p[0].cancels(p[1]))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Word {
        Word(letters)
    }
}

impl From<ReducedWord> for Word {
    fn from(w: ReducedWord) -> Word {
        Word(w.0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord(Vec<Letter>);

impl ReducedWord {
    pub fn identity() -> ReducedWord {
        ReducedWord(Vec::new())
    }

    /// Accepts `letters` only if they are already freely reduced.
    pub fn from_reduced(letters: Vec<Letter>) -> Option<ReducedWord> {
        let w = Word(letters);
        w.is_reduced().then_some(ReducedWord(w.0))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index occurring, 0 for the identity.
    pub fn max_index(&self) -> u32 {
        self.0.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    pub fn to_word(&self) -> Word {
        Word(self.0.clone())
    }

    pub fn inverse(&self) -> ReducedWord {
        // The inverse of a reduced word is reduced.
        ReducedWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &ReducedWord) -> ReducedWord {
        multiply_reduced(self, other)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

/// The unique freely reduced form of `w`.
pub fn free_reduce(w: &Word) -> ReducedWord {
    ReducedWord(stack_reduce(w.0.iter().copied(), |a, b| a.cancels(*b)))
}

pub fn concat(u: &Word, v: &Word) -> Word {
    let mut letters = Vec::with_capacity(u.len() + v.len());
    letters.extend_from_slice(&u.0);
    letters.extend_from_slice(&v.0);
    Word(letters)
}

/// Letters reversed, signs flipped.
pub fn invert(w: &Word) -> Word {
    Word(w.0.iter().rev().map(|l| l.inverse()).collect())
}

pub fn multiply_reduced(u: &ReducedWord, v: &ReducedWord) -> ReducedWord {
    // Only the junction can cancel, so peel matching letters off the seam.
    let mut overlap = 0;
    while overlap < u.len() && overlap < v.len() && u.0[u.len() - 1 - overlap].cancels(v.0[overlap])
    {
        overlap += 1;
    }
    let mut letters = Vec::with_capacity(u.len() + v.len() - 2 * overlap);
    letters.extend_from_slice(&u.0[..u.len() - overlap]);
    letters.extend_from_slice(&v.0[overlap..]);
    ReducedWord(letters)
}

/// Number of letters `g_k^{±1}` in `w`.
pub fn occurrence_count(w: &ReducedWord, k: u32) -> usize {
    w.0.iter().filter(|l| l.index() == k).count()
}

/// Deletes every letter of index greater than `n` and reduces. `n = 0`
/// yields the identity.
pub fn project(w: &ReducedWord, n: u32) -> ReducedWord {
    if w.max_index() <= n {
        return w.clone();
    }
    ReducedWord(stack_reduce(
        w.0.iter().copied().filter(|l| l.index() <= n),
        |a, b| a.cancels(*b),
    ))
}

/// `u v u^-1 v^-1`, reduced.
pub fn commutator(u: &ReducedWord, v: &ReducedWord) -> ReducedWord {
    multiply_reduced(
        &multiply_reduced(u, v),
        &multiply_reduced(&u.inverse(), &v.inverse()),
    )
}
