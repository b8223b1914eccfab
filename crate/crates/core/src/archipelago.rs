//! Kernel test for the map from the earring group onto the loops of the
//! harmonic archipelago, and the branch-encoding gadget that sends sequences
//! of binary sequences to earring elements.
//!
//! A coherent sequence `(w_n)` lies in the kernel iff for some `N` and every
//! `n >= N`, replacing each `g_i` with `i < N` by `g_N` trivializes `w_n`.
//! As in [`crate::earring`], all verdicts are exact for the truncation only.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::earring::{seq_invert, seq_multiply, EarringError, TruncatedCoherentSequence};
use crate::word::{stack_reduce, Generator, Letter, ReducedWord, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelVerdict {
    /// Least `N` for which the substitution condition holds on every level
    /// `N..=D` of the truncation.
    Witnessed(u32),
    /// No `N <= D` works at this depth.
    NoWitness { depth: u32 },
}

impl KernelVerdict {
    pub fn is_witnessed(self) -> bool {
        matches!(self, KernelVerdict::Witnessed(_))
    }
}

/// Replaces every letter of index `< n` by `g_n` with the same sign, then
/// reduces. This is a homomorphism of free groups.
pub fn collapse_substitute(w: &ReducedWord, n: u32) -> ReducedWord {
    let target = match Generator::new(n) {
        Some(g) => g,
        None => return w.clone(),
    };
    let letters = stack_reduce(
        w.letters().iter().map(|l| {
            if l.index() < n {
                Letter::new(target, l.sign)
            } else {
                *l
            }
        }),
        |a, b| a.cancels(*b),
    );
    ReducedWord::from_reduced(letters).expect("stack scan output is reduced")
}

fn collapses_from(a: &TruncatedCoherentSequence, n: u32) -> bool {
    // Later levels carry more letters, so they are the likeliest to fail.
    (n.max(1)..=a.depth())
        .rev()
        .all(|m| collapse_substitute(a.level(m).expect("m <= depth"), n).is_identity())
}

pub fn ker_theta_scan(a: &TruncatedCoherentSequence) -> KernelVerdict {
    (1..=a.depth()).find(|&n| collapses_from(a, n)).map_or(
        KernelVerdict::NoWitness { depth: a.depth() },
        KernelVerdict::Witnessed,
    )
}

/// Re-checks a verdict directly against the substitution condition.
pub fn verify_verdict(a: &TruncatedCoherentSequence, verdict: KernelVerdict) -> bool {
    match verdict {
        KernelVerdict::Witnessed(n) => {
            n >= 1
                && n <= a.depth()
                && collapses_from(a, n)
                && (1..n).all(|m| !collapses_from(a, m))
        }
        KernelVerdict::NoWitness { depth } => {
            depth == a.depth() && (1..=depth).all(|m| !collapses_from(a, m))
        }
    }
}

/// Two loops are homotopic in the archipelago iff `a^-1 b` is in the kernel.
pub fn ha_equivalent(
    a: &TruncatedCoherentSequence,
    b: &TruncatedCoherentSequence,
) -> Result<KernelVerdict, EarringError> {
    Ok(ker_theta_scan(&seq_multiply(&seq_invert(a), b)?))
}

/// Cantor pairing `(x + y)(x + y + 1)/2 + y`, or `None` on overflow.
pub fn cantor_pair(x: u64, y: u64) -> Option<u64> {
    let s = x.checked_add(y)?;
    let t = s.checked_mul(s.checked_add(1)?)? / 2;
    t.checked_add(y)
}

/// The `i`-th (0-based) element of the block `A^p = { pair(p-1, i) + 1 }`.
pub fn block_element(p: u64, i: u64) -> Option<u64> {
    assert!(p >= 1, "blocks are indexed from 1");
    cantor_pair(p - 1, i)?.checked_add(1)
}

/// `(a_p, b_p)`, the two smallest members of `A^p`.
pub fn block_pair(p: u64) -> (u64, u64) {
    (
        block_element(p, 0).expect("small block index"),
        block_element(p, 1).expect("small block index"),
    )
}

/// `A^p` intersected with `[1, bound]`, increasing.
pub fn partition_block(p: u64, bound: u64) -> Vec<u64> {
    (0..)
        .map(|i| block_element(p, i))
        .take_while(|v| matches!(v, Some(v) if *v <= bound))
        .flatten()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("branch prefix may only contain '0' and '1', found {found:?} at offset {offset}")]
pub struct BranchPrefixError {
    pub offset: usize,
    pub found: char,
}

/// A finite truncation of a point of the Cantor space.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BranchPrefix(Vec<bool>);

impl BranchPrefix {
    pub fn new(bits: Vec<bool>) -> BranchPrefix {
        BranchPrefix(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn prefix(&self, n: usize) -> BranchPrefix {
        BranchPrefix(self.0[..n.min(self.0.len())].to_vec())
    }
}

impl FromStr for BranchPrefix {
    type Err = BranchPrefixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.char_indices()
            .map(|(offset, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                found => Err(BranchPrefixError { offset, found }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BranchPrefix)
    }
}

impl fmt::Display for BranchPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Position of a binary string in length-then-lexicographic order
/// (`"" -> 0, "0" -> 1, "1" -> 2, "00" -> 3, ...`).
pub fn length_lex_rank(bits: &[bool]) -> Option<u64> {
    if bits.len() >= 63 {
        return None;
    }
    let value = bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
    Some((1u64 << bits.len()) - 1 + value)
}

/// Generator index assigned to the binary string `bits` inside `A^p`: the
/// strings are laid onto `A^p \ {a_p, b_p}` in length-lex order.
pub fn branch_code(p: u64, bits: &[bool]) -> Option<u64> {
    block_element(p, length_lex_rank(bits)?.checked_add(2)?)
}

/// Codes of all prefixes `c|n, n <= |c|` that are `<= bound`, increasing.
pub fn branch_family(p: u64, c: &BranchPrefix, bound: u64) -> Vec<u64> {
    // Longer prefixes have larger rank, so codes increase with n.
    (0..=c.len())
        .map_while(|n| branch_code(p, &c.bits()[..n]))
        .take_while(|&v| v <= bound)
        .collect()
}

/// Letters of `f^p g_{a_p} g_{b_p}^{-1} (f^p)^{-1}` for each coordinate, with
/// every index above `level` dropped.
fn eta_letters(vec: &[BranchPrefix], level: u64) -> Vec<Letter> {
    let keep = |i: u64| i >= 1 && i <= level;
    let mut out = Vec::new();
    for (offset, c) in vec.iter().enumerate() {
        let p = offset as u64 + 1;
        let family: Vec<u64> = branch_family(p, c, level);
        let (a, b) = block_pair(p);
        let mk = |i: u64, sign| Letter::new(Generator::new(i as u32).expect("i >= 1"), sign);
        out.extend(family.iter().map(|&i| mk(i, Sign::Pos)));
        if keep(a) {
            out.push(mk(a, Sign::Pos));
        }
        if keep(b) {
            out.push(mk(b, Sign::Neg));
        }
        out.extend(family.iter().rev().map(|&i| mk(i, Sign::Neg)));
    }
    out
}

/// Level `n` of the image of `vec` (coordinates `p = 1..=vec.len()`).
pub fn eta_word_at_level(vec: &[BranchPrefix], level: u32) -> ReducedWord {
    let letters = stack_reduce(eta_letters(vec, level as u64), |a, b| a.cancels(*b));
    ReducedWord::from_reduced(letters).expect("stack scan output is reduced")
}

pub fn eta_element(vec: &[BranchPrefix], depth: u32) -> TruncatedCoherentSequence {
    TruncatedCoherentSequence::from_levels_unchecked(
        (1..=depth).map(|n| eta_word_at_level(vec, n)).collect(),
    )
}

/// Largest generator index used by the full (untruncated) image of `vec`;
/// at any depth at least this large the top level is the whole word.
pub fn eta_max_index(vec: &[BranchPrefix]) -> u64 {
    vec.iter()
        .enumerate()
        .map(|(offset, c)| {
            let p = offset as u64 + 1;
            let top = branch_family(p, c, u64::MAX).last().copied().unwrap_or(0);
            top.max(block_pair(p).1)
        })
        .max()
        .unwrap_or(0)
}
