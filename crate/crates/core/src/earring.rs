//! Finite truncations of elements of the inverse limit of the free groups
//! `F_1 <- F_2 <- ...`, where `F_{n+1} -> F_n` deletes `g_{n+1}` and reduces.
//!
//! An element of the earring group is a coherent sequence `(w_n)` in which,
//! for every `k`, the number of occurrences of `g_k` in `w_n` is eventually
//! constant. Only a finite prefix `(w_1, ..., w_D)` is ever held here, so the
//! membership test is exact about the truncation and nothing more: a sequence
//! reported as consistent at depth `D` may still fail to stabilize later, and
//! a count that is still moving at depth `D` may settle afterwards.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::word::{commutator, multiply_reduced, occurrence_count, project, Letter, ReducedWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EarringError {
    #[error("a coherent sequence needs at least one level")]
    EmptySequence,
    #[error("level {0} uses a generator index larger than {0}")]
    IndexTooLarge(u32),
    #[error("projection of the level above {0} does not equal level {0}")]
    IncoherentAt(u32),
    #[error("depth {depth} is smaller than the word's largest index {required}")]
    DepthTooSmall { depth: u32, required: u32 },
    #[error("operands have depths {left} and {right}")]
    DepthMismatch { left: u32, right: u32 },
}

/// Levels `w_1, ..., w_D` with `w_n` in `F_n` and `project(w_{n+1}, n) = w_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedCoherentSequence {
    levels: Vec<ReducedWord>,
}

impl TruncatedCoherentSequence {
    pub fn depth(&self) -> u32 {
        self.levels.len() as u32
    }

    pub fn levels(&self) -> &[ReducedWord] {
        &self.levels
    }

    /// Level `n`, 1-based.
    pub fn level(&self, n: u32) -> Option<&ReducedWord> {
        n.checked_sub(1).and_then(|i| self.levels.get(i as usize))
    }

    pub fn identity(depth: u32) -> TruncatedCoherentSequence {
        TruncatedCoherentSequence {
            levels: vec![ReducedWord::identity(); depth as usize],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.levels.iter().all(ReducedWord::is_identity)
    }

    /// Restriction to the first `depth` levels.
    pub fn truncate(&self, depth: u32) -> TruncatedCoherentSequence {
        let keep = (depth as usize).min(self.levels.len());
        TruncatedCoherentSequence {
            levels: self.levels[..keep].to_vec(),
        }
    }

    pub(crate) fn from_levels_unchecked(levels: Vec<ReducedWord>) -> TruncatedCoherentSequence {
        TruncatedCoherentSequence { levels }
    }
}

/// Checks the level constraints in increasing level order and reports the
/// first violation.
pub fn validate_coherent(
    levels: Vec<ReducedWord>,
) -> Result<TruncatedCoherentSequence, EarringError> {
    if levels.is_empty() {
        return Err(EarringError::EmptySequence);
    }
    for (i, w) in levels.iter().enumerate() {
        let n = i as u32 + 1;
        if w.max_index() > n {
            return Err(EarringError::IndexTooLarge(n));
        }
        if let Some(next) = levels.get(i + 1) {
            if &project(next, n) != w {
                return Err(EarringError::IncoherentAt(n));
            }
        }
    }
    Ok(TruncatedCoherentSequence { levels })
}

/// The image of a finite word: level `m` is `project(w, m)`.
pub fn embed_word(w: &ReducedWord, depth: u32) -> Result<TruncatedCoherentSequence, EarringError> {
    let required = w.max_index();
    if depth < required || depth == 0 {
        return Err(EarringError::DepthTooSmall {
            depth,
            required: required.max(1),
        });
    }
    let levels = (1..=depth).map(|m| project(w, m)).collect();
    Ok(TruncatedCoherentSequence { levels })
}

pub fn seq_multiply(
    a: &TruncatedCoherentSequence,
    b: &TruncatedCoherentSequence,
) -> Result<TruncatedCoherentSequence, EarringError> {
    if a.depth() != b.depth() {
        return Err(EarringError::DepthMismatch {
            left: a.depth(),
            right: b.depth(),
        });
    }
    let levels = a
        .levels
        .iter()
        .zip(&b.levels)
        .map(|(x, y)| multiply_reduced(x, y))
        .collect();
    Ok(TruncatedCoherentSequence { levels })
}

pub fn seq_invert(a: &TruncatedCoherentSequence) -> TruncatedCoherentSequence {
    TruncatedCoherentSequence {
        levels: a.levels.iter().map(ReducedWord::inverse).collect(),
    }
}

/// Occurrence counts of one generator `g_k` across the levels `k..=D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSeries {
    pub generator: u32,
    /// `counts[i]` is the number of `g_k` letters in `w_{k+i}`.
    pub counts: Vec<usize>,
    /// Least `N` with the counts constant on `[N, D]`, reported only when the
    /// truncation does not refute stabilization: either `k = D` (a single
    /// observation) or the count did not change between levels `D-1` and `D`.
    pub witness: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationReport {
    pub depth: u32,
    /// One entry per generator `k = 1..=D`.
    pub series: Vec<CountSeries>,
}

impl StabilizationReport {
    pub fn series_for(&self, k: u32) -> Option<&CountSeries> {
        k.checked_sub(1).and_then(|i| self.series.get(i as usize))
    }
}

pub fn stabilization_report(a: &TruncatedCoherentSequence) -> StabilizationReport {
    let depth = a.depth();
    let series = (1..=depth)
        .map(|k| {
            let counts: Vec<usize> = a.levels[(k - 1) as usize..]
                .iter()
                .map(|w| occurrence_count(w, k))
                .collect();
            let last = *counts.last().expect("k <= depth leaves at least one level");
            let flat_from = counts.iter().rposition(|&c| c != last).map_or(0, |i| i + 1);
            let witness_level = k + flat_from as u32;
            let witness = (counts.len() == 1 || witness_level < depth).then_some(witness_level);
            CountSeries {
                generator: k,
                counts,
                witness,
            }
        })
        .collect();
    StabilizationReport { depth, series }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipVerdict {
    /// Every generator has a constancy witness; maps `k` to `N_k`.
    ConsistentWithMembership(BTreeMap<u32, u32>),
    /// Generators whose counts are still changing at the last level.
    NotStabilized(Vec<u32>),
}

impl MembershipVerdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, MembershipVerdict::ConsistentWithMembership(_))
    }
}

/// Truncated image test for the earring group. Exact about levels `1..=D`
/// only; it cannot certify membership of the infinite sequence.
pub fn in_image_up_to_depth(a: &TruncatedCoherentSequence) -> MembershipVerdict {
    let report = stabilization_report(a);
    let unstable: Vec<u32> = report
        .series
        .iter()
        .filter(|s| s.witness.is_none())
        .map(|s| s.generator)
        .collect();
    if unstable.is_empty() {
        MembershipVerdict::ConsistentWithMembership(
            report
                .series
                .iter()
                .filter_map(|s| s.witness.map(|n| (s.generator, n)))
                .collect(),
        )
    } else {
        MembershipVerdict::NotStabilized(unstable)
    }
}

/// `w_1 = e`, `w_{n+1} = w_n [g_{n+1}, g_1]`. Coherent at every depth, and the
/// number of `g_1` letters grows by two per level, so it never stabilizes.
pub fn commutator_tower(depth: u32) -> TruncatedCoherentSequence {
    let g1 = ReducedWord::from_reduced(vec![Letter::pos(1)]).expect("single letter");
    let mut levels = Vec::with_capacity(depth as usize);
    let mut current = ReducedWord::identity();
    for n in 1..=depth {
        if n > 1 {
            let gn = ReducedWord::from_reduced(vec![Letter::pos(n)]).expect("single letter");
            current = multiply_reduced(&current, &commutator(&gn, &g1));
        }
        levels.push(current.clone());
    }
    TruncatedCoherentSequence { levels }
}
