//! JSON input formats.

use serde::Deserialize;
use thiserror::Error;

use super::syntax::{parse_word, EvalError, SyntaxError};
use crate::archipelago::{BranchPrefix, BranchPrefixError};
use crate::becker::TreeDesc;
use crate::earring::{validate_coherent, EarringError, TruncatedCoherentSequence};
use crate::relcalc::{EquivRelation, RelError};
use crate::word::free_reduce;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("MalformedJson: {0}")]
    Json(String),
    #[error("DepthMismatch: declared depth {declared}, found {found} levels")]
    LevelCount { declared: u32, found: usize },
    #[error("level {level}: {source}")]
    Syntax { level: usize, source: SyntaxError },
    #[error("level {level}: {source}")]
    Eval { level: usize, source: EvalError },
    #[error("{0}")]
    Earring(#[from] EarringError),
    #[error("prefix {index}: {source}")]
    Prefix {
        index: usize,
        source: BranchPrefixError,
    },
    #[error("{0}")]
    Relation(#[from] RelError),
}

fn json_error(e: serde_json::Error) -> LoadError {
    LoadError::Json(e.to_string())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceFile {
    depth: u32,
    levels: Vec<String>,
}

/// `{"depth": D, "levels": ["<word>", ...]}`; levels are reduced, then
/// checked for coherence.
pub fn load_sequence(text: &str) -> Result<TruncatedCoherentSequence, LoadError> {
    let file: SequenceFile = serde_json::from_str(text).map_err(json_error)?;
    if file.levels.len() != file.depth as usize {
        return Err(LoadError::LevelCount {
            declared: file.depth,
            found: file.levels.len(),
        });
    }
    let mut levels = Vec::with_capacity(file.levels.len());
    for (i, src) in file.levels.iter().enumerate() {
        let level = i + 1;
        let expr = parse_word(src).map_err(|source| LoadError::Syntax { level, source })?;
        let word = expr
            .to_word()
            .map_err(|source| LoadError::Eval { level, source })?;
        levels.push(free_reduce(&word));
    }
    Ok(validate_coherent(levels)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VecFile {
    prefixes: Vec<String>,
}

/// `{"prefixes": ["01", "1", ...]}`.
pub fn load_vec(text: &str) -> Result<Vec<BranchPrefix>, LoadError> {
    let file: VecFile = serde_json::from_str(text).map_err(json_error)?;
    file.prefixes
        .iter()
        .enumerate()
        .map(|(index, s)| {
            s.parse()
                .map_err(|source| LoadError::Prefix { index, source })
        })
        .collect()
}

pub fn load_relation(text: &str) -> Result<EquivRelation, LoadError> {
    serde_json::from_str(text).map_err(json_error)
}

pub fn load_tree(text: &str) -> Result<TreeDesc, LoadError> {
    serde_json::from_str(text).map_err(json_error)
}
