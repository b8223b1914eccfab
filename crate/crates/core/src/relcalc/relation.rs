use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Point, RelError};

/// A finite partition of named atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<BTreeSet<String>>,
    block_of: BTreeMap<String, usize>,
}

impl Partition {
    pub fn new<I, B, S>(blocks: I) -> Result<Partition, RelError>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = Vec::new();
        let mut block_of = BTreeMap::new();
        for block in blocks {
            let set: BTreeSet<String> = block.into_iter().map(Into::into).collect();
            for atom in &set {
                if block_of.insert(atom.clone(), out.len()).is_some() {
                    return Err(RelError::OverlappingBlocks(atom.clone()));
                }
            }
            if !set.is_empty() {
                out.push(set);
            }
        }
        Ok(Partition {
            blocks: out,
            block_of,
        })
    }

    pub fn blocks(&self) -> &[BTreeSet<String>] {
        &self.blocks
    }

    pub fn block_of(&self, atom: &str) -> Option<usize> {
        self.block_of.get(atom).copied()
    }

    /// Least atom id of the block containing `atom`.
    pub fn representative(&self, atom: &str) -> Option<&str> {
        self.block_of(atom)
            .and_then(|b| self.blocks[b].iter().next())
            .map(String::as_str)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.block_of.keys().map(String::as_str)
    }
}

/// A decidable equivalence relation on a declared universe of points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RelationSpec", into = "RelationSpec")]
pub enum EquivRelation {
    /// Atoms listed in the blocks, related iff in the same block.
    FinitePartition(Partition),
    /// Equality on all points.
    Identity,
    /// Eventual agreement of eventually periodic binary sequences.
    E0,
}

impl EquivRelation {
    pub fn finite_partition<I, B, S>(blocks: I) -> Result<EquivRelation, RelError>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Partition::new(blocks).map(EquivRelation::FinitePartition)
    }

    /// Rejects points outside the relation's universe.
    pub fn check_point(&self, x: &Point) -> Result<(), RelError> {
        let ok = match (self, x) {
            (EquivRelation::FinitePartition(p), Point::Atom(a)) => p.block_of(a).is_some(),
            (EquivRelation::FinitePartition(_), Point::Seq(_)) => false,
            (EquivRelation::Identity, _) => true,
            (EquivRelation::E0, Point::Seq(_)) => true,
            (EquivRelation::E0, Point::Atom(_)) => false,
        };
        if ok {
            Ok(())
        } else {
            Err(RelError::UniverseMismatch(x.to_string()))
        }
    }

    /// `x E y`, assuming both points were already checked.
    pub(crate) fn related_unchecked(&self, x: &Point, y: &Point) -> bool {
        match (self, x, y) {
            (EquivRelation::FinitePartition(p), Point::Atom(a), Point::Atom(b)) => {
                p.block_of(a) == p.block_of(b)
            }
            (EquivRelation::E0, Point::Seq(a), Point::Seq(b)) => a.eventually_agrees(b),
            _ => x == y,
        }
    }

    /// Canonical class member, where one is computable.
    pub fn representative(&self, x: &Point) -> Result<Point, RelError> {
        self.check_point(x)?;
        match (self, x) {
            (EquivRelation::FinitePartition(p), Point::Atom(a)) => Ok(Point::atom(
                p.representative(a).expect("checked atom has a block"),
            )),
            (EquivRelation::Identity, _) => Ok(x.clone()),
            _ => Err(RelError::NoCanonicalRep),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
enum RelationSpec {
    FinitePartition { blocks: Vec<Vec<String>> },
    Identity,
    E0,
}

impl TryFrom<RelationSpec> for EquivRelation {
    type Error = RelError;

    fn try_from(spec: RelationSpec) -> Result<Self, Self::Error> {
        match spec {
            RelationSpec::FinitePartition { blocks } => EquivRelation::finite_partition(blocks),
            RelationSpec::Identity => Ok(EquivRelation::Identity),
            RelationSpec::E0 => Ok(EquivRelation::E0),
        }
    }
}

impl From<EquivRelation> for RelationSpec {
    fn from(rel: EquivRelation) -> Self {
        match rel {
            EquivRelation::FinitePartition(p) => RelationSpec::FinitePartition {
                blocks: p
                    .blocks
                    .iter()
                    .map(|b| b.iter().cloned().collect())
                    .collect(),
            },
            EquivRelation::Identity => RelationSpec::Identity,
            EquivRelation::E0 => RelationSpec::E0,
        }
    }
}
