use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("node {0:?} is present but its parent is not")]
    NotPrefixClosed(Vec<u32>),
    #[error("branch {index} leaves the tree at {prefix:?}")]
    BranchOutsideTree { index: usize, prefix: Vec<u32> },
    #[error("branch {0} has an empty period")]
    EmptyPeriod(usize),
}

/// An eventually periodic sequence of naturals, `prefix period period ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntBranch {
    pub prefix: Vec<u32>,
    pub period: Vec<u32>,
}

impl IntBranch {
    pub fn constant(value: u32) -> IntBranch {
        IntBranch {
            prefix: Vec::new(),
            period: vec![value],
        }
    }

    pub fn at(&self, i: usize) -> u32 {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn take(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.at(i)).collect()
    }
}

/// A finite prefix-closed tree on sequences of naturals, together with a set
/// of designated infinite branches whose finite parts run through the tree.
/// The designated set stands in for branch existence: the tree "has a
/// branch" iff at least one is designated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TreeSpec", into = "TreeSpec")]
pub struct TreeDesc {
    nodes: BTreeSet<Vec<u32>>,
    branches: Vec<IntBranch>,
}

impl TreeDesc {
    /// The root is always included.
    pub fn new(
        nodes: impl IntoIterator<Item = Vec<u32>>,
        branches: Vec<IntBranch>,
    ) -> Result<TreeDesc, TreeError> {
        let mut set: BTreeSet<Vec<u32>> = nodes.into_iter().collect();
        set.insert(Vec::new());
        for node in &set {
            if let Some((_, parent)) = node.split_last() {
                if !set.contains(parent) {
                    return Err(TreeError::NotPrefixClosed(node.clone()));
                }
            }
        }
        let height = set.iter().map(Vec::len).max().unwrap_or(0);
        for (index, b) in branches.iter().enumerate() {
            if b.period.is_empty() {
                return Err(TreeError::EmptyPeriod(index));
            }
            for n in 1..=height {
                let prefix = b.take(n);
                if !set.contains(&prefix) {
                    return Err(TreeError::BranchOutsideTree { index, prefix });
                }
            }
        }
        Ok(TreeDesc {
            nodes: set,
            branches,
        })
    }

    /// `{root}`, no branch.
    pub fn single_node() -> TreeDesc {
        TreeDesc {
            nodes: [Vec::new()].into_iter().collect(),
            branches: Vec::new(),
        }
    }

    /// `{root, (0)}` with the designated branch `0, 0, 0, ...`.
    pub fn one_branch() -> TreeDesc {
        TreeDesc::new([vec![0]], vec![IntBranch::constant(0)]).expect("valid by construction")
    }

    pub fn nodes(&self) -> &BTreeSet<Vec<u32>> {
        &self.nodes
    }

    pub fn branches(&self) -> &[IntBranch] {
        &self.branches
    }

    pub fn has_branch(&self) -> bool {
        !self.branches.is_empty()
    }

    pub fn height(&self) -> usize {
        self.nodes.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Child indices of `node`, increasing.
    pub fn children<'a>(&'a self, node: &'a [u32]) -> impl Iterator<Item = u32> + 'a {
        self.nodes
            .iter()
            .filter(move |s| s.len() == node.len() + 1 && s.starts_with(node))
            .map(|s| *s.last().expect("non-root"))
    }
}

#[derive(Serialize, Deserialize)]
struct TreeSpec {
    nodes: Vec<Vec<u32>>,
    #[serde(default)]
    branches: Vec<IntBranch>,
}

impl TryFrom<TreeSpec> for TreeDesc {
    type Error = TreeError;

    fn try_from(spec: TreeSpec) -> Result<Self, Self::Error> {
        TreeDesc::new(spec.nodes, spec.branches)
    }
}

impl From<TreeDesc> for TreeSpec {
    fn from(t: TreeDesc) -> Self {
        TreeSpec {
            nodes: t.nodes.into_iter().filter(|n| !n.is_empty()).collect(),
            branches: t.branches,
        }
    }
}

/// Display label of a node: `()` for the root, `(0,1)` otherwise.
pub fn node_label(node: &[u32]) -> String {
    let inner: Vec<String> = node.iter().map(u32::to_string).collect();
    format!("({})", inner.join(","))
}
