//! The fibered compact set `K` over a truncated Cantor set.
//!
//! Fibers are the binary strings `c` of even length `d`. Each fiber carries a
//! gadget `K_{T_c}` placed in the plane `z = val(c)`. Splitting `c` into its
//! even digits `p(c)` and odd digits `q(c)` gives two strings of length
//! `d/2`, which label points of the auxiliary Cantor set `C'` on the line
//! `y = 1/2, z = 0`. A type I segment joins the fiber corner `(0,0,val(c))`
//! to `p(c)'`, a type II segment joins `(0,1,val(c))` to `q(c)'`. The
//! relation `E` lives on the length-`d/2` strings, and `T_c` has a branch
//! iff `p(c) E q(c)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::gadget::gadget_components;
use super::geom::{q, segment_intersection, Intersection, Point3, Q};
use super::tree::TreeDesc;
use super::BeckerError;
use crate::relcalc::{EquivRelation, Point};

fn check_bits(s: &str) -> Result<(), BeckerError> {
    if s.chars().all(|c| c == '0' || c == '1') {
        Ok(())
    } else {
        Err(BeckerError::BadBits(s.to_string()))
    }
}

/// `c0 ⊕ c1`: `c0` on even positions, `c1` on odd ones.
pub fn interleave(c0: &str, c1: &str) -> Result<String, BeckerError> {
    check_bits(c0)?;
    check_bits(c1)?;
    if c0.len() != c1.len() {
        return Err(BeckerError::LengthMismatch {
            left: c0.len(),
            right: c1.len(),
        });
    }
    Ok(c0
        .chars()
        .zip(c1.chars())
        .flat_map(|(a, b)| [a, b])
        .collect())
}

/// `(p(c), q(c))` with `p(c)(n) = c(2n)` and `q(c)(n) = c(2n + 1)`.
pub fn split(c: &str) -> Result<(String, String), BeckerError> {
    check_bits(c)?;
    let p = c.chars().step_by(2).collect();
    let q = c.chars().skip(1).step_by(2).collect();
    Ok((p, q))
}

/// Middle-thirds value `sum 2 c(i) / 3^(i+1)`.
pub fn cantor_value(c: &str) -> Q {
    let mut acc = Q::zero();
    let mut scale = q(1, 3);
    for ch in c.chars() {
        if ch == '1' {
            acc += &scale * Q::from_integer(2.into());
        }
        scale *= q(1, 3);
    }
    acc
}

/// `c' = (-1/2 - val(c), 1/2, 0)`.
pub fn cprime_coord(c: &str) -> Point3 {
    Point3::new(-q(1, 2) - cantor_value(c), q(1, 2), Q::zero())
}

pub fn binary_strings(len: usize) -> Vec<String> {
    (0..1u64 << len)
        .map(|v| {
            (0..len)
                .rev()
                .map(|i| if v >> i & 1 == 1 { '1' } else { '0' })
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SegmentKind {
    /// From `(0,0,c)` to `p(c)'`.
    #[serde(rename = "I")]
    TypeI,
    /// From `(0,1,c)` to `q(c)'`.
    #[serde(rename = "II")]
    TypeII,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssemblySegment {
    pub fiber: String,
    /// Label of the `C'` endpoint.
    pub target: String,
    pub from: Point3,
    pub to: Point3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberAssembly {
    pub fiber_depth: usize,
    /// Fiber labels, all binary strings of length `fiber_depth`.
    pub points: Vec<String>,
    pub relation: EquivRelation,
    pub fibers: BTreeMap<String, TreeDesc>,
    pub segments_i: Vec<AssemblySegment>,
    pub segments_ii: Vec<AssemblySegment>,
    /// Coordinates of the `C'` points, keyed by their length-`d/2` labels.
    pub cprime_coords: BTreeMap<String, Point3>,
}

pub fn build_assembly(e: &EquivRelation, d: usize) -> Result<FiberAssembly, BeckerError> {
    if d % 2 == 1 {
        return Err(BeckerError::OddDepth(d));
    }
    let labels = binary_strings(d / 2);
    for label in &labels {
        e.check_point(&Point::atom(label.as_str()))?;
    }
    let points = binary_strings(d);
    let mut fibers = BTreeMap::new();
    let mut segments_i = Vec::with_capacity(points.len());
    let mut segments_ii = Vec::with_capacity(points.len());
    for c in &points {
        let (p, qc) = split(c)?;
        let related =
            crate::relcalc::e_related(e, &Point::atom(p.as_str()), &Point::atom(qc.as_str()))?;
        fibers.insert(
            c.clone(),
            if related {
                TreeDesc::one_branch()
            } else {
                TreeDesc::single_node()
            },
        );
        let z = cantor_value(c);
        segments_i.push(AssemblySegment {
            fiber: c.clone(),
            target: p.clone(),
            from: Point3::new(Q::zero(), Q::zero(), z.clone()),
            to: cprime_coord(&p),
        });
        segments_ii.push(AssemblySegment {
            fiber: c.clone(),
            target: qc.clone(),
            from: Point3::new(Q::zero(), Q::one(), z),
            to: cprime_coord(&qc),
        });
    }
    let cprime_coords = labels
        .iter()
        .map(|l| (l.clone(), cprime_coord(l)))
        .collect();
    Ok(FiberAssembly {
        fiber_depth: d,
        points,
        relation: e.clone(),
        fibers,
        segments_i,
        segments_ii,
        cprime_coords,
    })
}

impl FiberAssembly {
    /// Structural checks for assemblies that did not come from
    /// [`build_assembly`] (e.g. loaded from JSON).
    pub fn validate(&self) -> Result<(), BeckerError> {
        for c in &self.points {
            if c.len() != self.fiber_depth {
                return Err(BeckerError::UnknownLocation(format!("fiber {c}")));
            }
            if !self.fibers.contains_key(c) {
                return Err(BeckerError::UnknownLocation(format!(
                    "fiber {c} has no tree"
                )));
            }
            for list in [&self.segments_i, &self.segments_ii] {
                if list.iter().filter(|s| &s.fiber == c).count() != 1 {
                    return Err(BeckerError::UnknownLocation(format!(
                        "segments of fiber {c}"
                    )));
                }
            }
        }
        for s in self.segments_i.iter().chain(&self.segments_ii) {
            if !self.cprime_coords.contains_key(&s.target) {
                return Err(BeckerError::UnknownLocation(format!(
                    "C' point {}",
                    s.target
                )));
            }
        }
        Ok(())
    }

    /// Symbolic incidence graph: one node per `C'` point and two per fiber
    /// (base side, zigzag side), merged when the fiber's gadget is connected.
    fn components(
        &self,
    ) -> (
        UnionFind<usize>,
        BTreeMap<&str, usize>,
        BTreeMap<&str, usize>,
    ) {
        let cprime: BTreeMap<&str, usize> = self
            .cprime_coords
            .keys()
            .enumerate()
            .map(|(i, k)| (k.as_str(), i))
            .collect();
        let m = cprime.len();
        let fiber_index: BTreeMap<&str, usize> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, c)| (c.as_str(), i))
            .collect();
        let mut uf = UnionFind::new(m + 2 * fiber_index.len());
        let base = |i: usize| m + 2 * i;
        let zig = |i: usize| m + 2 * i + 1;
        for (c, &i) in &fiber_index {
            if let Some(t) = self.fibers.get(*c) {
                if gadget_components(t).count == 1 {
                    uf.union(base(i), zig(i));
                }
            }
        }
        for (list, side) in [(&self.segments_i, 0), (&self.segments_ii, 1)] {
            for s in list {
                if let (Some(&t), Some(&f)) = (
                    cprime.get(s.target.as_str()),
                    fiber_index.get(s.fiber.as_str()),
                ) {
                    uf.union(t, if side == 0 { base(f) } else { zig(f) });
                }
            }
        }
        (uf, cprime, fiber_index)
    }

    /// Path components of `C'` in `K`, as a partition of the `C'` labels.
    pub fn cprime_classes(&self) -> Vec<Vec<String>> {
        let (mut uf, cprime, _) = self.components();
        let mut classes: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (label, &i) in &cprime {
            classes
                .entry(uf.find_mut(i))
                .or_default()
                .push(label.to_string());
        }
        let mut out: Vec<Vec<String>> = classes.into_values().collect();
        out.sort();
        out
    }

    fn fiber_target(&self, c: &str, kind: SegmentKind) -> Result<&str, BeckerError> {
        let list = match kind {
            SegmentKind::TypeI => &self.segments_i,
            SegmentKind::TypeII => &self.segments_ii,
        };
        list.iter()
            .find(|s| s.fiber == c)
            .map(|s| s.target.as_str())
            .ok_or_else(|| BeckerError::UnknownLocation(format!("fiber {c}")))
    }
}

/// Whether the `C'` points labelled `c0` and `c1` lie in one path component.
pub fn assembly_connected(a: &FiberAssembly, c0: &str, c1: &str) -> Result<bool, BeckerError> {
    let (uf, cprime, _) = a.components();
    let lookup = |c: &str| {
        cprime
            .get(c)
            .copied()
            .ok_or_else(|| BeckerError::UnknownLocation(format!("C' point {c}")))
    };
    let (i, j) = (lookup(c0)?, lookup(c1)?);
    Ok(uf.equiv(i, j))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiberSide {
    /// The base `l` or one of the verticals `l_s`.
    BaseOrVertical,
    Zigzag,
}

/// A piece of `K` on which a point is known to lie.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Location {
    CPrime { label: String },
    SegmentInterior { segment: SegmentKind, fiber: String },
    Fiber { fiber: String, side: FiberSide },
}

/// Sends a location to a `C'` point in its path component: `C'` points to
/// themselves, segment interiors to their `C'` endpoint, the base side of
/// fiber `c` to `p(c)'` and its zigzag side to `q(c)'`.
pub fn canonical_point(a: &FiberAssembly, loc: &Location) -> Result<String, BeckerError> {
    match loc {
        Location::CPrime { label } => {
            if a.cprime_coords.contains_key(label) {
                Ok(label.clone())
            } else {
                Err(BeckerError::UnknownLocation(format!("C' point {label}")))
            }
        }
        Location::SegmentInterior { segment, fiber } => {
            a.fiber_target(fiber, *segment).map(str::to_string)
        }
        Location::Fiber { fiber, side } => {
            let kind = match side {
                FiberSide::BaseOrVertical => SegmentKind::TypeI,
                FiberSide::Zigzag => SegmentKind::TypeII,
            };
            a.fiber_target(fiber, kind).map(str::to_string)
        }
    }
}

/// True iff any two distinct type I/II segments meet at most in a common
/// endpoint on `C'`.
pub fn segment_disjointness_check(a: &FiberAssembly) -> bool {
    let all: Vec<&AssemblySegment> = a.segments_i.iter().chain(&a.segments_ii).collect();
    let on_cprime = |p: &Point3| a.cprime_coords.values().any(|c| c == p);
    for (i, s) in all.iter().enumerate() {
        for t in &all[i + 1..] {
            match segment_intersection(&s.from, &s.to, &t.from, &t.to) {
                Intersection::Empty => {}
                Intersection::Point(p) => {
                    if !(p == s.to && p == t.to && on_cprime(&p)) {
                        return false;
                    }
                }
                Intersection::Overlap => return false,
            }
        }
    }
    true
}
