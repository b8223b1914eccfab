//! Planar gadget `K_T` for a tree `T`.
//!
//! Layout: node `s` owns a box with horizontal span `[x_l, x_r]`, top height
//! `top` and vertical scale `h`. Its zigzag starts at `r_s = (x_l, top)` and
//! its `k`-th vertex (`k = 1..=R`) sits at `x_r - (x_r - x_l) / 3^k`,
//! alternating between the low height `top - h/4` (odd `k`) and `top` (even
//! `k`). The accumulation segment `l_s` is the vertical at `x_r` from `top`
//! down to the base `l`. Child `j` hangs from the low vertex `2j + 1` down to
//! `r_{s j}` at `top - h/2`, and owns the span between vertices `2j + 1` and
//! `2j + 2` with scale `h/3`. Children whose hanging vertex is beyond the
//! render depth are not drawn.
//!
//! Path components are never read off the drawing: the zigzag never reaches
//! `l_s`, and whether the two sides meet in the limit is decided by branch
//! existence alone.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::geom::{q, Point2, Q};
use super::tree::{node_label, TreeDesc};
use super::BeckerError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment2 {
    pub label: String,
    pub from: Point2,
    pub to: Point2,
}

/// Zigzag of one node: `r_s` followed by the rendered vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polyline {
    pub node: Vec<u32>,
    pub vertices: Vec<Point2>,
    /// Top endpoint of the accumulation segment `l_s`.
    pub limit_top: Point2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetGeometry {
    pub segments: Vec<Segment2>,
    pub polylines: Vec<Polyline>,
    pub marked_points: BTreeMap<String, Point2>,
}

pub const CORNER_00: &str = "corner_00";
pub const CORNER_01: &str = "corner_01";
pub const BASE_LEFT: &str = "base_left";
pub const BASE_RIGHT: &str = "base_right";
/// Fiber-side labels: the base together with the verticals `l_s`, and the
/// zigzag part (zigzags plus hanging segments).
pub const SIDE_BASE: &str = "side:base";
pub const SIDE_ZIGZAG: &str = "side:zigzag";

pub fn r_label(node: &[u32]) -> String {
    format!("r{}", node_label(node))
}

pub fn l_top_label(node: &[u32]) -> String {
    format!("l{}_top", node_label(node))
}

pub fn l_bottom_label(node: &[u32]) -> String {
    format!("l{}_bottom", node_label(node))
}

struct NodeBox {
    x_l: Q,
    x_r: Q,
    top: Q,
    h: Q,
}

impl NodeBox {
    fn vertex(&self, k: u32) -> Point2 {
        let span = &self.x_r - &self.x_l;
        let x = &self.x_r - span / Q::from_integer(3.into()).pow(k as i32);
        let y = if k % 2 == 1 {
            &self.top - &self.h * q(1, 4)
        } else {
            self.top.clone()
        };
        Point2::new(x, y)
    }
}

pub fn build_gadget(t: &TreeDesc, render_depth: u32) -> Result<GadgetGeometry, BeckerError> {
    if render_depth == 0 {
        return Err(BeckerError::RenderDepthZero);
    }
    let zero = Q::zero();
    let one = Q::one();
    let mut g = GadgetGeometry {
        segments: vec![Segment2 {
            label: "l".into(),
            from: Point2::new(zero.clone(), zero.clone()),
            to: Point2::new(one.clone(), zero.clone()),
        }],
        polylines: Vec::new(),
        marked_points: BTreeMap::new(),
    };
    g.marked_points
        .insert(CORNER_00.into(), Point2::new(zero.clone(), zero.clone()));
    g.marked_points
        .insert(CORNER_01.into(), Point2::new(zero.clone(), one.clone()));
    g.marked_points
        .insert(BASE_LEFT.into(), Point2::new(zero.clone(), zero.clone()));
    g.marked_points
        .insert(BASE_RIGHT.into(), Point2::new(one.clone(), zero.clone()));
    let root = NodeBox {
        x_l: zero,
        x_r: one.clone(),
        top: one.clone(),
        h: one,
    };
    render_node(t, &mut Vec::new(), &root, render_depth, &mut g);
    Ok(g)
}

fn render_node(t: &TreeDesc, node: &mut Vec<u32>, b: &NodeBox, depth: u32, g: &mut GadgetGeometry) {
    let r = Point2::new(b.x_l.clone(), b.top.clone());
    g.marked_points.insert(r_label(node), r.clone());
    let l_top = Point2::new(b.x_r.clone(), b.top.clone());
    let l_bottom = Point2::new(b.x_r.clone(), Q::zero());
    g.marked_points.insert(l_top_label(node), l_top.clone());
    g.marked_points
        .insert(l_bottom_label(node), l_bottom.clone());
    g.segments.push(Segment2 {
        label: format!("l{}", node_label(node)),
        from: l_bottom,
        to: l_top.clone(),
    });

    let mut vertices = vec![r];
    vertices.extend((1..=depth).map(|k| b.vertex(k)));
    g.polylines.push(Polyline {
        node: node.clone(),
        vertices,
        limit_top: l_top,
    });

    let children: Vec<u32> = t.children(node).collect();
    for j in children {
        let k = match j.checked_mul(2).and_then(|v| v.checked_add(1)) {
            Some(k) if k <= depth => k,
            _ => continue,
        };
        let anchor = b.vertex(k);
        let child = NodeBox {
            x_l: anchor.x.clone(),
            x_r: b.vertex(k + 1).x,
            top: &b.top - &b.h * q(1, 2),
            h: &b.h * q(1, 3),
        };
        node.push(j);
        g.segments.push(Segment2 {
            label: format!("hang{}", node_label(node)),
            from: anchor,
            to: Point2::new(child.x_l.clone(), child.top.clone()),
        });
        render_node(t, node, &child, depth, g);
        node.pop();
    }
}

/// Path components of `K_T` over its marked-point and fiber-side labels.
/// Component `0` always contains `(0,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentMap {
    pub assignment: BTreeMap<String, usize>,
    pub count: usize,
}

impl ComponentMap {
    pub fn component_of(&self, label: &str) -> Option<usize> {
        self.assignment.get(label).copied()
    }

    pub fn connected(&self, a: &str, b: &str) -> Option<bool> {
        Some(self.component_of(a)? == self.component_of(b)?)
    }
}

/// Labels on the base `l` or a vertical `l_s` go with `(0,0)`, labels on the
/// zigzag part go with `(0,1)`; the two sides coincide iff `t` has a branch.
pub fn gadget_components(t: &TreeDesc) -> ComponentMap {
    let zig = 0;
    let base = if t.has_branch() { 0 } else { 1 };
    let mut assignment = BTreeMap::new();
    assignment.insert(CORNER_01.to_string(), zig);
    assignment.insert(SIDE_ZIGZAG.to_string(), zig);
    assignment.insert(CORNER_00.to_string(), base);
    assignment.insert(BASE_LEFT.to_string(), base);
    assignment.insert(BASE_RIGHT.to_string(), base);
    assignment.insert(SIDE_BASE.to_string(), base);
    for node in t.nodes() {
        assignment.insert(r_label(node), zig);
        assignment.insert(l_top_label(node), base);
        assignment.insert(l_bottom_label(node), base);
    }
    ComponentMap {
        assignment,
        count: base + 1,
    }
}
