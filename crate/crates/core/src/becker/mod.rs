//! Becker's gadgets: the tree gadget `K_T`, the fibered assembly `K`, and the
//! loop calculus of the realization space `L`.

mod assembly;
mod export;
mod gadget;
mod geom;
mod realization;
mod tree;

use thiserror::Error;

use crate::relcalc::RelError;

pub use assembly::{
    assembly_connected, binary_strings, build_assembly, canonical_point, cantor_value,
    cprime_coord, interleave, segment_disjointness_check, split, AssemblySegment, FiberAssembly,
    FiberSide, Location, SegmentKind,
};
pub use export::{export_json, export_svg, load_assembly_json, write_svg};
pub use gadget::{
    build_gadget, gadget_components, l_bottom_label, l_top_label, r_label, ComponentMap,
    GadgetGeometry, Polyline, Segment2, BASE_LEFT, BASE_RIGHT, CORNER_00, CORNER_01, SIDE_BASE,
    SIDE_ZIGZAG,
};
pub use geom::{q, qi, segment_intersection, to_decimal, Intersection, Point2, Point3, Q};
pub use realization::{build_realization, loop_homotopic, Realization};
pub use tree::{node_label, IntBranch, TreeDesc, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BeckerError {
    #[error("LengthMismatch: strings of length {left} and {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("RenderDepthZero: render depth must be positive")]
    RenderDepthZero,
    #[error("OddDepth: fiber depth {0} is odd")]
    OddDepth(usize),
    #[error("{0}")]
    Relation(#[from] RelError),
    #[error("UnknownLocation: {0}")]
    UnknownLocation(String),
    #[error("BadBits: expected a bit string, found {0:?}")]
    BadBits(String),
    #[error("{0}")]
    Tree(#[from] TreeError),
    #[error("IOError: {0}")]
    Io(String),
    #[error("MalformedJson: {0}")]
    Json(String),
}
