//! The space `L`, a cone on `K` glued to `K x S^1`, kept only through its
//! loop calculus: generator loops `g_c` for the points `c'` of `C'`, and two
//! loops are homotopic iff their words are `F(E')`-equivalent, where `E'` is
//! path connectivity of `C'` in `K`.

use serde::{Deserialize, Serialize};

use super::assembly::{build_assembly, FiberAssembly};
use super::BeckerError;
use crate::relcalc::{fe_equivalent, EquivRelation, Point, RelError, XWord};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub assembly: FiberAssembly,
    /// Cone point of `L`, in the ambient `R^5` coordinates.
    pub basepoint: [i64; 5],
    /// Path components of `C'` in `K`.
    pub connectivity: EquivRelation,
}

pub fn build_realization(e: &EquivRelation, d: usize) -> Result<Realization, BeckerError> {
    let assembly = build_assembly(e, d)?;
    let connectivity = EquivRelation::finite_partition(assembly.cprime_classes())?;
    Ok(Realization {
        assembly,
        basepoint: [0, 0, 0, 0, 1],
        connectivity,
    })
}

pub fn loop_homotopic(r: &Realization, w1: &XWord, w2: &XWord) -> Result<bool, BeckerError> {
    for letter in w1.letters().iter().chain(w2.letters()) {
        match &letter.point {
            Point::Atom(a) if r.assembly.cprime_coords.contains_key(a) => {}
            p => return Err(RelError::UniverseMismatch(p.to_string()).into()),
        }
    }
    Ok(fe_equivalent(&r.connectivity, w1, w2)?)
}
