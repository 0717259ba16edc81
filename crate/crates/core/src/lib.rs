//! Compact fundamental domains for Z^n built from translated grid cubes.
//!
//! The crate computes integer points of difference sets exactly, refines
//! rational box unions into dyadic complexes, evaluates edge cochains on the
//! subdivided torus, and searches grid tilings exhaustively for axis- or
//! line-confined difference sets and for prescribed difference sets.

pub mod dyadic;
pub mod io;
pub mod lattice_core;
pub mod search;
pub mod torus_cohomology;

pub use lattice_core::{
    difference_set_boxes, difference_set_tiling, generates_lattice, is_confined, is_valid_target,
    normalize_tiling, tiling_to_boxes, BoxUnion, GridTiling, LatticeError, LatticeSet,
    LatticeVector, LineFamily,
};
