//! Exact representation of grid tilings and rational box unions, integer
//! points of their difference sets, and the lattice predicates used on them.

mod boxes;
mod hnf;
mod lines;
mod tiling;
mod vector;

use thiserror::Error;

pub(crate) use boxes::for_each_in_product;
pub use boxes::{
    covers_torus, difference_set_boxes, format_rational, integer_points_in_box_difference,
    parse_rational, BoxUnion, Interval, Rational, RationalBox,
};
pub use hnf::Sublattice;
pub use lines::{first_unconfined, is_confined, LineFamily};
pub use tiling::{
    axis_offsets, cell_coords, cell_index, cell_pair_difference, difference_set_tiling,
    normalize_tiling, tiling_to_boxes, GridTiling,
};
pub use vector::{LatticeSet, LatticeVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("resolution m must be at least 1")]
    ZeroResolution,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid tiling: {0}")]
    InvalidTiling(String),
    #[error("box union must contain at least one box")]
    EmptyUnion,
    #[error("interval [{lo}, {hi}] has lo > hi")]
    EmptyInterval { lo: String, hi: String },
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
    #[error("a line family in dimension {expected} needs {expected} directions, found {found}")]
    WrongLineCount { expected: usize, found: usize },
    #[error("line direction is the zero vector")]
    ZeroDirection,
    #[error("line directions are linearly dependent")]
    DependentLines,
}

/// True iff the elements of `a` span Z^n over the integers.
pub fn generates_lattice(a: &LatticeSet) -> bool {
    Sublattice::from_generators(a.dim(), a.iter()).is_full()
}

/// A target for the inverse problem: contains 0, symmetric, and generates Z^n.
pub fn is_valid_target(a: &LatticeSet) -> bool {
    a.contains_zero() && a.is_symmetric() && generates_lattice(a)
}
