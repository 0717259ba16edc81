//! Edge cochains on the m-subdivided torus built from a tiling's vertex
//! labels, together with the checkable consequences used to rule out
//! axis-confined tilings: cocycle and wrap identities, loop gains, edge and
//! cell colorings, monochromatic components, white boundaries, and the
//! trivial-or-full dichotomy for the gains inside a component.

mod cochain;
mod coloring;
mod components;
pub mod synthetic;
mod torus;

use thiserror::Error;

use crate::lattice_core::LatticeVector;

pub use cochain::{
    edge_cochain, face_loop, first_cocycle_failure, generator_gains, generator_loop,
    homotopy_class, loop_gain, verify_cocycle, vertex_labels, EdgeCochain, Step, VertexLabeling,
};
pub use coloring::{classify_cells, color_edges, CellClassification, Color, EdgeColoring};
pub use components::{
    boundary_faces, boundary_gain_subgroup, boundary_homotopy_subgroup, classify_component,
    component_boundary, find_components, gain_subgroup, homotopy_subgroup, skeleton_subgroup,
    Boundary, Component, ComponentClass,
};
pub use torus::{Edge, Face, Torus};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("tiling must be normalized (origin translation 0) before labeling")]
    NotNormalized,
    #[error("labels or values have the wrong shape")]
    ShapeMismatch,
    #[error("wrap identity fails on edge from {tail:?} along axis {dir}: {first} vs {second}")]
    WrapMismatch {
        tail: Vec<usize>,
        dir: usize,
        first: LatticeVector,
        second: LatticeVector,
    },
    #[error("path is not closed at step {position}")]
    NotClosed { position: usize },
    #[error("cochain fails the cocycle identity")]
    NotCocycle,
    #[error("generator loop along axis {axis} has gain {gain}, expected -e_{axis}")]
    BadGauge { axis: usize, gain: LatticeVector },
    #[error("edge from {tail:?} along axis {dir} has non-axial value {value}")]
    NonAxialEdge {
        tail: Vec<usize>,
        dir: usize,
        value: LatticeVector,
    },
    #[error("cell {cell:?} has edges of colors {} and {}", colors.0, colors.1)]
    MixedCell {
        cell: Vec<usize>,
        colors: (usize, usize),
    },
    #[error("component gain subgroup is proper and nonzero: basis {basis:?}")]
    DichotomyViolation { basis: Vec<LatticeVector> },
}
