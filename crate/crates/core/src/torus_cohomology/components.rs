//! Monochromatic components of a cell classification, their boundaries, and
//! the subgroup of Z^n generated by loop gains inside each component.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::lattice_core::{LatticeVector, Sublattice};

use super::cochain::EdgeCochain;
use super::coloring::{CellClassification, Color, EdgeColoring};
use super::torus::{Edge, Face, Torus};
use super::CohomologyError;

/// A maximal face-connected set of cells sharing one non-white color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// 1-based axis color.
    pub color: usize,
    /// Sorted cell indices.
    pub cells: Vec<usize>,
}

impl Component {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: usize) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }
}

/// Components ordered by their smallest cell. Adjacency is through shared
/// (n-1)-faces, with wrap-around; white cells are skipped.
pub fn find_components(cls: &CellClassification) -> Vec<Component> {
    let t = cls.torus();
    let mut seen = vec![false; t.size()];
    let mut out = Vec::new();
    for start in 0..t.size() {
        let Color::Axis(color) = cls.color(start) else {
            continue;
        };
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut cells = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for axis in 0..t.n {
                for forward in [true, false] {
                    let nb = t.shift(c, axis, forward);
                    if !seen[nb] && cls.color(nb) == Color::Axis(color) {
                        seen[nb] = true;
                        cells.push(nb);
                        queue.push_back(nb);
                    }
                }
            }
        }
        cells.sort_unstable();
        out.push(Component { color, cells });
    }
    out
}

/// Facets separating the component from cells outside it.
pub fn boundary_faces(t: &Torus, comp: &Component) -> BTreeSet<Face> {
    let mut faces = BTreeSet::new();
    for &c in &comp.cells {
        for axis in 0..t.n {
            let up = t.shift(c, axis, true);
            if !comp.contains(up) {
                faces.insert(Face { cell: up, axis });
            }
            if !comp.contains(t.shift(c, axis, false)) {
                faces.insert(Face { cell: c, axis });
            }
        }
    }
    faces
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Boundary {
    pub faces: BTreeSet<Face>,
    /// Every edge lying in a boundary face is white.
    pub all_white: bool,
}

pub fn component_boundary(comp: &Component, coloring: &EdgeColoring) -> Boundary {
    let t = coloring.torus();
    let faces = boundary_faces(&t, comp);
    let all_white = faces
        .iter()
        .flat_map(|&f| t.face_edges(f))
        .all(|e| coloring.color(e) == Color::White);
    Boundary { faces, all_white }
}

/// Subgroup generated by the gains of all cycles in the graph formed by
/// `edges`. Potentials are propagated along a spanning forest; every edge then
/// contributes the gain of its fundamental cycle (zero for tree edges).
pub fn skeleton_subgroup(psi: &EdgeCochain, edges: &BTreeSet<Edge>) -> Sublattice {
    let t = psi.torus();
    let mut adj: BTreeMap<usize, Vec<(usize, Edge, bool)>> = BTreeMap::new();
    for &e in edges {
        let h = t.head(e);
        adj.entry(e.tail).or_default().push((h, e, true));
        adj.entry(h).or_default().push((e.tail, e, false));
    }
    let mut potential: BTreeMap<usize, LatticeVector> = BTreeMap::new();
    for &root in adj.keys() {
        if potential.contains_key(&root) {
            continue;
        }
        potential.insert(root, LatticeVector::zero(t.n));
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let px = potential[&x].clone();
            for &(y, e, forward) in &adj[&x] {
                if potential.contains_key(&y) {
                    continue;
                }
                let step = if forward {
                    &px + psi.value(e)
                } else {
                    &px - psi.value(e)
                };
                potential.insert(y, step);
                queue.push_back(y);
            }
        }
    }
    let mut sub = Sublattice::zero(t.n);
    for &e in edges {
        let cycle = &(&potential[&e.tail] + psi.value(e)) - &potential[&t.head(e)];
        if !cycle.is_zero() {
            sub.insert(&cycle);
        }
    }
    sub
}

/// Loop gains inside the closed component (all edges of its cells).
pub fn gain_subgroup(psi: &EdgeCochain, comp: &Component) -> Sublattice {
    let t = psi.torus();
    let edges: BTreeSet<Edge> = comp.cells.iter().flat_map(|&c| t.cell_edges(c)).collect();
    skeleton_subgroup(psi, &edges)
}

/// Loop gains along the component's boundary faces.
pub fn boundary_gain_subgroup(psi: &EdgeCochain, comp: &Component) -> Sublattice {
    let t = psi.torus();
    let edges: BTreeSet<Edge> = boundary_faces(&t, comp)
        .into_iter()
        .flat_map(|f| t.face_edges(f))
        .collect();
    skeleton_subgroup(psi, &edges)
}

/// Image of the component's loops in H_1(T) = Z^n. Independent of any cochain:
/// the standard cochain's gains are exactly minus the winding vectors.
pub fn homotopy_subgroup(t: &Torus, comp: &Component) -> Sublattice {
    gain_subgroup(&EdgeCochain::standard(t.n, t.m), comp)
}

/// Image of the boundary's loops in H_1(T).
pub fn boundary_homotopy_subgroup(t: &Torus, comp: &Component) -> Sublattice {
    boundary_gain_subgroup(&EdgeCochain::standard(t.n, t.m), comp)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentClass {
    /// Every loop gain vanishes.
    Contractible,
    /// Loop gains generate all of Z^n.
    Essential,
}

pub fn classify_component(
    psi: &EdgeCochain,
    comp: &Component,
) -> Result<ComponentClass, CohomologyError> {
    let sub = gain_subgroup(psi, comp);
    if sub.is_zero() {
        Ok(ComponentClass::Contractible)
    } else if sub.is_full() {
        Ok(ComponentClass::Essential)
    } else {
        Err(CohomologyError::DichotomyViolation { basis: sub.basis() })
    }
}
