use super::cochain::EdgeCochain;
use super::torus::{Edge, Torus};
use super::CohomologyError;

/// White, or color-k for the k-th coordinate axis (k is 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    White,
    Axis(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    torus: Torus,
    colors: Vec<Color>,
}

impl EdgeColoring {
    pub fn torus(&self) -> Torus {
        self.torus
    }

    pub fn color(&self, e: Edge) -> Color {
        self.colors[self.torus.edge_slot(e)]
    }
}

/// Colors each edge by the axis its ψ value lies on; zero is white.
pub fn color_edges(psi: &EdgeCochain) -> Result<EdgeColoring, CohomologyError> {
    let torus = psi.torus();
    let colors = psi
        .values()
        .iter()
        .enumerate()
        .map(|(slot, v)| {
            if v.is_zero() {
                Ok(Color::White)
            } else {
                v.axis().map(|l| Color::Axis(l + 1)).ok_or_else(|| {
                    let e = torus.edge_at(slot);
                    CohomologyError::NonAxialEdge {
                        tail: torus.coords(e.tail),
                        dir: e.dir,
                        value: v.clone(),
                    }
                })
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(EdgeColoring { torus, colors })
}

/// A color per torus cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellClassification {
    torus: Torus,
    cells: Vec<Color>,
}

impl CellClassification {
    /// A hand-made classification, e.g. for exercising component logic directly.
    pub fn from_colors(n: usize, m: usize, cells: Vec<Color>) -> Result<Self, CohomologyError> {
        let torus = Torus::new(n, m);
        let valid = cells.iter().all(|c| match c {
            Color::White => true,
            Color::Axis(k) => (1..=n).contains(k),
        });
        if cells.len() != torus.size() || !valid {
            return Err(CohomologyError::ShapeMismatch);
        }
        Ok(CellClassification { torus, cells })
    }

    pub fn torus(&self) -> Torus {
        self.torus
    }

    pub fn color(&self, cell: usize) -> Color {
        self.cells[cell]
    }

    pub fn colors(&self) -> &[Color] {
        &self.cells
    }
}

/// Labels every cell by the single non-white color among its edges, or white.
pub fn classify_cells(c: &EdgeColoring) -> Result<CellClassification, CohomologyError> {
    let torus = c.torus;
    let cells = (0..torus.size())
        .map(|cell| classify_cell(c, cell))
        .collect::<Result<_, _>>()?;
    Ok(CellClassification { torus, cells })
}

fn classify_cell(c: &EdgeColoring, cell: usize) -> Result<Color, CohomologyError> {
    let mut found = Color::White;
    for e in c.torus.cell_edges(cell) {
        match (found, c.color(e)) {
            (_, Color::White) => {}
            (Color::White, k) => found = k,
            (a, b) if a == b => {}
            (Color::Axis(a), Color::Axis(b)) => {
                return Err(CohomologyError::MixedCell {
                    cell: c.torus.coords(cell),
                    colors: (a.min(b), a.max(b)),
                })
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_core::{GridTiling, LatticeVector};
    use crate::torus_cohomology::{edge_cochain, vertex_labels};

    fn cochain_of(t: &GridTiling) -> EdgeCochain {
        edge_cochain(&vertex_labels(t).unwrap()).unwrap()
    }

    #[test]
    fn wrap_edges_carry_axis_colors() {
        let psi = EdgeCochain::standard(2, 2);
        let col = color_edges(&psi).unwrap();
        let t = col.torus();
        for slot in 0..t.edge_count() {
            let e = t.edge_at(slot);
            let expected = if t.coords(e.tail)[e.dir] == 1 {
                Color::Axis(e.dir + 1)
            } else {
                Color::White
            };
            assert_eq!(col.color(e), expected);
        }
    }

    #[test]
    fn diagonal_value_is_not_axial() {
        let mut psi = EdgeCochain::standard(2, 2);
        psi.set(Edge { tail: 0, dir: 0 }, LatticeVector::new(vec![1, 1]));
        assert!(matches!(
            color_edges(&psi),
            Err(CohomologyError::NonAxialEdge { .. })
        ));
    }

    #[test]
    fn one_dimensional_tilings_always_color() {
        for u in -2..=2 {
            let t = GridTiling::new(
                1,
                2,
                vec![LatticeVector::new(vec![0]), LatticeVector::new(vec![u])],
            )
            .unwrap();
            let cls = classify_cells(&color_edges(&cochain_of(&t)).unwrap()).unwrap();
            assert!(cls
                .colors()
                .iter()
                .all(|c| matches!(c, Color::White | Color::Axis(1))));
        }
    }

    #[test]
    fn single_cell_square_is_mixed() {
        let col = color_edges(&cochain_of(&GridTiling::trivial(2, 1))).unwrap();
        assert_eq!(
            classify_cells(&col),
            Err(CohomologyError::MixedCell {
                cell: vec![0, 0],
                colors: (1, 2)
            })
        );
    }

    #[test]
    fn all_white_coloring() {
        let zero = EdgeCochain::from_values(2, 3, vec![LatticeVector::zero(2); 18]).unwrap();
        let cls = classify_cells(&color_edges(&zero).unwrap()).unwrap();
        assert!(cls.colors().iter().all(|&c| c == Color::White));
    }
}
