use crate::lattice_core::{cell_coords, cell_index};

/// Index arithmetic on the m-subdivided n-torus. Vertices and cells share
/// indices: vertex J is the lower corner of cell J.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Torus {
    pub n: usize,
    pub m: usize,
}

/// A directed torus edge from vertex `tail` to `tail + e_dir`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub tail: usize,
    pub dir: usize,
}

/// The facet orthogonal to `axis` through the lower corner of `cell`, shared by
/// `cell` and its neighbour at `cell - e_axis`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub cell: usize,
    pub axis: usize,
}

impl Torus {
    pub fn new(n: usize, m: usize) -> Self {
        assert!(n >= 1 && m >= 1);
        Torus { n, m }
    }

    pub fn size(&self) -> usize {
        self.m.pow(self.n as u32)
    }

    pub fn edge_count(&self) -> usize {
        self.size() * self.n
    }

    pub fn coords(&self, idx: usize) -> Vec<usize> {
        cell_coords(self.n, self.m, idx)
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        cell_index(self.m, coords)
    }

    /// Moves one step along `axis`, wrapping around.
    pub fn shift(&self, idx: usize, axis: usize, forward: bool) -> usize {
        let stride = self.m.pow((self.n - 1 - axis) as u32);
        let j = (idx / stride) % self.m;
        let nj = if forward {
            (j + 1) % self.m
        } else {
            (j + self.m - 1) % self.m
        };
        idx - j * stride + nj * stride
    }

    /// Adds the 0/1 offsets selected by `mask` (bit l for axis l).
    pub fn offset(&self, idx: usize, mask: usize) -> usize {
        (0..self.n)
            .filter(|l| mask >> l & 1 == 1)
            .fold(idx, |i, l| self.shift(i, l, true))
    }

    pub fn edge_slot(&self, e: Edge) -> usize {
        e.tail * self.n + e.dir
    }

    pub fn edge_at(&self, slot: usize) -> Edge {
        Edge {
            tail: slot / self.n,
            dir: slot % self.n,
        }
    }

    pub fn head(&self, e: Edge) -> usize {
        self.shift(e.tail, e.dir, true)
    }

    /// The n·2^(n-1) edges of a cell (duplicates collapse when m = 1).
    pub fn cell_edges(&self, cell: usize) -> Vec<Edge> {
        let mut out = Vec::new();
        for dir in 0..self.n {
            for mask in 0..(1usize << self.n) {
                if mask >> dir & 1 == 0 {
                    out.push(Edge {
                        tail: self.offset(cell, mask),
                        dir,
                    });
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// The corners of a cell.
    pub fn cell_vertices(&self, cell: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..(1usize << self.n))
            .map(|mask| self.offset(cell, mask))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Edges lying in a facet.
    pub fn face_edges(&self, face: Face) -> Vec<Edge> {
        let mut out = Vec::new();
        for dir in (0..self.n).filter(|&d| d != face.axis) {
            for mask in 0..(1usize << self.n) {
                if mask >> dir & 1 == 0 && mask >> face.axis & 1 == 0 {
                    out.push(Edge {
                        tail: self.offset(face.cell, mask),
                        dir,
                    });
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifting_wraps() {
        let t = Torus::new(2, 3);
        let c = t.index(&[2, 0]);
        assert_eq!(t.coords(t.shift(c, 0, true)), vec![0, 0]);
        assert_eq!(t.coords(t.shift(c, 1, false)), vec![2, 2]);
        let t1 = Torus::new(2, 1);
        assert_eq!(t1.shift(0, 1, true), 0);
    }

    #[test]
    fn cell_edge_counts() {
        assert_eq!(Torus::new(2, 3).cell_edges(0).len(), 4);
        assert_eq!(Torus::new(3, 2).cell_edges(0).len(), 12);
        // m = 1: the single cell's edges are the n loops at the single vertex.
        assert_eq!(Torus::new(2, 1).cell_edges(0).len(), 2);
    }

    #[test]
    fn face_edges_in_two_and_three_dimensions() {
        let t = Torus::new(2, 3);
        assert_eq!(
            t.face_edges(Face {
                cell: t.index(&[1, 1]),
                axis: 0
            }),
            vec![Edge {
                tail: t.index(&[1, 1]),
                dir: 1
            }]
        );
        assert_eq!(
            Torus::new(3, 3).face_edges(Face { cell: 0, axis: 2 }).len(),
            4
        );
    }
}
