//! Test support: cochains built from arbitrary vertex functions.
//!
//! A vertex function w on the torus together with a gauge (g_1..g_n) gives
//! grid labels v(J) = w(J mod m) + Σ_{j_l = m} g_l. The gauge g_l = -e_l
//! reproduces the labels of the tiling u = w; other gauges give cocycles with
//! generator gains g_l that no tiling produces.

use crate::lattice_core::{for_each_in_product, LatticeVector};

use super::cochain::{edge_cochain, EdgeCochain, VertexLabeling};
use super::coloring::{classify_cells, color_edges, CellClassification, EdgeColoring};
use super::torus::{Edge, Torus};

/// g_l = -e_l, the gauge of tiling labels.
pub fn standard_gauge(n: usize) -> Vec<LatticeVector> {
    (0..n).map(|l| -&LatticeVector::unit(n, l)).collect()
}

pub fn gauged_labels(
    n: usize,
    m: usize,
    w: &[LatticeVector],
    gauge: &[LatticeVector],
) -> VertexLabeling {
    let torus = Torus::new(n, m);
    let grid = Torus::new(n, m + 1);
    assert_eq!(w.len(), torus.size());
    assert_eq!(gauge.len(), n);
    let values = (0..grid.size())
        .map(|g| {
            let j = grid.coords(g);
            let wrapped: Vec<usize> = j.iter().map(|&c| c % m).collect();
            let mut v = w[torus.index(&wrapped)].clone();
            for (l, &c) in j.iter().enumerate() {
                if c == m {
                    v = &v + &gauge[l];
                }
            }
            v
        })
        .collect();
    VertexLabeling::from_values(n, m, values).expect("shape")
}

/// Enumerates every vertex function w with w(0) = 0 and coordinates in
/// [-bound, bound] whose gauged cochain colors and classifies cleanly, calling
/// `f` for each. Returns the number of cochains emitted.
pub fn for_each_classifiable_cocycle<F>(
    n: usize,
    m: usize,
    gauge: &[LatticeVector],
    bound: i64,
    mut f: F,
) -> u64
where
    F: FnMut(&EdgeCochain, &EdgeColoring, &CellClassification),
{
    let torus = Torus::new(n, m);
    let size = torus.size();
    // Edges and cells become checkable once their largest vertex is assigned.
    let mut edges_at: Vec<Vec<Edge>> = vec![Vec::new(); size];
    for slot in 0..torus.edge_count() {
        let e = torus.edge_at(slot);
        edges_at[e.tail.max(torus.head(e))].push(e);
    }
    let mut cells_at: Vec<Vec<usize>> = vec![Vec::new(); size];
    for cell in 0..size {
        let last = *torus.cell_vertices(cell).iter().max().expect("nonempty");
        cells_at[last].push(cell);
    }
    let mut candidates: Vec<Vec<i64>> = Vec::new();
    for_each_in_product(&vec![-bound..=bound; n], |p| candidates.push(p.to_vec()));

    let mut search = Enumerator {
        torus,
        gauge: gauge.iter().map(|g| g.coords().to_vec()).collect(),
        edges_at,
        cells_at,
        candidates,
        w: vec![vec![0; n]; size],
        emitted: 0,
    };
    search.run(&mut f);
    search.emitted
}

struct Enumerator {
    torus: Torus,
    gauge: Vec<Vec<i64>>,
    edges_at: Vec<Vec<Edge>>,
    cells_at: Vec<Vec<usize>>,
    candidates: Vec<Vec<i64>>,
    w: Vec<Vec<i64>>,
    emitted: u64,
}

impl Enumerator {
    fn edge_value(&self, e: Edge) -> Vec<i64> {
        let h = self.torus.head(e);
        let wraps = self.torus.coords(e.tail)[e.dir] == self.torus.m - 1;
        (0..self.torus.n)
            .map(|l| {
                self.w[h][l] - self.w[e.tail][l] + if wraps { self.gauge[e.dir][l] } else { 0 }
            })
            .collect()
    }

    // 0 for white, k for color-k, None if not axial.
    fn edge_color(&self, e: Edge) -> Option<usize> {
        let v = self.edge_value(e);
        let mut nz = v.iter().enumerate().filter(|(_, &c)| c != 0);
        match (nz.next(), nz.next()) {
            (None, _) => Some(0),
            (Some((l, _)), None) => Some(l + 1),
            _ => None,
        }
    }

    fn consistent(&self, k: usize) -> bool {
        if self.edges_at[k]
            .iter()
            .any(|&e| self.edge_color(e).is_none())
        {
            return false;
        }
        self.cells_at[k].iter().all(|&cell| {
            let mut seen = 0;
            self.torus.cell_edges(cell).into_iter().all(|e| {
                let c = self.edge_color(e).expect("checked axial");
                if c == 0 || seen == 0 || seen == c {
                    seen = seen.max(c);
                    true
                } else {
                    false
                }
            })
        })
    }

    fn run<F>(&mut self, f: &mut F)
    where
        F: FnMut(&EdgeCochain, &EdgeColoring, &CellClassification),
    {
        // Vertex 0 is pinned to 0; only self-loops (m = 1) complete there.
        if self.consistent(0) {
            self.descend(1, f);
        }
    }

    fn descend<F>(&mut self, k: usize, f: &mut F)
    where
        F: FnMut(&EdgeCochain, &EdgeColoring, &CellClassification),
    {
        if k == self.torus.size() {
            self.emit(f);
            return;
        }
        for i in 0..self.candidates.len() {
            self.w[k].clone_from(&self.candidates[i]);
            if self.consistent(k) {
                self.descend(k + 1, f);
            }
        }
    }

    fn emit<F>(&mut self, f: &mut F)
    where
        F: FnMut(&EdgeCochain, &EdgeColoring, &CellClassification),
    {
        let n = self.torus.n;
        let w: Vec<LatticeVector> = self
            .w
            .iter()
            .map(|c| LatticeVector::new(c.clone()))
            .collect();
        let gauge: Vec<LatticeVector> = self
            .gauge
            .iter()
            .map(|g| LatticeVector::new(g.clone()))
            .collect();
        let psi = edge_cochain(&gauged_labels(n, self.torus.m, &w, &gauge))
            .expect("gauged labels wrap consistently");
        let coloring = color_edges(&psi).expect("edges checked axial");
        let cls = classify_cells(&coloring).expect("cells checked monochromatic");
        self.emitted += 1;
        f(&psi, &coloring, &cls);
    }
}
