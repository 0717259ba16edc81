use crate::lattice_core::{GridTiling, LatticeVector};

use super::torus::{Edge, Torus};
use super::CohomologyError;

/// Integer labels on the (m+1)^n grid vertices of the unit cube, indexed
/// row-major with base m+1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLabeling {
    n: usize,
    m: usize,
    values: Vec<LatticeVector>,
}

impl VertexLabeling {
    /// Wraps hand-made labels; nothing beyond the shape is checked.
    pub fn from_values(
        n: usize,
        m: usize,
        values: Vec<LatticeVector>,
    ) -> Result<Self, CohomologyError> {
        if n == 0
            || m == 0
            || values.len() != (m + 1).pow(n as u32)
            || values.iter().any(|v| v.dim() != n)
        {
            return Err(CohomologyError::ShapeMismatch);
        }
        Ok(VertexLabeling { n, m, values })
    }

    pub fn torus(&self) -> Torus {
        Torus::new(self.n, self.m)
    }

    pub fn get(&self, grid: &[usize]) -> &LatticeVector {
        &self.values[grid.iter().fold(0, |acc, &c| acc * (self.m + 1) + c)]
    }

    pub fn values(&self) -> &[LatticeVector] {
        &self.values
    }
}

/// Labels v_J for J ∈ {0..m}^n: u_J inside, and u at the wrapped index minus
/// e_l for every coordinate with j_l = m.
pub fn vertex_labels(t: &GridTiling) -> Result<VertexLabeling, CohomologyError> {
    if !t.is_normalized() {
        return Err(CohomologyError::NotNormalized);
    }
    let (n, m) = (t.dim(), t.resolution());
    let grid = Torus::new(n, m + 1);
    let values = (0..grid.size())
        .map(|g| {
            let j = grid.coords(g);
            let wrapped: Vec<usize> = j.iter().map(|&c| c % m).collect();
            let mut v = t.translation(t.cell_index(&wrapped)).clone();
            for (l, &c) in j.iter().enumerate() {
                if c == m {
                    v = &v - &LatticeVector::unit(n, l);
                }
            }
            v
        })
        .collect();
    Ok(VertexLabeling { n, m, values })
}

/// A Z^n-valued labeling of the directed edges of the torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCochain {
    torus: Torus,
    values: Vec<LatticeVector>,
}

impl EdgeCochain {
    /// Values indexed by `Torus::edge_slot`.
    pub fn from_values(
        n: usize,
        m: usize,
        values: Vec<LatticeVector>,
    ) -> Result<Self, CohomologyError> {
        let torus = Torus::new(n, m);
        if values.len() != torus.edge_count() || values.iter().any(|v| v.dim() != n) {
            return Err(CohomologyError::ShapeMismatch);
        }
        Ok(EdgeCochain { torus, values })
    }

    /// The cochain of the all-zero tiling; its loop gains are minus the winding vector.
    pub fn standard(n: usize, m: usize) -> Self {
        edge_cochain(&vertex_labels(&GridTiling::trivial(n, m)).expect("normalized"))
            .expect("tiling labels satisfy the wrap identities")
    }

    pub fn torus(&self) -> Torus {
        self.torus
    }

    pub fn value(&self, e: Edge) -> &LatticeVector {
        &self.values[self.torus.edge_slot(e)]
    }

    pub fn values(&self) -> &[LatticeVector] {
        &self.values
    }

    pub fn set(&mut self, e: Edge, value: LatticeVector) {
        let slot = self.torus.edge_slot(e);
        self.values[slot] = value;
    }
}

/// ψ(J, l) = v(J + e_l) - v(J) on every grid edge, folded onto the torus.
/// Grid edges on opposite facets must agree.
pub fn edge_cochain(v: &VertexLabeling) -> Result<EdgeCochain, CohomologyError> {
    let (n, m) = (v.n, v.m);
    let torus = Torus::new(n, m);
    let grid = Torus::new(n, m + 1);
    let mut values: Vec<Option<LatticeVector>> = vec![None; torus.edge_count()];
    for g in 0..grid.size() {
        let j = grid.coords(g);
        for l in 0..n {
            if j[l] == m {
                continue;
            }
            let mut head = j.clone();
            head[l] += 1;
            let value = v.get(&head) - v.get(&j);
            let tail: Vec<usize> = j.iter().map(|&c| c % m).collect();
            let edge = Edge {
                tail: torus.index(&tail),
                dir: l,
            };
            let slot = torus.edge_slot(edge);
            match &values[slot] {
                None => values[slot] = Some(value),
                Some(prev) if *prev == value => {}
                Some(prev) => {
                    return Err(CohomologyError::WrapMismatch {
                        tail: tail.clone(),
                        dir: l,
                        first: prev.clone(),
                        second: value,
                    })
                }
            }
        }
    }
    Ok(EdgeCochain {
        torus,
        values: values
            .into_iter()
            .map(|x| x.expect("every torus edge has a grid lift"))
            .collect(),
    })
}

/// True iff ψ(x→x+e_l) + ψ(x+e_l→x+e_l+e_k) - ψ(x+e_k→x+e_l+e_k) - ψ(x→x+e_k) = 0
/// on every 2-face of the torus.
pub fn verify_cocycle(psi: &EdgeCochain) -> bool {
    first_cocycle_failure(psi).is_none()
}

/// The first 2-face (vertex, l, k) where the alternating sum is nonzero.
pub fn first_cocycle_failure(psi: &EdgeCochain) -> Option<(usize, usize, usize)> {
    let t = psi.torus;
    for x in 0..t.size() {
        for l in 0..t.n {
            for k in (l + 1)..t.n {
                let xl = t.shift(x, l, true);
                let xk = t.shift(x, k, true);
                let sum = &(psi.value(Edge { tail: x, dir: l })
                    + psi.value(Edge { tail: xl, dir: k }))
                    - &(psi.value(Edge { tail: xk, dir: l }) + psi.value(Edge { tail: x, dir: k }));
                if !sum.is_zero() {
                    return Some((x, l, k));
                }
            }
        }
    }
    None
}

/// One step of an edge path: leave `vertex` along `dir`, with or against the edge orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub vertex: usize,
    pub dir: usize,
    pub forward: bool,
}

impl Step {
    pub fn head(&self, t: &Torus) -> usize {
        t.shift(self.vertex, self.dir, self.forward)
    }

    fn edge(&self, t: &Torus) -> Edge {
        if self.forward {
            Edge {
                tail: self.vertex,
                dir: self.dir,
            }
        } else {
            Edge {
                tail: t.shift(self.vertex, self.dir, false),
                dir: self.dir,
            }
        }
    }
}

/// The loop of m forward edges along axis `dir` through vertex 0.
pub fn generator_loop(t: &Torus, dir: usize) -> Vec<Step> {
    let mut x = 0;
    (0..t.m)
        .map(|_| {
            let s = Step {
                vertex: x,
                dir,
                forward: true,
            };
            x = s.head(t);
            s
        })
        .collect()
}

/// The boundary of the 2-face spanned by axes l and k at vertex x.
pub fn face_loop(t: &Torus, x: usize, l: usize, k: usize) -> Vec<Step> {
    let xl = t.shift(x, l, true);
    let xlk = t.shift(xl, k, true);
    let xk = t.shift(x, k, true);
    vec![
        Step {
            vertex: x,
            dir: l,
            forward: true,
        },
        Step {
            vertex: xl,
            dir: k,
            forward: true,
        },
        Step {
            vertex: xlk,
            dir: l,
            forward: false,
        },
        Step {
            vertex: xk,
            dir: k,
            forward: false,
        },
    ]
}

/// Sum of ψ along a closed path, counting backward steps negatively.
pub fn loop_gain(psi: &EdgeCochain, path: &[Step]) -> Result<LatticeVector, CohomologyError> {
    let t = psi.torus;
    let mut gain = LatticeVector::zero(t.n);
    for (i, step) in path.iter().enumerate() {
        let next = path[(i + 1) % path.len()].vertex;
        if step.head(&t) != next {
            return Err(CohomologyError::NotClosed { position: i });
        }
        let value = psi.value(step.edge(&t));
        gain = if step.forward {
            &gain + value
        } else {
            &gain - value
        };
    }
    Ok(gain)
}

/// Gains of the n generator loops.
pub fn generator_gains(psi: &EdgeCochain) -> Vec<LatticeVector> {
    let t = psi.torus;
    (0..t.n)
        .map(|l| loop_gain(psi, &generator_loop(&t, l)).expect("generator loops are closed"))
        .collect()
}

/// The class of a loop in H_1(T) = Z^n, read off as minus its gain. Requires
/// a cocycle whose generator gains are exactly -e_l.
pub fn homotopy_class(psi: &EdgeCochain, path: &[Step]) -> Result<LatticeVector, CohomologyError> {
    if !verify_cocycle(psi) {
        return Err(CohomologyError::NotCocycle);
    }
    let n = psi.torus.n;
    for (l, g) in generator_gains(psi).into_iter().enumerate() {
        if g != -&LatticeVector::unit(n, l) {
            return Err(CohomologyError::BadGauge { axis: l, gain: g });
        }
    }
    Ok(-&loop_gain(psi, path)?)
}
