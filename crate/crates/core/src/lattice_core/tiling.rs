//! Grid tilings: the m^n subcubes of the unit cube, each translated by an
//! integer vector. Cells are indexed row-major (last coordinate fastest).

use num_bigint::BigInt;

use super::boxes::{for_each_in_product, BoxUnion, Interval, Rational, RationalBox};
use super::{LatticeError, LatticeSet, LatticeVector};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridTiling {
    n: usize,
    m: usize,
    u: Vec<LatticeVector>,
}

impl GridTiling {
    pub fn new(n: usize, m: usize, u: Vec<LatticeVector>) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::ZeroDimension);
        }
        if m == 0 {
            return Err(LatticeError::ZeroResolution);
        }
        let cells = m
            .checked_pow(n as u32)
            .ok_or(LatticeError::InvalidTiling("m^n overflows".into()))?;
        if u.len() != cells {
            return Err(LatticeError::InvalidTiling(format!(
                "expected {cells} translations, found {}",
                u.len()
            )));
        }
        if let Some(bad) = u.iter().find(|v| v.dim() != n) {
            return Err(LatticeError::DimensionMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        Ok(GridTiling { n, m, u })
    }

    /// All translations zero: the unit cube cut into m^n pieces.
    pub fn trivial(n: usize, m: usize) -> Self {
        GridTiling::new(n, m, vec![LatticeVector::zero(n); m.pow(n as u32)]).expect("valid shape")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn resolution(&self) -> usize {
        self.m
    }

    pub fn cell_count(&self) -> usize {
        self.u.len()
    }

    pub fn translations(&self) -> &[LatticeVector] {
        &self.u
    }

    pub fn translation(&self, cell: usize) -> &LatticeVector {
        &self.u[cell]
    }

    pub fn cell_coords(&self, cell: usize) -> Vec<usize> {
        cell_coords(self.n, self.m, cell)
    }

    pub fn cell_index(&self, coords: &[usize]) -> usize {
        cell_index(self.m, coords)
    }

    pub fn is_normalized(&self) -> bool {
        self.u[0].is_zero()
    }
}

/// Row-major coordinates of a cell index in {0..m-1}^n.
pub fn cell_coords(n: usize, m: usize, mut cell: usize) -> Vec<usize> {
    let mut c = vec![0; n];
    for l in (0..n).rev() {
        c[l] = cell % m;
        cell /= m;
    }
    c
}

pub fn cell_index(m: usize, coords: &[usize]) -> usize {
    coords.iter().fold(0, |acc, &c| acc * m + c)
}

/// Subtracts the origin cell's translation from every cell.
pub fn normalize_tiling(t: &GridTiling) -> GridTiling {
    let base = t.u[0].clone();
    GridTiling {
        n: t.n,
        m: t.m,
        u: t.u.iter().map(|v| v - &base).collect(),
    }
}

/// One closed box per cell: [j_l/m, (j_l+1)/m] + (u_J)_l on each axis.
pub fn tiling_to_boxes(t: &GridTiling) -> BoxUnion {
    let m = BigInt::from(t.m);
    let boxes = (0..t.cell_count())
        .map(|cell| {
            let j = t.cell_coords(cell);
            let sides = (0..t.n)
                .map(|l| {
                    let shift = Rational::from_integer(t.u[cell][l].into());
                    let lo = Rational::new(BigInt::from(j[l]), m.clone()) + &shift;
                    let hi = Rational::new(BigInt::from(j[l] + 1), m.clone()) + &shift;
                    Interval::new(lo, hi).expect("cube side")
                })
                .collect();
            RationalBox::new(sides).expect("n >= 1")
        })
        .collect();
    BoxUnion::new(t.n, boxes).expect("tiling boxes are well formed")
}

/// Integer offsets t with t ∈ [(δ-1)/m, (δ+1)/m], where δ = j - j' is the
/// index gap between two cells along one axis. Always a subset of {-1, 0, 1}.
pub fn axis_offsets(delta: i64, m: usize) -> Vec<i64> {
    let m = m as i64;
    let mut out = Vec::with_capacity(3);
    if delta <= -(m - 1) {
        out.push(-1);
    }
    if (-1..=1).contains(&delta) {
        out.push(0);
    }
    if delta >= m - 1 {
        out.push(1);
    }
    out
}

/// Integer points of (cube a + u_a) - (cube b + u_b) for two cells of a tiling.
pub fn cell_pair_difference(t: &GridTiling, a: usize, b: usize, out: &mut LatticeSet) {
    let ja = t.cell_coords(a);
    let jb = t.cell_coords(b);
    let d = &t.u[a] - &t.u[b];
    let offsets: Vec<Vec<i64>> = (0..t.n)
        .map(|l| axis_offsets(ja[l] as i64 - jb[l] as i64, t.m))
        .collect();
    let ranges: Vec<_> = offsets.iter().map(|o| 0..=(o.len() as i64 - 1)).collect();
    for_each_in_product(&ranges, |pick| {
        let p = (0..t.n)
            .map(|l| d[l] + offsets[l][pick[l] as usize])
            .collect();
        out.insert(LatticeVector::new(p));
    });
}

/// (B - B) ∩ Z^n for the tiling's box union B, using per-axis offset tables
/// instead of rational arithmetic.
pub fn difference_set_tiling(t: &GridTiling) -> LatticeSet {
    let mut out = LatticeSet::new(t.n);
    for a in 0..t.cell_count() {
        for b in 0..t.cell_count() {
            cell_pair_difference(t, a, b, &mut out);
        }
    }
    out
}
