//! The symmetry group of grid tilings: signed coordinate permutations combined
//! with translations of the torus by whole cells, acting on the fine grid of
//! side 1/m.

use crate::lattice_core::{cell_coords, cell_index, normalize_tiling, GridTiling, LatticeVector};

/// y_l = sign_l · x_{perm[l]}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    neg: Vec<bool>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: (0..n).collect(),
            neg: vec![false; n],
        }
    }

    /// Panics unless `perm` is a permutation of 0..n with matching `neg`.
    pub fn new(perm: Vec<usize>, neg: Vec<bool>) -> Self {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            assert!(p < perm.len() && !seen[p], "not a permutation");
            seen[p] = true;
        }
        assert_eq!(perm.len(), neg.len());
        SignedPermutation { perm, neg }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_unsigned(&self) -> bool {
        self.neg.iter().all(|&s| !s)
    }

    pub fn apply(&self, x: &LatticeVector) -> LatticeVector {
        LatticeVector::new(self.apply_slice(x.coords()))
    }

    fn apply_slice(&self, x: &[i64]) -> Vec<i64> {
        self.perm
            .iter()
            .zip(&self.neg)
            .map(|(&p, &s)| if s { -x[p] } else { x[p] })
            .collect()
    }
}

/// All 2^n · n! signed permutations, unsigned ones first.
pub fn signed_permutations(n: usize) -> Vec<SignedPermutation> {
    let perms = permutations(n);
    let mut out = Vec::with_capacity(perms.len() << n);
    for mask in 0..(1usize << n) {
        for p in &perms {
            out.push(SignedPermutation {
                perm: p.clone(),
                neg: (0..n).map(|l| mask >> l & 1 == 1).collect(),
            });
        }
    }
    out
}

/// Permutations of 0..n in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Image of the tiling under x ↦ g·x + shift/m, renormalized so the origin
/// cell has translation 0. The difference set of the image is g applied to
/// the difference set of `t`.
pub fn transform_tiling(t: &GridTiling, g: &SignedPermutation, shift: &[usize]) -> GridTiling {
    let (n, m) = (t.dim(), t.resolution());
    assert_eq!(g.dim(), n);
    assert_eq!(shift.len(), n);
    let mi = m as i64;
    let mut u = vec![LatticeVector::zero(n); t.cell_count()];
    for cell in 0..t.cell_count() {
        let j = cell_coords(n, m, cell);
        // Lower corner of the cell in units of 1/m.
        let p: Vec<i64> = (0..n)
            .map(|l| j[l] as i64 + mi * t.translation(cell)[l])
            .collect();
        let q: Vec<i64> = g
            .apply_slice(&p)
            .into_iter()
            .enumerate()
            .map(|(l, c)| c - g.neg[l] as i64 + shift[l] as i64)
            .collect();
        let jj: Vec<usize> = q.iter().map(|c| c.rem_euclid(mi) as usize).collect();
        u[cell_index(m, &jj)] = LatticeVector::new(q.iter().map(|c| c.div_euclid(mi)).collect());
    }
    normalize_tiling(&GridTiling::new(n, m, u).expect("image of a tiling is a tiling"))
}

/// Calls `f` on every group element (signed permutation, cell shift).
pub fn for_each_symmetry<F>(n: usize, m: usize, mut f: F)
where
    F: FnMut(&SignedPermutation, &[usize]),
{
    let cells = m.pow(n as u32);
    for g in signed_permutations(n) {
        for s in 0..cells {
            f(&g, &cell_coords(n, m, s));
        }
    }
}

/// Sort key of a tiling: translations in cell order, each coordinate ranked
/// 0, 1, -1, 2, -2, ... so that zero translations come first.
pub fn serial_key(t: &GridTiling) -> Vec<(u64, bool)> {
    t.translations()
        .iter()
        .flat_map(|u| u.coords().iter().map(|&c| (c.unsigned_abs(), c < 0)))
        .collect()
}

/// The orbit member with the least `serial_key`.
pub fn canonical_form(t: &GridTiling) -> GridTiling {
    let mut best = normalize_tiling(t);
    let mut best_key = serial_key(&best);
    for_each_symmetry(t.dim(), t.resolution(), |g, s| {
        let img = transform_tiling(t, g, s);
        let key = serial_key(&img);
        if key < best_key {
            best = img;
            best_key = key;
        }
    });
    best
}
