//! Subgroups of Z^n kept in row-style Hermite normal form.
//!
//! Generators are folded in one at a time with extended-gcd row operations, so
//! the stored basis never has more than n rows. Arithmetic is on `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LatticeVector;

/// A subgroup of Z^n given by an echelon basis.
///
/// `rows[c]` holds the basis row whose pivot sits in column `c`, if any. Pivots
/// are positive and entries above a pivot are reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    n: usize,
    rows: Vec<Option<Vec<BigInt>>>,
}

impl Sublattice {
    pub fn zero(n: usize) -> Self {
        Sublattice {
            n,
            rows: vec![None; n],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Sublattice::zero(n);
        for l in 0..n {
            s.insert(&LatticeVector::unit(n, l));
        }
        s
    }

    pub fn from_generators<'a, I>(n: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = &'a LatticeVector>,
    {
        let mut s = Sublattice::zero(n);
        for g in gens {
            s.insert(g);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: &LatticeVector) {
        assert_eq!(v.dim(), self.n, "generator dimension mismatch");
        let row: Vec<BigInt> = v.coords().iter().map(|&c| BigInt::from(c)).collect();
        self.insert_row(row);
        self.reduce();
    }

    fn insert_row(&mut self, mut v: Vec<BigInt>) {
        for c in 0..self.n {
            if v[c].is_zero() {
                continue;
            }
            match self.rows[c].take() {
                None => {
                    if v[c].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.rows[c] = Some(v);
                    return;
                }
                Some(r) => {
                    let eg = r[c].extended_gcd(&v[c]);
                    let (g, a, b) = (eg.gcd, eg.x, eg.y);
                    let rq = &r[c] / &g;
                    let vq = &v[c] / &g;
                    let combined: Vec<BigInt> =
                        r.iter().zip(&v).map(|(ri, vi)| &a * ri + &b * vi).collect();
                    let rest: Vec<BigInt> = r
                        .iter()
                        .zip(&v)
                        .map(|(ri, vi)| &rq * vi - &vq * ri)
                        .collect();
                    debug_assert!(rest[c].is_zero());
                    let mut combined = combined;
                    if combined[c].is_negative() {
                        combined.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.rows[c] = Some(combined);
                    v = rest;
                }
            }
        }
    }

    fn reduce(&mut self) {
        for c in 0..self.n {
            let Some(pivot_row) = self.rows[c].clone() else {
                continue;
            };
            let p = pivot_row[c].clone();
            for r in 0..c {
                if let Some(row) = self.rows[r].as_mut() {
                    let q = row[c].div_floor(&p);
                    if !q.is_zero() {
                        for (x, y) in row.iter_mut().zip(&pivot_row) {
                            *x -= &q * y;
                        }
                    }
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// True iff the subgroup is all of Z^n (full rank, every pivot 1).
    pub fn is_full(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(c, r)| matches!(r, Some(row) if row[c].is_one()))
    }

    /// Index in Z^n when the subgroup has full rank.
    pub fn index(&self) -> Option<BigInt> {
        let mut det = BigInt::one();
        for (c, r) in self.rows.iter().enumerate() {
            det *= &r.as_ref()?[c];
        }
        Some(det)
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        let mut w: Vec<BigInt> = v.coords().iter().map(|&c| BigInt::from(c)).collect();
        for c in 0..self.n {
            if w[c].is_zero() {
                continue;
            }
            let Some(row) = &self.rows[c] else {
                return false;
            };
            let (q, rem) = w[c].div_rem(&row[c]);
            if !rem.is_zero() {
                return false;
            }
            for (x, y) in w.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        true
    }

    /// The HNF basis rows, top to bottom. Panics if an entry leaves the i64 range.
    pub fn basis(&self) -> Vec<LatticeVector> {
        self.rows
            .iter()
            .flatten()
            .map(|row| {
                LatticeVector::new(
                    row.iter()
                        .map(|x| x.to_i64().expect("HNF entry exceeds i64"))
                        .collect(),
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::new(c.to_vec())
    }

    #[test]
    fn standard_basis_is_full() {
        let s = Sublattice::from_generators(2, &[v(&[1, 0]), v(&[0, 1])]);
        assert!(s.is_full());
        assert_eq!(s.index().unwrap(), BigInt::from(1));
    }

    #[test]
    fn even_lattice_has_index_four() {
        let s = Sublattice::from_generators(2, &[v(&[2, 0]), v(&[0, 2])]);
        assert!(!s.is_full());
        assert_eq!(s.index().unwrap(), BigInt::from(4));
        assert!(s.contains(&v(&[4, -2])));
        assert!(!s.contains(&v(&[1, 0])));
    }

    #[test]
    fn coprime_generators_fill_z() {
        let s = Sublattice::from_generators(1, &[v(&[6]), v(&[10]), v(&[15])]);
        assert!(s.is_full());
        assert_eq!(s.basis(), vec![v(&[1])]);
    }

    #[test]
    fn canonical_basis_independent_of_order() {
        let gens = [v(&[3, 1]), v(&[1, 2]), v(&[4, 3])];
        let a = Sublattice::from_generators(2, &gens);
        let rev: Vec<_> = gens.iter().rev().cloned().collect();
        let b = Sublattice::from_generators(2, &rev);
        assert_eq!(a.basis(), b.basis());
        // det [[3,1],[1,2]] = 5
        assert_eq!(a.index().unwrap(), BigInt::from(5));
        assert_eq!(a.basis(), vec![v(&[1, 2]), v(&[0, 5])]);
    }

    #[test]
    fn rank_deficient() {
        let s = Sublattice::from_generators(3, &[v(&[2, 4, 0]), v(&[3, 6, 0])]);
        assert_eq!(s.rank(), 1);
        assert_eq!(s.basis(), vec![v(&[1, 2, 0])]);
        assert!(s.index().is_none());
        assert!(Sublattice::zero(3).is_zero());
        assert!(Sublattice::full(3).is_full());
    }
}
