use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use super::LatticeError;

/// A point of Z^n.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    /// Panics if `coords` is empty; lattice vectors always live in dimension n >= 1.
    pub fn new(coords: Vec<i64>) -> Self {
        assert!(!coords.is_empty(), "lattice vectors need dimension >= 1");
        LatticeVector(coords)
    }

    pub fn zero(n: usize) -> Self {
        LatticeVector::new(vec![0; n])
    }

    /// The standard basis vector e_l (0-based axis).
    pub fn unit(n: usize, axis: usize) -> Self {
        let mut v = vec![0; n];
        v[axis] = 1;
        LatticeVector::new(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The axis this vector lies on, if it is a nonzero multiple of a single basis vector.
    pub fn axis(&self) -> Option<usize> {
        let mut nonzero = self.0.iter().enumerate().filter(|(_, &c)| c != 0);
        match (nonzero.next(), nonzero.next()) {
            (Some((l, _)), None) => Some(l),
            _ => None,
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        LatticeVector(self.0.iter().map(|&c| c * k).collect())
    }

    /// Applies a coordinate permutation: output coordinate `l` is input coordinate `perm[l]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        LatticeVector(perm.iter().map(|&p| self.0[p]).collect())
    }
}

impl Index<usize> for LatticeVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite set of lattice vectors of a fixed dimension, iterated in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSet {
    dim: usize,
    elems: BTreeSet<LatticeVector>,
}

impl LatticeSet {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "lattice sets need dimension >= 1");
        LatticeSet {
            dim,
            elems: BTreeSet::new(),
        }
    }

    pub fn from_points<I>(dim: usize, points: I) -> Result<Self, LatticeError>
    where
        I: IntoIterator<Item = LatticeVector>,
    {
        if dim == 0 {
            return Err(LatticeError::ZeroDimension);
        }
        let mut set = LatticeSet::new(dim);
        for p in points {
            if p.dim() != dim {
                return Err(LatticeError::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            set.elems.insert(p);
        }
        Ok(set)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Panics on a dimension mismatch.
    pub fn insert(&mut self, p: LatticeVector) -> bool {
        assert_eq!(
            p.dim(),
            self.dim,
            "dimension mismatch inserting into lattice set"
        );
        self.elems.insert(p)
    }

    pub fn contains(&self, p: &LatticeVector) -> bool {
        self.elems.contains(p)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &LatticeVector> + ExactSizeIterator + '_ {
        self.elems.iter()
    }

    pub fn extend(&mut self, other: &LatticeSet) {
        assert_eq!(self.dim, other.dim);
        self.elems.extend(other.elems.iter().cloned());
    }

    pub fn is_subset(&self, other: &LatticeSet) -> bool {
        self.elems.is_subset(&other.elems)
    }

    pub fn contains_zero(&self) -> bool {
        self.elems.contains(&LatticeVector::zero(self.dim))
    }

    pub fn is_symmetric(&self) -> bool {
        self.elems.iter().all(|p| self.elems.contains(&-p))
    }

    /// Largest absolute coordinate over all elements (0 for the empty set).
    pub fn max_coord(&self) -> i64 {
        self.elems
            .iter()
            .flat_map(|p| p.coords().iter().map(|c| c.abs()))
            .max()
            .unwrap_or(0)
    }

    /// Image of the set under `f`, which must preserve the dimension.
    pub fn map<F>(&self, f: F) -> LatticeSet
    where
        F: Fn(&LatticeVector) -> LatticeVector,
    {
        LatticeSet {
            dim: self.dim,
            elems: self.elems.iter().map(f).collect(),
        }
    }
}

impl<'a> IntoIterator for &'a LatticeSet {
    type Item = &'a LatticeVector;
    type IntoIter = std::collections::btree_set::Iter<'a, LatticeVector>;
    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}
