use num_integer::Integer;

use super::{LatticeError, LatticeSet, LatticeVector, Sublattice};

/// n linearly independent lines through the origin, each given by a primitive
/// integer direction whose first nonzero coordinate is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineFamily {
    dirs: Vec<LatticeVector>,
}

impl LineFamily {
    /// The coordinate axes of Z^n.
    pub fn axes(n: usize) -> Self {
        LineFamily {
            dirs: (0..n).map(|l| LatticeVector::unit(n, l)).collect(),
        }
    }

    /// Builds a family from arbitrary nonzero directions. Each direction is
    /// divided by the gcd of its coordinates and sign-normalized.
    pub fn new(dirs: Vec<LatticeVector>) -> Result<Self, LatticeError> {
        let n = dirs
            .first()
            .map(|d| d.dim())
            .ok_or(LatticeError::ZeroDimension)?;
        if dirs.len() != n {
            return Err(LatticeError::WrongLineCount {
                expected: n,
                found: dirs.len(),
            });
        }
        let mut canon = Vec::with_capacity(n);
        for d in dirs {
            if d.dim() != n {
                return Err(LatticeError::DimensionMismatch {
                    expected: n,
                    found: d.dim(),
                });
            }
            canon.push(primitive(&d).ok_or(LatticeError::ZeroDirection)?);
        }
        if Sublattice::from_generators(n, &canon).rank() != n {
            return Err(LatticeError::DependentLines);
        }
        Ok(LineFamily { dirs: canon })
    }

    pub fn dim(&self) -> usize {
        self.dirs.len()
    }

    pub fn dirs(&self) -> &[LatticeVector] {
        &self.dirs
    }

    /// True iff `z` is an integer multiple of one of the directions.
    pub fn contains(&self, z: &LatticeVector) -> bool {
        if z.is_zero() {
            return true;
        }
        self.dirs.iter().any(|d| is_multiple_of_primitive(z, d))
    }

    /// The same family as a set of lines after mapping each direction by `f`.
    pub fn map<F>(&self, f: F) -> LineFamily
    where
        F: Fn(&LatticeVector) -> LatticeVector,
    {
        let dirs = self
            .dirs
            .iter()
            .map(|d| primitive(&f(d)).expect("map sent a direction to 0"))
            .collect();
        LineFamily { dirs }
    }

    /// Equality as sets of lines, ignoring order.
    pub fn same_lines(&self, other: &LineFamily) -> bool {
        let mut a = self.dirs.clone();
        let mut b = other.dirs.clone();
        a.sort();
        b.sort();
        a == b
    }
}

/// Divides out the content and flips the sign so the first nonzero coordinate is positive.
fn primitive(d: &LatticeVector) -> Option<LatticeVector> {
    let g = d.coords().iter().fold(0i64, |g, &c| g.gcd(&c));
    if g == 0 {
        return None;
    }
    let first = d.coords().iter().copied().find(|&c| c != 0)?;
    let s = if first < 0 { -g } else { g };
    Some(LatticeVector::new(
        d.coords().iter().map(|&c| c / s).collect(),
    ))
}

// For primitive d, z is an integer multiple of d iff all 2x2 minors of [z; d] vanish.
fn is_multiple_of_primitive(z: &LatticeVector, d: &LatticeVector) -> bool {
    let n = z.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            if (z[i] as i128) * (d[j] as i128) != (z[j] as i128) * (d[i] as i128) {
                return false;
            }
        }
    }
    true
}

/// True iff every element of `a` lies on one of the lines.
pub fn is_confined(a: &LatticeSet, lines: &LineFamily) -> bool {
    first_unconfined(a, lines).is_none()
}

/// The lexicographically largest element of `a` lying on none of the lines.
pub fn first_unconfined<'a>(a: &'a LatticeSet, lines: &LineFamily) -> Option<&'a LatticeVector> {
    assert_eq!(
        a.dim(),
        lines.dim(),
        "dimension mismatch between set and lines"
    );
    a.iter().rev().find(|z| !lines.contains(z))
}
