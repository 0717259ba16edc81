//! Finite unions of closed rational boxes and the integer points of their
//! difference sets. All arithmetic is exact; endpoints always belong to the box.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{LatticeError, LatticeSet, LatticeVector};

pub type Rational = BigRational;

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, LatticeError> {
    let bad = || LatticeError::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Reduced `"p/q"` form with a positive denominator (integers keep the `/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn floor_i64(r: &Rational) -> i64 {
    r.floor()
        .to_integer()
        .to_i64()
        .expect("coordinate exceeds i64")
}

fn ceil_i64(r: &Rational) -> i64 {
    r.ceil()
        .to_integer()
        .to_i64()
        .expect("coordinate exceeds i64")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, LatticeError> {
        if lo > hi {
            return Err(LatticeError::EmptyInterval {
                lo: format_rational(&lo),
                hi: format_rational(&hi),
            });
        }
        Ok(Interval { lo, hi })
    }

    pub fn from_ints(lo: i64, hi: i64) -> Self {
        Interval::new(
            Rational::from_integer(lo.into()),
            Rational::from_integer(hi.into()),
        )
        .expect("lo <= hi")
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Integers in the closed interval, as an inclusive range (possibly empty).
    pub fn integer_range(&self) -> std::ops::RangeInclusive<i64> {
        ceil_i64(&self.lo)..=floor_i64(&self.hi)
    }
}

/// A closed axis-aligned box with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalBox {
    sides: Vec<Interval>,
}

impl RationalBox {
    pub fn new(sides: Vec<Interval>) -> Result<Self, LatticeError> {
        if sides.is_empty() {
            return Err(LatticeError::ZeroDimension);
        }
        Ok(RationalBox { sides })
    }

    /// The unit cube [0,1]^n.
    pub fn unit(n: usize) -> Self {
        RationalBox {
            sides: vec![Interval::from_ints(0, 1); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[Interval] {
        &self.sides
    }

    pub fn contains_box(&self, other: &RationalBox) -> bool {
        self.sides
            .iter()
            .zip(&other.sides)
            .all(|(a, b)| a.lo <= b.lo && b.hi <= a.hi)
    }

    pub fn intersects(&self, other: &RationalBox) -> bool {
        self.sides
            .iter()
            .zip(&other.sides)
            .all(|(a, b)| a.lo <= b.hi && b.lo <= a.hi)
    }
}

/// A nonempty finite union of closed rational boxes of a common dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxUnion {
    n: usize,
    boxes: Vec<RationalBox>,
}

impl BoxUnion {
    pub fn new(n: usize, boxes: Vec<RationalBox>) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::ZeroDimension);
        }
        if boxes.is_empty() {
            return Err(LatticeError::EmptyUnion);
        }
        if let Some(b) = boxes.iter().find(|b| b.dim() != n) {
            return Err(LatticeError::DimensionMismatch {
                expected: n,
                found: b.dim(),
            });
        }
        Ok(BoxUnion { n, boxes })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn boxes(&self) -> &[RationalBox] {
        &self.boxes
    }

    /// Least common multiple of all endpoint denominators.
    pub fn common_denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.boxes
            .iter()
            .flat_map(|b| b.sides.iter().flat_map(|s| [s.lo.denom(), s.hi.denom()]))
            .fold(BigInt::one(), |acc, d| acc.lcm(d))
    }
}

/// Integer points of `b1 - b2`, computed axis by axis on the closed difference intervals.
pub fn integer_points_in_box_difference(b1: &RationalBox, b2: &RationalBox) -> LatticeSet {
    assert_eq!(b1.dim(), b2.dim(), "box dimension mismatch");
    let ranges: Vec<_> = b1
        .sides
        .iter()
        .zip(&b2.sides)
        .map(|(s1, s2)| {
            Interval {
                lo: &s1.lo - &s2.hi,
                hi: &s1.hi - &s2.lo,
            }
            .integer_range()
        })
        .collect();
    let mut out = LatticeSet::new(b1.dim());
    for_each_in_product(&ranges, |p| {
        out.insert(LatticeVector::new(p.to_vec()));
    });
    out
}

/// (K - K) ∩ Z^n for a box union K.
pub fn difference_set_boxes(k: &BoxUnion) -> LatticeSet {
    let mut out = LatticeSet::new(k.dim());
    for b1 in &k.boxes {
        for b2 in &k.boxes {
            out.extend(&integer_points_in_box_difference(b1, b2));
        }
    }
    out
}

/// Calls `f` on every point of a product of inclusive integer ranges.
pub(crate) fn for_each_in_product<F>(ranges: &[std::ops::RangeInclusive<i64>], mut f: F)
where
    F: FnMut(&[i64]),
{
    if ranges.iter().any(|r| r.is_empty()) {
        return;
    }
    let mut cur: Vec<i64> = ranges.iter().map(|r| *r.start()).collect();
    loop {
        f(&cur);
        let mut l = ranges.len();
        loop {
            if l == 0 {
                return;
            }
            l -= 1;
            if cur[l] < *ranges[l].end() {
                cur[l] += 1;
                break;
            }
            cur[l] = *ranges[l].start();
        }
    }
}

/// Pieces of `[lo, hi]` reduced mod 1, as subintervals of [0, 1].
fn reduce_mod_one(side: &Interval) -> Vec<(Rational, Rational)> {
    let one = Rational::one();
    let zero = Rational::zero();
    if side.width() >= one {
        return vec![(zero, one)];
    }
    let f = &side.lo - side.lo.floor();
    let e = &f + side.width();
    if e <= one {
        vec![(f, e)]
    } else {
        vec![(f, one.clone()), (zero, e - one)]
    }
}

/// True iff K + Z^n = R^n.
///
/// Each box is reduced mod Z^n into pieces of [0,1]^n. Per axis the piece
/// endpoints cut [0,1] into elementary intervals (a coarsening of the
/// common-denominator grid); the cover is complete iff every open elementary
/// cell lies in some piece, which is decided at its midpoint.
pub fn covers_torus(k: &BoxUnion) -> bool {
    let n = k.dim();
    let mut pieces: Vec<Vec<(Rational, Rational)>> = Vec::new();
    for b in &k.boxes {
        let per_axis: Vec<_> = b.sides.iter().map(reduce_mod_one).collect();
        let ranges: Vec<_> = per_axis.iter().map(|p| 0..=(p.len() as i64 - 1)).collect();
        for_each_in_product(&ranges, |choice| {
            pieces.push(
                choice
                    .iter()
                    .enumerate()
                    .map(|(l, &c)| per_axis[l][c as usize].clone())
                    .collect(),
            );
        });
    }
    let mut breaks: Vec<Vec<Rational>> = vec![vec![Rational::zero(), Rational::one()]; n];
    for piece in &pieces {
        for (l, (a, b)) in piece.iter().enumerate() {
            breaks[l].push(a.clone());
            breaks[l].push(b.clone());
        }
    }
    let two = Rational::from_integer(2.into());
    let mids: Vec<Vec<Rational>> = breaks
        .iter_mut()
        .map(|bs| {
            bs.sort();
            bs.dedup();
            bs.windows(2).map(|w| (&w[0] + &w[1]) / &two).collect()
        })
        .collect();
    let ranges: Vec<_> = mids.iter().map(|m| 0..=(m.len() as i64 - 1)).collect();
    let mut covered = true;
    for_each_in_product(&ranges, |cell| {
        covered = covered && cell_covered(&pieces, &mids, cell);
    });
    covered
}

fn cell_covered(
    pieces: &[Vec<(Rational, Rational)>],
    mids: &[Vec<Rational>],
    cell: &[i64],
) -> bool {
    pieces.iter().any(|piece| {
        piece.iter().enumerate().all(|(l, (a, b))| {
            let x = &mids[l][cell[l] as usize];
            a <= x && x <= b
        })
    })
}
