//! Dyadic over-approximation of a rational box union.
//!
//! At level N the complex K_N is the union of all closed cubes
//! `C_{N,J} = Π [j_l/2^N, (j_l+1)/2^N]` that meet K. Cubes touching K only on
//! the boundary are included, so K ⊆ K_N always holds. As N grows the integer
//! difference set of K_N shrinks to that of K.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use thiserror::Error;

use crate::lattice_core::{
    difference_set_boxes, for_each_in_product, BoxUnion, Interval, LatticeSet, Rational,
    RationalBox,
};

/// Default deepest level tried by [`refine_until_stable`].
pub const DEFAULT_MAX_LEVEL: u32 = 12;

/// Number of levels past the first hit that must also agree.
pub const STABILITY_WINDOW: u32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DyadicError {
    #[error("difference set did not stabilize by level {max_level}")]
    NoStabilization { max_level: u32 },
}

/// Inclusive index range per axis.
type IndexBlock = Vec<(i64, i64)>;

/// A finite set of level-N dyadic cubes, stored as a union of index blocks
/// (one block per input box, blocks may overlap).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicComplex {
    n: usize,
    level: u32,
    blocks: Vec<IndexBlock>,
}

impl DyadicComplex {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn contains(&self, cell: &[i64]) -> bool {
        self.blocks
            .iter()
            .any(|b| b.iter().zip(cell).all(|(&(lo, hi), &j)| lo <= j && j <= hi))
    }

    /// Number of distinct cubes, counted exactly by coordinate compression.
    pub fn cell_count(&self) -> u128 {
        let cuts: Vec<Vec<i64>> = (0..self.n)
            .map(|l| {
                let mut c: Vec<i64> = self
                    .blocks
                    .iter()
                    .flat_map(|b| [b[l].0, b[l].1 + 1])
                    .collect();
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        let ranges: Vec<_> = cuts.iter().map(|c| 0..=(c.len() as i64 - 2)).collect();
        let mut total = 0u128;
        for_each_in_product(&ranges, |slot| {
            let lower: Vec<i64> = slot
                .iter()
                .enumerate()
                .map(|(l, &s)| cuts[l][s as usize])
                .collect();
            if self.contains(&lower) {
                total += slot
                    .iter()
                    .enumerate()
                    .map(|(l, &s)| (cuts[l][s as usize + 1] - cuts[l][s as usize]) as u128)
                    .product::<u128>();
            }
        });
        total
    }

    /// Every cube index, deduplicated and sorted. Only sensible at small levels.
    pub fn cells(&self) -> BTreeSet<Vec<i64>> {
        let mut out = BTreeSet::new();
        for b in &self.blocks {
            let ranges: Vec<_> = b.iter().map(|&(lo, hi)| lo..=hi).collect();
            for_each_in_product(&ranges, |j| {
                out.insert(j.to_vec());
            });
        }
        out
    }

    /// The cube C_{N,J} as a rational box.
    pub fn cube(&self, cell: &[i64]) -> RationalBox {
        let side = BigInt::from(2u32).pow(self.level);
        let sides = cell
            .iter()
            .map(|&j| {
                Interval::new(
                    Rational::new(j.into(), side.clone()),
                    Rational::new((j + 1).into(), side.clone()),
                )
                .expect("cube side")
            })
            .collect();
        RationalBox::new(sides).expect("n >= 1")
    }

    /// K_N as a box union, one merged box per index block. Each block is a
    /// product of index ranges, so its cubes tile exactly that box.
    pub fn to_box_union(&self) -> BoxUnion {
        let side = BigInt::from(2u32).pow(self.level);
        let boxes = self
            .blocks
            .iter()
            .map(|b| {
                let sides = b
                    .iter()
                    .map(|&(lo, hi)| {
                        Interval::new(
                            Rational::new(lo.into(), side.clone()),
                            Rational::new((hi + 1).into(), side.clone()),
                        )
                        .expect("lo <= hi")
                    })
                    .collect();
                RationalBox::new(sides).expect("n >= 1")
            })
            .collect();
        BoxUnion::new(self.n, boxes).expect("nonempty")
    }
}

/// All level-N cubes meeting K (closed intersection).
pub fn dyadic_cover(k: &BoxUnion, level: u32) -> DyadicComplex {
    let scale = Rational::from_integer(BigInt::from(2u32).pow(level));
    let blocks = k
        .boxes()
        .iter()
        .map(|b| {
            b.sides()
                .iter()
                .map(|s| {
                    // [j, j+1]/2^N meets [lo, hi]  <=>  ceil(lo 2^N) - 1 <= j <= floor(hi 2^N)
                    (ceil(&(&s.lo * &scale)) - 1, floor(&(&s.hi * &scale)))
                })
                .collect()
        })
        .collect();
    DyadicComplex {
        n: k.dim(),
        level,
        blocks,
    }
}

fn floor(r: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    r.floor().to_integer().to_i64().expect("index exceeds i64")
}

fn ceil(r: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    r.ceil().to_integer().to_i64().expect("index exceeds i64")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelReport {
    pub level: u32,
    pub cells: u128,
    pub diffset: LatticeSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    /// Smallest level from which every computed level agrees with the exact set.
    pub stable_level: u32,
    pub levels: Vec<LevelReport>,
    pub exact: LatticeSet,
}

impl Refinement {
    /// Levels at or past `stable_level` that were actually checked.
    pub fn window_checked(&self) -> u32 {
        self.levels
            .last()
            .map_or(0, |l| l.level - self.stable_level)
    }
}

/// Refines K level by level until the dyadic difference set equals (K-K) ∩ Z^n
/// on `STABILITY_WINDOW + 1` consecutive levels, or `max_level` is reached.
pub fn refine_until_stable(k: &BoxUnion, max_level: u32) -> Result<Refinement, DyadicError> {
    let exact = difference_set_boxes(k);
    let mut levels = Vec::new();
    let mut first_hit: Option<u32> = None;
    for level in 0..=max_level {
        let complex = dyadic_cover(k, level);
        let diffset = difference_set_boxes(&complex.to_box_union());
        if diffset == exact {
            first_hit.get_or_insert(level);
        } else {
            first_hit = None;
        }
        levels.push(LevelReport {
            level,
            cells: complex.cell_count(),
            diffset,
        });
        if matches!(first_hit, Some(h) if level - h >= STABILITY_WINDOW) {
            break;
        }
    }
    match first_hit {
        Some(stable_level) => Ok(Refinement {
            stable_level,
            levels,
            exact,
        }),
        None => Err(DyadicError::NoStabilization { max_level }),
    }
}
