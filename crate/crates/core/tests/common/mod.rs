//! Brute-force oracles and input generators shared by the integration tests.
//! Nothing here calls the library's difference-set or lattice routines.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use nset_core::lattice_core::{parse_rational, Interval, Rational, RationalBox};
use nset_core::{BoxUnion, GridTiling, LatticeSet, LatticeVector};

pub fn v(c: &[i64]) -> LatticeVector {
    LatticeVector::new(c.to_vec())
}

pub fn set(n: usize, pts: &[&[i64]]) -> LatticeSet {
    LatticeSet::from_points(n, pts.iter().map(|p| v(p))).unwrap()
}

pub fn to_btree(a: &LatticeSet) -> BTreeSet<Vec<i64>> {
    a.iter().map(|p| p.coords().to_vec()).collect()
}

/// Odometer over [lo, hi]^len.
fn for_each_vector(len: usize, lo: i64, hi: i64, mut f: impl FnMut(&[i64])) {
    let mut cur = vec![lo; len];
    loop {
        f(&cur);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if cur[i] < hi {
                cur[i] += 1;
                break;
            }
            cur[i] = lo;
        }
    }
}

/// Rasterization oracle for (K - K) ∩ Z^n. With L the lcm of all endpoint
/// denominators, every nonempty box with endpoints in (1/L)Z contains a point
/// of (1/L)Z^n, so (K - K) ∩ Z^n is the set of integer differences of grid
/// points of K. Grid points are grouped by residue mod L; within a class the
/// differences of integer parts are exactly the integer differences.
pub fn raster_diffset(k: &BoxUnion) -> BTreeSet<Vec<i64>> {
    let n = k.dim();
    let mut l = BigInt::one();
    for b in k.boxes() {
        for s in b.sides() {
            l = l.lcm(s.lo.denom()).lcm(s.hi.denom());
        }
    }
    let big_l = Rational::from_integer(l.clone());
    let li = l.to_i64().unwrap();
    let mut classes: BTreeMap<Vec<i64>, BTreeSet<Vec<i64>>> = BTreeMap::new();
    for b in k.boxes() {
        let ranges: Vec<(i64, i64)> = b
            .sides()
            .iter()
            .map(|s| {
                let lo = (&s.lo * &big_l).ceil().to_integer().to_i64().unwrap();
                let hi = (&s.hi * &big_l).floor().to_integer().to_i64().unwrap();
                (lo, hi)
            })
            .collect();
        let mut g = ranges.iter().map(|r| r.0).collect::<Vec<_>>();
        'outer: loop {
            let residue: Vec<i64> = g.iter().map(|c| c.rem_euclid(li)).collect();
            let whole: Vec<i64> = g.iter().map(|c| c.div_euclid(li)).collect();
            classes.entry(residue).or_default().insert(whole);
            for i in (0..n).rev() {
                if g[i] < ranges[i].1 {
                    g[i] += 1;
                    continue 'outer;
                }
                g[i] = ranges[i].0;
            }
            break;
        }
    }
    let mut out = BTreeSet::new();
    for pts in classes.values() {
        for a in pts {
            for b in pts {
                out.insert(a.iter().zip(b).map(|(x, y)| x - y).collect());
            }
        }
    }
    out
}

/// The tiling's cells as explicit rational boxes, built without the library.
pub fn tiling_union(t: &GridTiling) -> BoxUnion {
    let (n, m) = (t.dim(), t.resolution() as i64);
    let mut boxes = Vec::new();
    let mut idx = 0;
    for_each_vector(n, 0, m - 1, |j| {
        let u = t.translation(idx);
        let sides = (0..n)
            .map(|l| {
                let lo = Rational::new(BigInt::from(j[l] + m * u[l]), BigInt::from(m));
                let hi = Rational::new(BigInt::from(j[l] + 1 + m * u[l]), BigInt::from(m));
                Interval::new(lo, hi).unwrap()
            })
            .collect();
        boxes.push(RationalBox::new(sides).unwrap());
        idx += 1;
    });
    BoxUnion::new(n, boxes).unwrap()
}

/// Every tiling with u_0 = 0 and coordinates in [-bound, bound].
pub fn naive_tilings(n: usize, m: usize, bound: i64, mut f: impl FnMut(&GridTiling)) -> u64 {
    let cells = m.pow(n as u32);
    let mut count = 0;
    for_each_vector(n * (cells - 1), -bound, bound, |flat| {
        let mut u = vec![LatticeVector::zero(n)];
        u.extend(flat.chunks(n).map(v));
        f(&GridTiling::new(n, m, u).unwrap());
        count += 1;
    });
    count
}

/// Every tiling with all translations in [-bound, bound] (origin free).
pub fn naive_tilings_free(n: usize, m: usize, bound: i64, mut f: impl FnMut(&GridTiling)) -> u64 {
    let cells = m.pow(n as u32);
    let mut count = 0;
    for_each_vector(n * cells, -bound, bound, |flat| {
        f(&GridTiling::new(n, m, flat.chunks(n).map(v).collect()).unwrap());
        count += 1;
    });
    count
}

fn det(rows: &[Vec<BigInt>]) -> BigInt {
    // Laplace expansion along the first row; sizes here are at most 3.
    let k = rows.len();
    if k == 1 {
        return rows[0][0].clone();
    }
    let mut total = BigInt::zero();
    for c in 0..k {
        let minor: Vec<Vec<BigInt>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &rows[0][c] * det(&minor);
        total = if c % 2 == 0 {
            total + term
        } else {
            total - term
        };
    }
    total
}

/// A set generates Z^n iff the gcd of its n×n minors is 1.
pub fn minors_generate(a: &LatticeSet) -> bool {
    let n = a.dim();
    let pts: Vec<Vec<BigInt>> = a
        .iter()
        .map(|p| p.coords().iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let mut g = BigInt::zero();
    let mut pick: Vec<usize> = (0..n).collect();
    if pts.len() < n {
        return false;
    }
    loop {
        let rows: Vec<Vec<BigInt>> = pick.iter().map(|&i| pts[i].clone()).collect();
        g = g.gcd(&det(&rows).abs());
        if g.is_one() {
            return true;
        }
        // Next n-subset in lexicographic order.
        let mut i = n;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if pick[i] < pts.len() - n + i {
                pick[i] += 1;
                for j in i + 1..n {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Axis-confinement straight from the definition.
pub fn naive_axis_confined(a: &LatticeSet) -> bool {
    a.iter()
        .all(|p| p.coords().iter().filter(|&&c| c != 0).count() <= 1)
}

/// z lies on the line through d iff all 2×2 minors of (z, d) vanish.
pub fn naive_on_lines(z: &[i64], dirs: &[Vec<i64>]) -> bool {
    dirs.iter()
        .any(|d| (0..z.len()).all(|i| (0..z.len()).all(|j| z[i] * d[j] == z[j] * d[i])))
}

pub fn random_tiling<R: Rng>(rng: &mut R, n: usize, m: usize, radius: i64) -> GridTiling {
    let cells = m.pow(n as u32);
    let u = (0..cells)
        .map(|_| LatticeVector::new((0..n).map(|_| rng.gen_range(-radius..=radius)).collect()))
        .collect();
    GridTiling::new(n, m, u).unwrap()
}

fn rational(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

/// Unions for the oracle comparison: one lcm L per input from
/// {1,2,3,4,6,8,12,24}, endpoints in (1/L)Z, widths at most 2 (in 3D, L ≤ 12).
pub fn random_grid_union<R: Rng>(rng: &mut R) -> BoxUnion {
    let n = rng.gen_range(1..=3);
    let choices: &[i64] = if n == 3 {
        &[1, 2, 3, 4, 6, 12]
    } else {
        &[1, 2, 3, 4, 6, 8, 12, 24]
    };
    let l = choices[rng.gen_range(0..choices.len())];
    let count = rng.gen_range(1..=4);
    let boxes = (0..count)
        .map(|_| {
            let sides = (0..n)
                .map(|_| {
                    let a = rng.gen_range(-2 * l..=2 * l);
                    let w = rng.gen_range(0..=2 * l);
                    Interval::new(
                        rational(&format!("{a}/{l}")),
                        rational(&format!("{}/{l}", a + w)),
                    )
                    .unwrap()
                })
                .collect();
            RationalBox::new(sides).unwrap()
        })
        .collect();
    BoxUnion::new(n, boxes).unwrap()
}

/// Unions for refinement: n ≤ 2, up to 4 boxes, each endpoint with its own
/// denominator in 1..=8.
pub fn random_small_denominator_union<R: Rng>(rng: &mut R) -> BoxUnion {
    let n = rng.gen_range(1..=2);
    let count = rng.gen_range(1..=4);
    let boxes = (0..count)
        .map(|_| {
            let sides = (0..n)
                .map(|_| {
                    let q1: i64 = rng.gen_range(1..=8);
                    let a = rng.gen_range(-2 * q1..=2 * q1);
                    let q2: i64 = rng.gen_range(1..=8);
                    // Smallest c with c/q2 >= a/q1.
                    let c0 = (a * q2).div_euclid(q1) + i64::from((a * q2).rem_euclid(q1) != 0);
                    let c = rng.gen_range(c0..=c0 + 2 * q2);
                    Interval::new(
                        rational(&format!("{a}/{q1}")),
                        rational(&format!("{c}/{q2}")),
                    )
                    .unwrap()
                })
                .collect();
            RationalBox::new(sides).unwrap()
        })
        .collect();
    BoxUnion::new(n, boxes).unwrap()
}

pub fn union_from(n: usize, boxes: &[&[(&str, &str)]]) -> BoxUnion {
    BoxUnion::new(
        n,
        boxes
            .iter()
            .map(|b| {
                RationalBox::new(
                    b.iter()
                        .map(|(lo, hi)| Interval::new(rational(lo), rational(hi)).unwrap())
                        .collect(),
                )
                .unwrap()
            })
            .collect(),
    )
    .unwrap()
}

/// Symmetric subsets of {-r..r} that contain 0 and generate Z, in increasing
/// order of their positive parts (as bitmasks over 1..=r).
pub fn symmetric_generating_targets(r: i64) -> Vec<LatticeSet> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << r) {
        let pos: Vec<i64> = (1..=r).filter(|k| mask >> (k - 1) & 1 == 1).collect();
        if pos.iter().fold(0i64, |g, &k| g.gcd(&k)) != 1 {
            continue;
        }
        let mut pts: Vec<Vec<i64>> = vec![vec![0]];
        for &k in &pos {
            pts.push(vec![k]);
            pts.push(vec![-k]);
        }
        out.push(LatticeSet::from_points(1, pts.into_iter().map(LatticeVector::new)).unwrap());
    }
    out
}
