//! Depth-first assignment of cell translations with incremental difference
//! points. Difference points are encoded as indices into a dense table over
//! [-R, R]^n, so every pair check is a handful of integer additions.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::lattice_core::{
    axis_offsets, cell_coords, cell_index, for_each_in_product, LatticeVector,
};

use super::Violation;

pub(crate) enum Predicate {
    /// Every point allowed; used to enumerate assignments.
    All,
    /// Allowed points of the dense table.
    Allowed(Vec<bool>),
    /// Points must stay inside the target, and a leaf must cover all of it.
    Exact { inside: Vec<bool>, size: usize },
}

pub(crate) struct Problem {
    pub cells: usize,
    /// Candidate translations in lexicographic order.
    pub values: Vec<Vec<i64>>,
    pub origin_value: usize,
    radius: i64,
    strides: Vec<i64>,
    center: i64,
    value_code: Vec<i64>,
    /// pair_offsets[a][b] for b <= a: encoded offsets t with
    /// (cube a + u_a) - (cube b + u_b) ∋ u_a - u_b + t.
    pair_offsets: Vec<Vec<Vec<i64>>>,
    predicate: Predicate,
    /// For each symmetry: the cell permutation's inverse and the induced
    /// permutation of value indices.
    lex: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Problem {
    /// `predicate` decides each table point; `range` bounds |u| coordinates;
    /// `symmetries` are coordinate permutations used for lex-leader pruning.
    pub fn new(
        n: usize,
        m: usize,
        range: i64,
        min_radius: i64,
        predicate: impl Fn(&LatticeVector) -> bool,
        kind: PredicateKind,
        symmetries: &[Vec<usize>],
    ) -> Self {
        let cells = m.pow(n as u32);
        let mut values = Vec::new();
        for_each_in_product(&vec![-range..=range; n], |p| values.push(p.to_vec()));
        let origin_value = values
            .iter()
            .position(|v| v.iter().all(|&c| c == 0))
            .expect("0 in range");

        let radius = (2 * range + 1).max(min_radius);
        let side = 2 * radius + 1;
        let strides: Vec<i64> = (0..n).map(|l| side.pow((n - 1 - l) as u32)).collect();
        let center: i64 = strides.iter().map(|s| s * radius).sum();
        let encode = |p: &[i64]| -> i64 { p.iter().zip(&strides).map(|(c, s)| c * s).sum() };
        let value_code = values.iter().map(|v| encode(v)).collect();

        let coords: Vec<Vec<usize>> = (0..cells).map(|c| cell_coords(n, m, c)).collect();
        let pair_offsets = (0..cells)
            .map(|a| {
                (0..=a)
                    .map(|b| {
                        let per_axis: Vec<Vec<i64>> = (0..n)
                            .map(|l| axis_offsets(coords[a][l] as i64 - coords[b][l] as i64, m))
                            .collect();
                        let ranges: Vec<_> =
                            per_axis.iter().map(|o| 0..=(o.len() as i64 - 1)).collect();
                        let mut codes = Vec::new();
                        for_each_in_product(&ranges, |pick| {
                            let t: Vec<i64> =
                                (0..n).map(|l| per_axis[l][pick[l] as usize]).collect();
                            codes.push(encode(&t));
                        });
                        codes
                    })
                    .collect()
            })
            .collect();

        let table_len = side.pow(n as u32) as usize;
        let decode_all = || -> Vec<bool> {
            let mut table = vec![false; table_len];
            for_each_in_product(&vec![-radius..=radius; n], |p| {
                table[(center + encode(p)) as usize] = predicate(&LatticeVector::new(p.to_vec()));
            });
            table
        };
        let predicate = match kind {
            PredicateKind::All => Predicate::All,
            PredicateKind::Allowed => Predicate::Allowed(decode_all()),
            PredicateKind::Exact => {
                let inside = decode_all();
                let size = inside.iter().filter(|&&b| b).count();
                Predicate::Exact { inside, size }
            }
        };

        let value_index = |v: &[i64]| {
            values
                .iter()
                .position(|w| w == v)
                .expect("range is symmetric")
        };
        let lex = symmetries
            .iter()
            .map(|perm| {
                let mut inv = vec![0; cells];
                for (c, j) in coords.iter().enumerate() {
                    let image: Vec<usize> = perm.iter().map(|&p| j[p]).collect();
                    inv[cell_index(m, &image)] = c;
                }
                let vmap = values
                    .iter()
                    .map(|v| value_index(&perm.iter().map(|&p| v[p]).collect::<Vec<_>>()))
                    .collect();
                (inv, vmap)
            })
            .collect();

        Problem {
            cells,
            values,
            origin_value,
            radius,
            strides,
            center,
            value_code,
            pair_offsets,
            predicate,
            lex,
        }
    }

    fn decode(&self, code: i64) -> LatticeVector {
        let mut rest = code + self.center;
        let p = self
            .strides
            .iter()
            .map(|&s| {
                let c = rest / s - self.radius;
                rest %= s;
                c
            })
            .collect();
        LatticeVector::new(p)
    }
}

pub(crate) enum PredicateKind {
    All,
    Allowed,
    Exact,
}

#[derive(Default)]
pub(crate) struct Tally {
    pub nodes: u64,
    pub pruned: u64,
    pub first_violation: Option<Violation>,
}

/// Tally of one depth-1 work item and its witness assignment, if any.
type ItemResult = (Tally, Option<Vec<usize>>);

enum Step {
    Continue,
    Found,
    Aborted,
}

struct State<'a> {
    p: &'a Problem,
    assign: Vec<usize>,
    /// Realize mode: multiplicity of each table point and the undo log.
    counts: Vec<u32>,
    covered: usize,
    log: Vec<usize>,
    tally: Tally,
}

impl<'a> State<'a> {
    fn new(p: &'a Problem) -> Self {
        let counts = match &p.predicate {
            Predicate::Exact { inside, .. } => vec![0; inside.len()],
            _ => Vec::new(),
        };
        State {
            p,
            assign: vec![0; p.cells],
            counts,
            covered: 0,
            log: Vec::new(),
            tally: Tally::default(),
        }
    }

    /// Adds the difference points of cell k against cells 0..=k. On failure
    /// the partial additions are left on the log for `undo`.
    fn place(&mut self, k: usize, value: usize) -> Result<(), Violation> {
        let p = self.p;
        self.assign[k] = value;
        let uk = p.value_code[value];
        for b in 0..=k {
            let d = uk - p.value_code[self.assign[b]];
            for &t in &p.pair_offsets[k][b] {
                for code in [d + t, -(d + t)] {
                    let idx = (p.center + code) as usize;
                    match &p.predicate {
                        Predicate::All => {}
                        Predicate::Allowed(table) => {
                            if !table[idx] {
                                return Err(Violation {
                                    cells: (k, b),
                                    point: p.decode(code),
                                });
                            }
                        }
                        Predicate::Exact { inside, .. } => {
                            if !inside[idx] {
                                return Err(Violation {
                                    cells: (k, b),
                                    point: p.decode(code),
                                });
                            }
                            if self.counts[idx] == 0 {
                                self.covered += 1;
                            }
                            self.counts[idx] += 1;
                            self.log.push(idx);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn undo(&mut self, mark: usize) {
        while self.log.len() > mark {
            let idx = self.log.pop().expect("nonempty");
            self.counts[idx] -= 1;
            if self.counts[idx] == 0 {
                self.covered -= 1;
            }
        }
    }

    /// False if some symmetry image is already known to be lexicographically
    /// smaller than the partial assignment 0..=k.
    fn lex_leader(&self, k: usize) -> bool {
        self.p.lex.iter().all(|(inv, vmap)| {
            for (i, &j) in inv.iter().enumerate().take(k + 1) {
                if j > k {
                    return true;
                }
                let (a, b) = (self.assign[i], vmap[self.assign[j]]);
                if a != b {
                    return a < b;
                }
            }
            true
        })
    }

    fn note(&mut self, v: Violation) {
        self.tally.pruned += 1;
        self.tally.first_violation.get_or_insert(v);
    }

    /// Tries one value for cell k and recurses.
    fn try_value(&mut self, k: usize, value: usize, cancel: &dyn Fn() -> bool) -> Step {
        self.tally.nodes += 1;
        let mark = self.log.len();
        let step = match self.place(k, value) {
            Err(v) => {
                self.note(v);
                Step::Continue
            }
            Ok(()) if !self.lex_leader(k) => {
                self.tally.pruned += 1;
                Step::Continue
            }
            Ok(()) => self.descend(k + 1, cancel),
        };
        if !matches!(step, Step::Found) {
            self.undo(mark);
        }
        step
    }

    fn descend(&mut self, k: usize, cancel: &dyn Fn() -> bool) -> Step {
        if k == self.p.cells {
            return match self.p.predicate {
                Predicate::Exact { size, .. } if self.covered != size => {
                    self.tally.pruned += 1;
                    Step::Continue
                }
                _ => Step::Found,
            };
        }
        for value in 0..self.p.values.len() {
            if cancel() {
                return Step::Aborted;
            }
            match self.try_value(k, value, cancel) {
                Step::Continue => {}
                other => return other,
            }
        }
        Step::Continue
    }
}

pub(crate) struct Outcome {
    pub witness: Option<Vec<Vec<i64>>>,
    pub tally: Tally,
}

/// Runs the search. Subtrees below each value of cell 1 form the work items;
/// counts are merged in item order up to the first item holding a witness, so
/// they do not depend on `threads`.
pub(crate) fn run(p: &Problem, threads: usize) -> Outcome {
    let mut root = State::new(p);
    let never = || false;
    if p.cells == 1 {
        let found = matches!(root.try_value(0, p.origin_value, &never), Step::Found);
        let witness = found.then(|| vec![p.values[p.origin_value].clone()]);
        return Outcome {
            witness,
            tally: root.tally,
        };
    }
    root.tally.nodes += 1;
    if let Err(v) = root.place(0, p.origin_value) {
        root.note(v);
        return Outcome {
            witness: None,
            tally: root.tally,
        };
    }

    let items = p.values.len();
    let next = AtomicUsize::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let results: Mutex<Vec<Option<ItemResult>>> = Mutex::new((0..items).map(|_| None).collect());
    let worker = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        if i >= items {
            break;
        }
        if i > best.load(Ordering::Relaxed) {
            continue;
        }
        let mut st = State::new(p);
        st.place(0, p.origin_value).expect("root placement checked");
        let cancel = || best.load(Ordering::Relaxed) < i;
        let step = st.try_value(1, i, &cancel);
        let witness = match step {
            Step::Found => {
                best.fetch_min(i, Ordering::Relaxed);
                Some(st.assign.clone())
            }
            Step::Aborted => continue,
            Step::Continue => None,
        };
        results.lock().expect("no panics while locked")[i] = Some((st.tally, witness));
    };
    let threads = threads.clamp(1, items);
    if threads == 1 {
        worker();
    } else {
        std::thread::scope(|s| {
            for _ in 0..threads {
                s.spawn(worker);
            }
        });
    }

    let mut tally = root.tally;
    let mut witness = None;
    for r in results.into_inner().expect("workers finished") {
        let (t, w) = r.expect("every item up to the first witness completes");
        tally.nodes += t.nodes;
        tally.pruned += t.pruned;
        if tally.first_violation.is_none() {
            tally.first_violation = t.first_violation;
        }
        if let Some(assign) = w {
            witness = Some(assign.iter().map(|&v| p.values[v].clone()).collect());
            break;
        }
    }
    Outcome { witness, tally }
}

/// Calls `f` with the translations of every assignment that survives the
/// predicate (and the symmetry constraints, if any), in lexicographic order.
pub(crate) fn for_each_leaf<F>(p: &Problem, mut f: F) -> Tally
where
    F: FnMut(&[Vec<i64>]),
{
    // Reuses the DFS with a callback at the leaves instead of stopping there.
    fn walk<F: FnMut(&[Vec<i64>])>(st: &mut State<'_>, k: usize, f: &mut F) {
        if k == st.p.cells {
            if let Predicate::Exact { size, .. } = st.p.predicate {
                if st.covered != size {
                    st.tally.pruned += 1;
                    return;
                }
            }
            let u: Vec<Vec<i64>> = st.assign.iter().map(|&v| st.p.values[v].clone()).collect();
            f(&u);
            return;
        }
        let values: Vec<usize> = if k == 0 {
            vec![st.p.origin_value]
        } else {
            (0..st.p.values.len()).collect()
        };
        for value in values {
            st.tally.nodes += 1;
            let mark = st.log.len();
            match st.place(k, value) {
                Err(v) => st.note(v),
                Ok(()) if !st.lex_leader(k) => st.tally.pruned += 1,
                Ok(()) => walk(st, k + 1, f),
            }
            st.undo(mark);
        }
    }
    let mut st = State::new(p);
    walk(&mut st, 0, &mut f);
    st.tally
}

/// The unsorted list of integer points contributed by one cell pair, decoded;
/// used by tests to cross-check the offset encoding.
#[cfg(test)]
pub(crate) fn pair_points(
    p: &Problem,
    a: usize,
    b: usize,
    ua: &[i64],
    ub: &[i64],
) -> crate::lattice_core::LatticeSet {
    let mut out = crate::lattice_core::LatticeSet::new(p.strides.len());
    let encode = |v: &[i64]| -> i64 { v.iter().zip(&p.strides).map(|(c, s)| c * s).sum() };
    let d = encode(ua) - encode(ub);
    for &t in &p.pair_offsets[a][b] {
        out.insert(p.decode(d + t));
    }
    out
}
