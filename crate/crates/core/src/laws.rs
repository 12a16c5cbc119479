//! Exhaustive validation of the Hilbert and supremum laws.
//!
//! Every checker walks the full tuple space of its laws and reports the
//! lexicographically least witness per violated law, together with the
//! total number of violating tuples. An empty report means the algebra
//! satisfies the law set. Cubic scans are parallelized over the first
//! coordinate; results are reduced deterministically, so reports do not
//! depend on thread scheduling.

use rayon::prelude::*;

use crate::algebra::{Element, FiniteAlgebra};

/// One violated law with its least witness and the violation count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: &'static str,
    pub witness: Vec<Element>,
    pub count: u64,
}

/// Outcome of a validation pass: empty means all checked laws hold.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, v: Option<Violation>) {
        if let Some(v) = v {
            self.violations.push(v);
        }
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "all laws hold");
        }
        for v in &self.violations {
            writeln!(
                f,
                "{} violated {} times, least witness {:?}",
                v.law, v.count, v.witness
            )?;
        }
        Ok(())
    }
}

fn scan1(m: usize, law: &'static str, holds: impl Fn(usize) -> bool) -> Option<Violation> {
    let mut first = None;
    let mut count = 0u64;
    for x in 0..m {
        if !holds(x) {
            count += 1;
            if first.is_none() {
                first = Some(vec![x]);
            }
        }
    }
    first.map(|witness| Violation { law, witness, count })
}

fn scan2(m: usize, law: &'static str, holds: impl Fn(usize, usize) -> bool) -> Option<Violation> {
    let mut first = None;
    let mut count = 0u64;
    for x in 0..m {
        for y in 0..m {
            if !holds(x, y) {
                count += 1;
                if first.is_none() {
                    first = Some(vec![x, y]);
                }
            }
        }
    }
    first.map(|witness| Violation { law, witness, count })
}

fn scan3(
    m: usize,
    law: &'static str,
    holds: impl Fn(usize, usize, usize) -> bool + Sync,
) -> Option<Violation> {
    let per_x: Vec<(Option<(usize, usize)>, u64)> = (0..m)
        .into_par_iter()
        .map(|x| {
            let mut first = None;
            let mut count = 0u64;
            for y in 0..m {
                for z in 0..m {
                    if !holds(x, y, z) {
                        count += 1;
                        if first.is_none() {
                            first = Some((y, z));
                        }
                    }
                }
            }
            (first, count)
        })
        .collect();
    let count: u64 = per_x.iter().map(|(_, c)| c).sum();
    per_x
        .iter()
        .enumerate()
        .find_map(|(x, (first, _))| first.map(|(y, z)| vec![x, y, z]))
        .map(|witness| Violation { law, witness, count })
}

/// Checks the Hilbert axioms: the two implication laws over all pairs
/// and triples, plus antisymmetry of the derived order.
pub fn validate_hilbert(a: &FiniteAlgebra) -> ValidationReport {
    let m = a.size();
    let mut report = ValidationReport::default();
    report.push(scan2(m, "H1", |x, y| a.leq(x, a.imp(y, x))));
    report.push(scan3(m, "H2", |x, y, z| {
        let lhs = a.imp(x, a.imp(y, z));
        let rhs = a.imp(a.imp(x, y), a.imp(x, z));
        a.leq(lhs, rhs)
    }));
    report.push(scan2(m, "H3", |x, y| {
        !(a.leq(x, y) && a.leq(y, x)) || x == y
    }));
    report
}

/// Checks the supremum equations: the join is an upper bound and the
/// triple implication law ties it to the implication.
pub fn validate_sup(a: &FiniteAlgebra) -> ValidationReport {
    let m = a.size();
    let mut report = ValidationReport::default();
    report.push(scan2(m, "sup-a", |x, y| a.leq(x, a.join(x, y))));
    report.push(scan2(m, "sup-b", |x, y| a.leq(y, a.join(x, y))));
    report.push(scan3(m, "sup-c", |x, y, z| {
        let rhs = a.imp(a.imp(y, z), a.imp(a.join(x, y), z));
        a.leq(a.imp(x, z), rhs)
    }));
    report
}

/// Checks the derived identities H4 through H11, using a verified meet
/// table for the infimum identity. Cubic in the carrier; intended for
/// carriers up to roughly a thousand elements.
pub fn check_derived_identities(a: &FiniteAlgebra) -> ValidationReport {
    let m = a.size();
    let top = a.top();
    let mut report = ValidationReport::default();
    report.push(scan1(m, "H4", |x| a.imp(a.imp(x, x), x) == x));
    report.push(scan2(m, "H5", |x, y| a.imp(x, x) == a.imp(y, y)));
    report.push(scan3(m, "H6", |x, y, z| {
        a.imp(x, a.imp(y, z)) == a.imp(a.imp(x, y), a.imp(x, z))
    }));
    report.push(scan2(m, "H7", |x, y| {
        let xy = a.imp(x, y);
        let yx = a.imp(y, x);
        a.imp(xy, a.imp(yx, x)) == a.imp(yx, a.imp(xy, y))
    }));
    report.push(scan3(m, "H8", |x, y, z| {
        a.imp(x, a.imp(y, z)) == a.imp(y, a.imp(x, z))
    }));
    report.push(scan1(m, "H9", |x| a.imp(x, top) == top));
    let meets = MeetTable::build(a);
    report.push(scan3(m, "H10-inf-exists", |x, y, z| {
        meets.get(a.imp(x, z), a.imp(y, z)).is_some()
    }));
    report.push(scan3(m, "H10", |x, y, z| {
        meets.get(a.imp(x, z), a.imp(y, z)) == Some(a.imp(a.join(x, y), z))
    }));
    report.push(scan3(m, "H11", |x, y, z| {
        let rhs = a.imp(a.imp(y, z), a.imp(a.join(x, y), z));
        a.leq(a.imp(x, z), rhs)
    }));
    report
}

/// The sub-cubic laws of all three suites in one pass: H1, H3, the two
/// join upper-bound equations, H4, H5, H7 and H9. Quadratic in the
/// carrier, so usable on algebras too large for the full cubic sweep.
pub fn check_quadratic_identities(a: &FiniteAlgebra) -> ValidationReport {
    let m = a.size();
    let top = a.top();
    let mut report = ValidationReport::default();
    report.push(scan2(m, "H1", |x, y| a.leq(x, a.imp(y, x))));
    report.push(scan2(m, "H3", |x, y| {
        !(a.leq(x, y) && a.leq(y, x)) || x == y
    }));
    report.push(scan2(m, "sup-a", |x, y| a.leq(x, a.join(x, y))));
    report.push(scan2(m, "sup-b", |x, y| a.leq(y, a.join(x, y))));
    report.push(scan1(m, "H4", |x| a.imp(a.imp(x, x), x) == x));
    report.push(scan2(m, "H5", |x, y| a.imp(x, x) == a.imp(y, y)));
    report.push(scan2(m, "H7", |x, y| {
        let xy = a.imp(x, y);
        let yx = a.imp(y, x);
        a.imp(xy, a.imp(yx, x)) == a.imp(yx, a.imp(xy, y))
    }));
    report.push(scan1(m, "H9", |x| a.imp(x, top) == top));
    report
}

/// Checks that the derived relation is a partial order with greatest
/// element top and that the join is the least upper bound, including the
/// semilattice equations.
pub fn validate_order(a: &FiniteAlgebra) -> ValidationReport {
    let m = a.size();
    let top = a.top();
    let mut report = ValidationReport::default();
    report.push(scan1(m, "order-reflexive", |x| a.leq(x, x)));
    report.push(scan2(m, "order-antisymmetric", |x, y| {
        !(a.leq(x, y) && a.leq(y, x)) || x == y
    }));
    report.push(scan3(m, "order-transitive", |x, y, z| {
        !(a.leq(x, y) && a.leq(y, z)) || a.leq(x, z)
    }));
    report.push(scan1(m, "order-top-greatest", |x| a.leq(x, top)));
    report.push(scan2(m, "join-upper-bound", |x, y| {
        let j = a.join(x, y);
        a.leq(x, j) && a.leq(y, j)
    }));
    report.push(scan3(m, "join-least-upper-bound", |x, y, z| {
        !(a.leq(x, z) && a.leq(y, z)) || a.leq(a.join(x, y), z)
    }));
    report.push(scan2(m, "join-commutative", |x, y| a.join(x, y) == a.join(y, x)));
    report.push(scan1(m, "join-idempotent", |x| a.join(x, x) == x));
    report.push(scan3(m, "join-associative", |x, y, z| {
        a.join(a.join(x, y), z) == a.join(x, a.join(y, z))
    }));
    report.push(scan1(m, "join-top", |x| a.join(x, top) == top));
    report
}

/// Verifies every entry of a power/product table against the factor
/// operations: full table coverage, quadratic in the carrier.
pub fn verify_componentwise(power: &FiniteAlgebra, factors: &[&FiniteAlgebra]) -> ValidationReport {
    let m = power.size();
    let sizes: Vec<usize> = factors.iter().map(|f| f.size()).collect();
    let expected: usize = sizes.iter().product();
    let mut report = ValidationReport::default();
    if expected != m {
        report.violations.push(Violation {
            law: "power-carrier",
            witness: vec![m, expected],
            count: 1,
        });
        return report;
    }
    let digits: Vec<Vec<usize>> = (0..m)
        .map(|x| FiniteAlgebra::decode_tuple(x, &sizes))
        .collect();
    let mut strides = Vec::with_capacity(sizes.len());
    let mut stride = 1usize;
    for &s in &sizes {
        strides.push(stride);
        stride *= s;
    }
    if !digits[power.top()]
        .iter()
        .zip(factors)
        .all(|(&d, f)| d == f.top())
    {
        report.violations.push(Violation {
            law: "power-top",
            witness: vec![power.top()],
            count: 1,
        });
    }
    let expect = |x: usize, y: usize, use_imp: bool| -> usize {
        (0..factors.len())
            .map(|i| {
                let v = if use_imp {
                    factors[i].imp(digits[x][i], digits[y][i])
                } else {
                    factors[i].join(digits[x][i], digits[y][i])
                };
                v * strides[i]
            })
            .sum()
    };
    report.push(scan2(m, "power-imp", |x, y| {
        power.imp(x, y) == expect(x, y, true)
    }));
    report.push(scan2(m, "power-join", |x, y| {
        power.join(x, y) == expect(x, y, false)
    }));
    report
}

/// Deterministic sampled check of the cubic identities (H2, H6, H8, H10,
/// H11) at `samples` pseudo-random triples. Complements the exhaustive
/// quadratic laws on carriers too large for a full cubic sweep.
pub fn spot_check_identities(a: &FiniteAlgebra, samples: u64, seed: u64) -> ValidationReport {
    let m = a.size() as u64;
    let down = DownSets::build(a);
    let mut state = seed;
    let mut next = move || {
        // splitmix64
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    let mut report = ValidationReport::default();
    let mut scratch = vec![0u64; down.words];
    let fail =
        |report: &mut ValidationReport, law: &'static str, w: &[usize]| {
            for v in report.violations.iter_mut() {
                if v.law == law {
                    v.count += 1;
                    if w < v.witness.as_slice() {
                        v.witness = w.to_vec();
                    }
                    return;
                }
            }
            report.violations.push(Violation {
                law,
                witness: w.to_vec(),
                count: 1,
            });
        };
    for _ in 0..samples {
        let x = (next() % m) as usize;
        let y = (next() % m) as usize;
        let z = (next() % m) as usize;
        let w = [x, y, z];
        if !a.leq(
            a.imp(x, a.imp(y, z)),
            a.imp(a.imp(x, y), a.imp(x, z)),
        ) {
            fail(&mut report, "H2", &w);
        }
        if a.imp(x, a.imp(y, z)) != a.imp(a.imp(x, y), a.imp(x, z)) {
            fail(&mut report, "H6", &w);
        }
        if a.imp(x, a.imp(y, z)) != a.imp(y, a.imp(x, z)) {
            fail(&mut report, "H8", &w);
        }
        let rhs = a.imp(a.imp(y, z), a.imp(a.join(x, y), z));
        if !a.leq(a.imp(x, z), rhs) {
            fail(&mut report, "H11", &w);
        }
        match down.glb(a.imp(x, z), a.imp(y, z), &mut scratch) {
            None => fail(&mut report, "H10-inf-exists", &w),
            Some(g) => {
                if g != a.imp(a.join(x, y), z) {
                    fail(&mut report, "H10", &w);
                }
            }
        }
    }
    report
}

/// Per-element down-set bitmaps for infimum computation.
struct DownSets {
    bits: Vec<u64>,
    words: usize,
    m: usize,
}

impl DownSets {
    fn build(a: &FiniteAlgebra) -> DownSets {
        let m = a.size();
        let words = m.div_ceil(64);
        let mut bits = vec![0u64; m * words];
        for w in 0..m {
            for u in 0..m {
                if a.leq(w, u) {
                    bits[u * words + w / 64] |= 1 << (w % 64);
                }
            }
        }
        DownSets { bits, words, m }
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    /// Greatest lower bound of `{u, v}` if it exists: a common lower
    /// bound dominating every common lower bound.
    fn glb(&self, u: usize, v: usize, scratch: &mut [u64]) -> Option<usize> {
        let (ru, rv) = (self.row(u), self.row(v));
        for i in 0..self.words {
            scratch[i] = ru[i] & rv[i];
        }
        // Scan candidates from the highest index down; any member of the
        // intersection whose down-set covers it is the maximum.
        for wi in (0..self.words).rev() {
            let mut word = scratch[wi];
            while word != 0 {
                let b = 63 - word.leading_zeros() as usize;
                let w = wi * 64 + b;
                if w < self.m {
                    let rw = self.row(w);
                    if scratch.iter().zip(rw).all(|(s, d)| s & !d == 0) {
                        return Some(w);
                    }
                }
                word &= !(1 << b);
            }
        }
        None
    }
}

/// A verified meet table: entry `(u, v)` holds the infimum of `{u, v}`
/// where it exists.
struct MeetTable {
    table: Vec<u32>,
    m: usize,
}

const NO_MEET: u32 = u32::MAX;

impl MeetTable {
    fn build(a: &FiniteAlgebra) -> MeetTable {
        let m = a.size();
        let down = DownSets::build(a);
        let mut table = vec![NO_MEET; m * m];
        let mut scratch = vec![0u64; down.words];
        for u in 0..m {
            for v in u..m {
                let g = down
                    .glb(u, v, &mut scratch)
                    .map(|w| w as u32)
                    .unwrap_or(NO_MEET);
                table[u * m + v] = g;
                table[v * m + u] = g;
            }
        }
        MeetTable { table, m }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> Option<usize> {
        match self.table[u * self.m + v] {
            NO_MEET => None,
            w => Some(w as usize),
        }
    }
}
