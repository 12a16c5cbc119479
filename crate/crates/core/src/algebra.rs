use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::guard::SizeGuard;
use crate::hom::Homomorphism;
use crate::set::ElementSet;

/// Index of an element in a [`FiniteAlgebra`] carrier.
pub type Element = usize;

/// A finite algebra `⟨A, →, ∨, 1⟩` given by total operation tables.
///
/// Elements are dense indices `0..size`. `imp(x, y)` is the value of
/// `x → y`, `join(x, y)` the value of `x ∨ y`, and `top` the index of the
/// constant `1`. The derived relation `x ≤ y ⇔ x → y = 1` is cached as a
/// bitmap at construction time; whether the tables actually satisfy the
/// Hilbert or supremum laws is checked separately (see [`crate::laws`]).
///
/// Values are immutable after construction, so shared use across threads
/// is safe.
#[derive(Clone)]
pub struct FiniteAlgebra {
    size: usize,
    top: u32,
    imp: Vec<u32>,
    join: Vec<u32>,
    /// Row-major bitmap: bit `y` of row `x` is set iff `x ≤ y`.
    leq: Vec<u64>,
    leq_words: usize,
}

impl FiniteAlgebra {
    /// Builds an algebra from row-major tables, checking only
    /// well-formedness (dimensions and index ranges).
    pub fn from_tables(
        top: Element,
        imp: &[Vec<usize>],
        join: &[Vec<usize>],
    ) -> Result<FiniteAlgebra> {
        let size = imp.len();
        if size == 0 {
            return Err(CoreError::MalformedTable("empty carrier".into()));
        }
        if join.len() != size {
            return Err(CoreError::MalformedTable(format!(
                "imp is {size}x{size} but join has {} rows",
                join.len()
            )));
        }
        if top >= size {
            return Err(CoreError::ElementOutOfRange { index: top, size });
        }
        let mut flat_imp = Vec::with_capacity(size * size);
        let mut flat_join = Vec::with_capacity(size * size);
        for (name, table, flat) in [
            ("imp", imp, &mut flat_imp),
            ("join", join, &mut flat_join),
        ] {
            for (x, row) in table.iter().enumerate() {
                if row.len() != size {
                    return Err(CoreError::MalformedTable(format!(
                        "{name} row {x} has {} entries, expected {size}",
                        row.len()
                    )));
                }
                for (y, &v) in row.iter().enumerate() {
                    if v >= size {
                        return Err(CoreError::MalformedTable(format!(
                            "{name}({x},{y}) = {v} out of range"
                        )));
                    }
                    flat.push(v as u32);
                }
            }
        }
        Ok(FiniteAlgebra::from_flat(size, top as u32, flat_imp, flat_join))
    }

    pub(crate) fn from_flat(
        size: usize,
        top: u32,
        imp: Vec<u32>,
        join: Vec<u32>,
    ) -> FiniteAlgebra {
        debug_assert_eq!(imp.len(), size * size);
        debug_assert_eq!(join.len(), size * size);
        let leq_words = size.div_ceil(64);
        let mut leq = vec![0u64; size * leq_words];
        for x in 0..size {
            let row = &imp[x * size..(x + 1) * size];
            let bits = &mut leq[x * leq_words..(x + 1) * leq_words];
            for (y, &v) in row.iter().enumerate() {
                if v == top {
                    bits[y / 64] |= 1 << (y % 64);
                }
            }
        }
        FiniteAlgebra {
            size,
            top,
            imp,
            join,
            leq,
            leq_words,
        }
    }

    /// The one-element algebra.
    pub fn trivial() -> FiniteAlgebra {
        FiniteAlgebra::from_flat(1, 0, vec![0], vec![0])
    }

    /// The `q+1` element chain `{0, 1/q, …, 1}` with `x → y = 1` if
    /// `x ≤ y` and `y` otherwise, and `x ∨ y = max(x, y)`. Index `i`
    /// encodes the rational `i/q`; the top is index `q`.
    pub fn chain(q: usize) -> Result<FiniteAlgebra> {
        if q == 0 {
            return Err(CoreError::EmptyChain);
        }
        let size = q + 1;
        let mut imp = Vec::with_capacity(size * size);
        let mut join = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                imp.push(if x <= y { q as u32 } else { y as u32 });
                join.push(x.max(y) as u32);
            }
        }
        Ok(FiniteAlgebra::from_flat(size, q as u32, imp, join))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn top(&self) -> Element {
        self.top as Element
    }

    #[inline]
    pub fn imp(&self, x: Element, y: Element) -> Element {
        self.imp[x * self.size + y] as Element
    }

    #[inline]
    pub fn join(&self, x: Element, y: Element) -> Element {
        self.join[x * self.size + y] as Element
    }

    /// The derived order: `x ≤ y ⇔ x → y = 1`.
    #[inline]
    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.leq[x * self.leq_words + y / 64] >> (y % 64) & 1 == 1
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size
    }

    /// The derived order as an explicit relation table, row-major.
    pub fn derived_order(&self) -> Vec<Vec<bool>> {
        (0..self.size)
            .map(|x| (0..self.size).map(|y| self.leq(x, y)).collect())
            .collect()
    }

    pub fn is_totally_ordered(&self) -> bool {
        (0..self.size).all(|x| (x + 1..self.size).all(|y| self.leq(x, y) || self.leq(y, x)))
    }

    /// The principal filter `[z) = {x : z ≤ x}`.
    pub fn principal_filter(&self, z: Element) -> ElementSet {
        assert!(z < self.size);
        let words = self.leq[z * self.leq_words..(z + 1) * self.leq_words].to_vec();
        ElementSet::from_words(self.size, words)
    }

    /// Elements of `set` with no strictly smaller element in `set` under
    /// the derived order.
    pub fn minimal_elements(&self, set: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.size);
        for x in set.iter() {
            let dominated = set
                .iter()
                .any(|y| y != x && self.leq(y, x));
            if !dominated {
                out.insert(x);
            }
        }
        out
    }

    /// Least superset of `seed ∪ {1}` closed under `→` and `∨`.
    ///
    /// Worklist fixpoint over a membership mask; new elements are taken in
    /// discovery order, and the result is a set (reported ascending).
    pub fn generated_subalgebra(&self, seed: &ElementSet) -> ElementSet {
        assert_eq!(seed.universe(), self.size);
        let mut members = ElementSet::empty(self.size);
        let mut list: Vec<Element> = Vec::new();
        let push = |members: &mut ElementSet, list: &mut Vec<Element>, x: Element| {
            if !members.contains(x) {
                members.insert(x);
                list.push(x);
            }
        };
        for x in seed.iter() {
            push(&mut members, &mut list, x);
        }
        push(&mut members, &mut list, self.top());
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for j in 0..=i {
                let y = list[j];
                for v in [
                    self.imp(x, y),
                    self.imp(y, x),
                    self.join(x, y),
                ] {
                    push(&mut members, &mut list, v);
                }
            }
            i += 1;
        }
        members
    }

    /// Componentwise power `A^k`. Elements are mixed-radix encodings of
    /// tuples with coordinate 0 least significant: the tuple
    /// `(x_0, …, x_{k-1})` has index `Σ x_i · size^i`.
    pub fn power(&self, k: usize, guard: &SizeGuard) -> Result<FiniteAlgebra> {
        if k == 0 {
            return Err(CoreError::BadParameter("power exponent must be >= 1".into()));
        }
        let factors: Vec<&FiniteAlgebra> = std::iter::repeat_n(self, k).collect();
        product(&factors, guard)
    }

    /// Decodes a mixed-radix power/product element into its coordinate
    /// digits, given the factor sizes in coordinate order.
    pub fn decode_tuple(index: Element, sizes: &[usize]) -> Vec<Element> {
        let mut rest = index;
        sizes
            .iter()
            .map(|&s| {
                let d = rest % s;
                rest /= s;
                d
            })
            .collect()
    }

    pub fn encode_tuple(digits: &[Element], sizes: &[usize]) -> Element {
        debug_assert_eq!(digits.len(), sizes.len());
        let mut index = 0;
        let mut stride = 1;
        for (&d, &s) in digits.iter().zip(sizes) {
            debug_assert!(d < s);
            index += d * stride;
            stride *= s;
        }
        index
    }

    /// Restricts the algebra to `set`, which must be a subuniverse
    /// (closed under both operations and containing the top).
    pub fn subalgebra(&self, set: &ElementSet) -> Result<Subalgebra> {
        assert_eq!(set.universe(), self.size);
        if !set.contains(self.top()) {
            return Err(CoreError::NotClosed("top is missing".into()));
        }
        let embedding = set.indices();
        let locate: HashMap<Element, usize> = embedding
            .iter()
            .enumerate()
            .map(|(local, &ambient)| (ambient, local))
            .collect();
        let m = embedding.len();
        let mut imp = Vec::with_capacity(m * m);
        let mut join = Vec::with_capacity(m * m);
        for &x in &embedding {
            for &y in &embedding {
                for (name, v, flat) in [
                    ("imp", self.imp(x, y), &mut imp),
                    ("join", self.join(x, y), &mut join),
                ] {
                    match locate.get(&v) {
                        Some(&local) => flat.push(local as u32),
                        None => {
                            return Err(CoreError::NotClosed(format!(
                                "{name}({x},{y}) = {v} escapes the subset"
                            )))
                        }
                    }
                }
            }
        }
        let top = locate[&self.top()] as u32;
        Ok(Subalgebra {
            algebra: Arc::new(FiniteAlgebra::from_flat(m, top, imp, join)),
            embedding,
        })
    }

    /// Quotient by the congruence `R(D) = {(x,y) : x→y ∈ D, y→x ∈ D}`
    /// induced by a deductive system `D`.
    ///
    /// Classes are indexed by ascending least representative. Returns the
    /// quotient together with the projection homomorphism; the induced
    /// tables are verified to be well defined and the projection kernel is
    /// verified to equal `D`.
    pub fn quotient(
        self: &Arc<FiniteAlgebra>,
        ds: &ElementSet,
    ) -> Result<(Arc<FiniteAlgebra>, Homomorphism)> {
        check_deductive(self, ds)?;
        let m = self.size;
        let mut class_of: Vec<Option<u32>> = vec![None; m];
        let mut reps: Vec<Element> = Vec::new();
        for x in 0..m {
            if class_of[x].is_some() {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            // The representative always lands in its own class, even for
            // degenerate tables where imp(x, x) escapes the system; the
            // well-definedness check below rejects those.
            class_of[x] = Some(c);
            for (y, slot) in class_of.iter_mut().enumerate().skip(x + 1) {
                if slot.is_none()
                    && ds.contains(self.imp(x, y))
                    && ds.contains(self.imp(y, x))
                {
                    *slot = Some(c);
                }
            }
        }
        let class_of: Vec<u32> = class_of.into_iter().map(|c| c.unwrap()).collect();
        let qm = reps.len();
        let mut qimp = Vec::with_capacity(qm * qm);
        let mut qjoin = Vec::with_capacity(qm * qm);
        for &rx in &reps {
            for &ry in &reps {
                qimp.push(class_of[self.imp(rx, ry)]);
                qjoin.push(class_of[self.join(rx, ry)]);
            }
        }
        // Well-definedness: the representative tables must agree with the
        // classwise image of every pair, not just the representatives.
        for x in 0..m {
            for y in 0..m {
                let (cx, cy) = (class_of[x] as usize, class_of[y] as usize);
                if qimp[cx * qm + cy] != class_of[self.imp(x, y)]
                    || qjoin[cx * qm + cy] != class_of[self.join(x, y)]
                {
                    return Err(CoreError::Verification(format!(
                        "quotient tables not well defined at ({x},{y})"
                    )));
                }
            }
        }
        let qtop = class_of[self.top()];
        let quotient = Arc::new(FiniteAlgebra::from_flat(qm, qtop, qimp, qjoin));
        let projection = Homomorphism::new(self.clone(), quotient.clone(), class_of)?;
        let kernel = projection.kernel();
        if &kernel != ds {
            return Err(CoreError::Verification(
                "projection kernel differs from the deductive system".into(),
            ));
        }
        Ok((quotient, projection))
    }

    /// Evaluates the Thomas term for parameter `p` over all `(p+1)`-tuples
    /// and reports whether it is identically top.
    ///
    /// The term is `β_{p-1} → (β_{p-2} → (… → (β_0 → x_0)…))` with
    /// `β_i = (x_i → x_{i+1}) → x_0`.
    pub fn thomas_holds(&self, p: usize) -> bool {
        self.thomas_witness(p).is_none()
    }

    /// Least tuple (lexicographically, `x_0` most significant) violating
    /// the Thomas term for parameter `p`, if any.
    pub fn thomas_witness(&self, p: usize) -> Option<Vec<Element>> {
        assert!(p >= 1, "Thomas parameter must be >= 1");
        let m = self.size;
        let mut tuple = vec![0usize; p + 1];
        loop {
            let x0 = tuple[0];
            let mut acc = x0;
            for i in 0..p {
                let beta = self.imp(self.imp(tuple[i], tuple[i + 1]), x0);
                acc = self.imp(beta, acc);
            }
            if acc != self.top() {
                return Some(tuple);
            }
            // Odometer with the last variable fastest: lexicographic order.
            let mut i = p + 1;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                tuple[i] += 1;
                if tuple[i] < m {
                    break;
                }
                tuple[i] = 0;
            }
        }
    }

    /// Least `p ≥ 1` for which the Thomas term holds identically.
    /// Finiteness bounds the search: `p` never exceeds the carrier size.
    pub fn valuedness(&self) -> usize {
        for p in 1..=self.size {
            if self.thomas_holds(p) {
                return p;
            }
        }
        unreachable!("Thomas term must hold for p = |A| on a finite algebra")
    }
}

/// A subuniverse of an ambient algebra, re-indexed densely.
#[derive(Clone)]
pub struct Subalgebra {
    pub algebra: Arc<FiniteAlgebra>,
    /// Local index -> ambient element, ascending.
    pub embedding: Vec<Element>,
}

impl Subalgebra {
    /// Local index of an ambient element, if it lies in the subuniverse.
    pub fn locate(&self, ambient: Element) -> Option<usize> {
        self.embedding.binary_search(&ambient).ok()
    }

    /// Carries a local subset back into the ambient carrier.
    pub fn embed_set(&self, local: &ElementSet, ambient_size: usize) -> ElementSet {
        let mut out = ElementSet::empty(ambient_size);
        for x in local.iter() {
            out.insert(self.embedding[x]);
        }
        out
    }
}

/// Componentwise product. Element `Σ x_i · Π_{j<i} size_j` encodes the
/// tuple `(x_0, …)` with coordinate 0 least significant.
pub fn product(factors: &[&FiniteAlgebra], guard: &SizeGuard) -> Result<FiniteAlgebra> {
    if factors.is_empty() {
        return Err(CoreError::EmptyProduct);
    }
    let sizes: Vec<usize> = factors.iter().map(|a| a.size()).collect();
    let mut total: u128 = 1;
    for &s in &sizes {
        total = total.saturating_mul(s as u128);
    }
    let m = guard.check_carrier(total)?;
    let k = factors.len();
    let mut imp = vec![0u32; m * m];
    let mut join = vec![0u32; m * m];
    let mut digits_x = vec![0usize; k];
    let mut strides = vec![0usize; k];
    let mut stride = 1;
    for (i, &s) in sizes.iter().enumerate() {
        strides[i] = stride;
        stride *= s;
    }
    for x in 0..m {
        let mut digits_y = vec![0usize; k];
        for y in 0..m {
            let mut iv = 0;
            let mut jv = 0;
            for i in 0..k {
                iv += factors[i].imp(digits_x[i], digits_y[i]) * strides[i];
                jv += factors[i].join(digits_x[i], digits_y[i]) * strides[i];
            }
            imp[x * m + y] = iv as u32;
            join[x * m + y] = jv as u32;
            increment(&mut digits_y, &sizes);
        }
        increment(&mut digits_x, &sizes);
    }
    let top = sizes
        .iter()
        .zip(&strides)
        .map(|(&s, &st)| (s - 1) * st)
        .sum::<usize>() as u32;
    Ok(FiniteAlgebra::from_flat(m, top, imp, join))
}

fn increment(digits: &mut [usize], sizes: &[usize]) {
    for (d, &s) in digits.iter_mut().zip(sizes) {
        *d += 1;
        if *d < s {
            return;
        }
        *d = 0;
    }
}

/// Checks the deductive-system invariants: the top belongs to the set and
/// the set is closed under modus ponens.
pub(crate) fn check_deductive(algebra: &FiniteAlgebra, set: &ElementSet) -> Result<()> {
    if set.universe() != algebra.size() {
        return Err(CoreError::NotDeductive(
            "set universe differs from the carrier".into(),
        ));
    }
    if !set.contains(algebra.top()) {
        return Err(CoreError::NotDeductive("top is missing".into()));
    }
    for x in set.iter() {
        for y in algebra.elements() {
            if !set.contains(y) && set.contains(algebra.imp(x, y)) {
                return Err(CoreError::NotDeductive(format!(
                    "not closed under modus ponens: {x} and {x}→{y} are in, {y} is not"
                )));
            }
        }
    }
    Ok(())
}
