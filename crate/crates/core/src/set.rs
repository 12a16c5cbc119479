use std::cmp::Ordering;

/// A subset of the carrier of a fixed finite algebra, stored as a bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    bits: Vec<u64>,
}

fn words_for(universe: usize) -> usize {
    universe.div_ceil(64)
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            universe,
            bits: vec![0; words_for(universe)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = ElementSet::empty(universe);
        for x in 0..universe {
            s.insert(x);
        }
        s
    }

    pub fn singleton(universe: usize, x: usize) -> Self {
        let mut s = ElementSet::empty(universe);
        s.insert(x);
        s
    }

    pub fn from_indices(universe: usize, indices: &[usize]) -> Self {
        let mut s = ElementSet::empty(universe);
        for &x in indices {
            s.insert(x);
        }
        s
    }

    pub(crate) fn from_words(universe: usize, bits: Vec<u64>) -> Self {
        debug_assert_eq!(bits.len(), words_for(universe));
        ElementSet { universe, bits }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, x: usize) {
        assert!(x < self.universe, "element {x} outside universe {}", self.universe);
        self.bits[x / 64] |= 1 << (x % 64);
    }

    pub fn remove(&mut self, x: usize) {
        assert!(x < self.universe);
        self.bits[x / 64] &= !(1 << (x % 64));
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.universe && self.bits[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        assert_eq!(self.universe, other.universe);
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a | b)
            .collect();
        ElementSet {
            universe: self.universe,
            bits,
        }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        assert_eq!(self.universe, other.universe);
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a & b)
            .collect();
        ElementSet {
            universe: self.universe,
            bits,
        }
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        assert_eq!(self.universe, other.universe);
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Compares two masks as little-endian integers. Combined with a
    /// cardinality comparison this gives the deterministic (size, mask)
    /// ordering used for every returned list of subsets.
    pub fn mask_cmp(&self, other: &ElementSet) -> Ordering {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.bits.iter().rev().zip(other.bits.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    pub fn set_cmp(&self, other: &ElementSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.mask_cmp(other))
    }
}

impl std::fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
