use std::sync::Arc;

use crate::algebra::{Element, FiniteAlgebra};
use crate::error::{CoreError, Result};
use crate::set::ElementSet;

const UNSET: u32 = u32::MAX;

/// A total map between carriers preserving `→`, `∨` and the top.
#[derive(Clone)]
pub struct Homomorphism {
    source: Arc<FiniteAlgebra>,
    target: Arc<FiniteAlgebra>,
    map: Vec<u32>,
}

impl Homomorphism {
    /// Validates and wraps a map table.
    pub fn new(
        source: Arc<FiniteAlgebra>,
        target: Arc<FiniteAlgebra>,
        map: Vec<u32>,
    ) -> Result<Homomorphism> {
        if map.len() != source.size() {
            return Err(CoreError::NotHomomorphism(format!(
                "map has {} entries for a carrier of {}",
                map.len(),
                source.size()
            )));
        }
        for (x, &v) in map.iter().enumerate() {
            if v as usize >= target.size() {
                return Err(CoreError::ElementOutOfRange {
                    index: v as usize,
                    size: target.size(),
                });
            }
            let _ = x;
        }
        if map[source.top()] as usize != target.top() {
            return Err(CoreError::NotHomomorphism("top is not preserved".into()));
        }
        for x in source.elements() {
            for y in source.elements() {
                let (hx, hy) = (map[x] as usize, map[y] as usize);
                if map[source.imp(x, y)] as usize != target.imp(hx, hy) {
                    return Err(CoreError::NotHomomorphism(format!(
                        "imp not preserved at ({x},{y})"
                    )));
                }
                if map[source.join(x, y)] as usize != target.join(hx, hy) {
                    return Err(CoreError::NotHomomorphism(format!(
                        "join not preserved at ({x},{y})"
                    )));
                }
            }
        }
        Ok(Homomorphism {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &Arc<FiniteAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteAlgebra> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.map[x] as Element
    }

    pub fn map_table(&self) -> &[u32] {
        &self.map
    }

    /// `Ker(h) = {x : h(x) = 1}`; always a deductive system of the source.
    pub fn kernel(&self) -> ElementSet {
        let mut k = ElementSet::empty(self.source.size());
        for x in self.source.elements() {
            if self.apply(x) == self.target.top() {
                k.insert(x);
            }
        }
        k
    }

    pub fn image(&self) -> ElementSet {
        let mut im = ElementSet::empty(self.target.size());
        for x in self.source.elements() {
            im.insert(self.apply(x));
        }
        im
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.size()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = ElementSet::empty(self.target.size());
        for x in self.source.elements() {
            let v = self.apply(x);
            if seen.contains(v) {
                return false;
            }
            seen.insert(v);
        }
        true
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

impl std::fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Homomorphism{:?}", self.map)
    }
}

/// A canonical small generating set: scan elements in ascending index
/// order and keep those not yet generated by the previous picks.
pub fn generating_set(algebra: &FiniteAlgebra) -> Vec<Element> {
    let mut gens = Vec::new();
    let mut closed = algebra.generated_subalgebra(&ElementSet::empty(algebra.size()));
    for x in algebra.elements() {
        if !closed.contains(x) {
            gens.push(x);
            let mut seed = closed.clone();
            seed.insert(x);
            closed = algebra.generated_subalgebra(&seed);
        }
    }
    gens
}

/// Extends a generator assignment to the whole source by closure,
/// failing fast on the first conflict. Returns the full map table when
/// the assignment is consistent. The generators must generate the source.
fn extend_assignment(
    source: &FiniteAlgebra,
    target: &FiniteAlgebra,
    generators: &[Element],
    images: &[Element],
) -> Option<Vec<u32>> {
    let mut map = vec![UNSET; source.size()];
    let mut defined: Vec<Element> = Vec::new();
    fn assign(
        map: &mut [u32],
        defined: &mut Vec<Element>,
        x: Element,
        v: Element,
    ) -> bool {
        if map[x] == UNSET {
            map[x] = v as u32;
            defined.push(x);
            true
        } else {
            map[x] as usize == v
        }
    }
    for (&g, &img) in generators.iter().zip(images) {
        if !assign(&mut map, &mut defined, g, img) {
            return None;
        }
    }
    let mut i = 0;
    while i < defined.len() {
        let x = defined[i];
        i += 1;
        for j in 0..i {
            let y = defined[j];
            let (hx, hy) = (map[x] as usize, map[y] as usize);
            let forced = [
                (source.imp(x, y), target.imp(hx, hy)),
                (source.imp(y, x), target.imp(hy, hx)),
                (source.join(x, y), target.join(hx, hy)),
            ];
            for (sv, tv) in forced {
                if !assign(&mut map, &mut defined, sv, tv) {
                    return None;
                }
            }
        }
    }
    if map.contains(&UNSET) {
        // The generators do not reach the whole carrier; callers check
        // this up front, so a hole here is a logic error.
        return None;
    }
    Some(map)
}

/// All homomorphisms determined by images of the given generators, which
/// must generate the source. Deterministic: sorted by map table.
pub fn restricted_extensions(
    source: &Arc<FiniteAlgebra>,
    generators: &[Element],
    target: &Arc<FiniteAlgebra>,
) -> Result<Vec<Homomorphism>> {
    let seed = ElementSet::from_indices(source.size(), generators);
    if source.generated_subalgebra(&seed).len() != source.size() {
        return Err(CoreError::NotGenerating);
    }
    let g = generators.len();
    let t = target.size();
    let mut images = vec![0usize; g];
    let mut out: Vec<Vec<u32>> = Vec::new();
    loop {
        if let Some(map) = extend_assignment(source, target, generators, &images) {
            out.push(map);
        }
        let mut i = 0;
        loop {
            if i == g {
                out.sort();
                out.dedup();
                return out
                    .into_iter()
                    .map(|map| Homomorphism::new(source.clone(), target.clone(), map))
                    .collect();
            }
            images[i] += 1;
            if images[i] < t {
                break;
            }
            images[i] = 0;
            i += 1;
        }
    }
}

/// Exhaustive homomorphism enumeration via a canonical generating set.
pub fn homomorphisms(
    source: &Arc<FiniteAlgebra>,
    target: &Arc<FiniteAlgebra>,
) -> Vec<Homomorphism> {
    let gens = generating_set(source);
    restricted_extensions(source, &gens, target)
        .expect("canonical generating set generates the algebra")
}

/// The surjective members of [`homomorphisms`], in the same order.
pub fn epimorphisms(
    source: &Arc<FiniteAlgebra>,
    target: &Arc<FiniteAlgebra>,
) -> Vec<Homomorphism> {
    homomorphisms(source, target)
        .into_iter()
        .filter(Homomorphism::is_surjective)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::guard::SizeGuard;

    fn arc_chain(q: usize) -> Arc<FiniteAlgebra> {
        Arc::new(FiniteAlgebra::chain(q).unwrap())
    }

    #[test]
    fn two_chain_endomorphisms() {
        let j2 = arc_chain(1);
        let homs = homomorphisms(&j2, &j2);
        assert_eq!(homs.len(), 2);
        assert_eq!(homs[0].map_table(), &[0, 1]);
        assert_eq!(homs[1].map_table(), &[1, 1]);
        let epis = epimorphisms(&j2, &j2);
        assert_eq!(epis.len(), 1);
        assert!(epis[0].is_isomorphism());
    }

    #[test]
    fn no_epimorphism_onto_larger_chain() {
        let j2 = arc_chain(1);
        let j3 = arc_chain(2);
        assert!(epimorphisms(&j2, &j3).is_empty());
        assert_eq!(homomorphisms(&j2, &j3).len(), 3);
    }

    #[test]
    fn chain_has_identity_as_only_automorphism() {
        for q in 1..=5 {
            let j = arc_chain(q);
            let autos: Vec<_> = epimorphisms(&j, &j)
                .into_iter()
                .filter(Homomorphism::is_injective)
                .collect();
            assert_eq!(autos.len(), 1, "chain q={q}");
            for x in 0..=q {
                assert_eq!(autos[0].apply(x), x);
            }
        }
    }

    #[test]
    fn epimorphisms_determined_by_kernel() {
        // Distinct epimorphisms onto a chain have distinct kernels.
        let j2 = arc_chain(1);
        let square = Arc::new(j2.power(2, &SizeGuard::default()).unwrap());
        let epis = epimorphisms(&square, &j2);
        let mut kernels: Vec<_> = epis.iter().map(|h| h.kernel().indices()).collect();
        kernels.sort();
        kernels.dedup();
        assert_eq!(kernels.len(), epis.len());
    }

    #[test]
    fn generating_set_of_chain() {
        let j4 = FiniteAlgebra::chain(3).unwrap();
        let gens = generating_set(&j4);
        let closed = j4.generated_subalgebra(&ElementSet::from_indices(4, &gens));
        assert_eq!(closed.len(), 4);
        assert!(gens.len() <= 3);
    }

    #[test]
    fn restricted_extension_requires_generators() {
        let j3 = arc_chain(2);
        let r = restricted_extensions(&j3, &[2], &j3);
        assert!(matches!(r, Err(CoreError::NotGenerating)));
    }

    #[test]
    fn kernel_of_projection_is_deductive() {
        let j2 = arc_chain(1);
        let square = Arc::new(j2.power(2, &SizeGuard::default()).unwrap());
        for h in epimorphisms(&square, &j2) {
            let k = h.kernel();
            assert!(crate::algebra::check_deductive(&square, &k).is_ok());
        }
    }
}
