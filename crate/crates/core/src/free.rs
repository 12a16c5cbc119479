//! Finitely generated free algebras of the chain-generated varieties.
//!
//! The free algebra on `r` generators in the variety generated by the
//! `(n+1)`-chain is realized concretely: elements are valuation tuples of
//! length `(n+1)^r` (one coordinate per function from the generators into
//! the chain), and the carrier is the closure of the `r` projection
//! tuples under coordinatewise implication and join. The ambient power is
//! never materialized; only the closure is.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{product, Element, FiniteAlgebra, Subalgebra};
use crate::counting::binomial;
use crate::dedsys::{classify_all, minimal_of, DsClassification};
use crate::dedsys::canonical_epi;
use crate::error::{CoreError, Result};
use crate::guard::SizeGuard;
use crate::hom::restricted_extensions;
use crate::laws::{ValidationReport, Violation};
use crate::set::ElementSet;

/// The free algebra with `r` generators in the variety of the
/// `(n+1)`-chain, stored as explicit valuation tuples with realized
/// operation tables.
pub struct FreeAlgebra {
    n: usize,
    r: usize,
    valuation_count: usize,
    elements: Vec<Vec<u8>>,
    generators: Vec<Element>,
    algebra: Arc<FiniteAlgebra>,
}

fn tuple_imp(n: u8, a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| if x <= y { n } else { y })
        .collect()
}

fn tuple_join(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

/// Builds the free algebra by closing the projection generators.
///
/// Element order is deterministic: the `r` generators first, then the top
/// tuple, then discovery order of the closure. Valuation `v` assigns
/// digit `(v / (n+1)^i) mod (n+1)` to generator `i` (coordinate 0 least
/// significant), so generator `i` at valuation `v` is exactly that digit.
pub fn build_free(n: usize, r: usize, guard: &SizeGuard) -> Result<FreeAlgebra> {
    if n < 1 || r < 1 {
        return Err(CoreError::BadParameter(
            "free algebras need n >= 1 and r >= 1".into(),
        ));
    }
    if n > u8::MAX as usize - 1 {
        return Err(CoreError::BadParameter("chain parameter too large".into()));
    }
    let base = (n + 1) as u128;
    let mut vc: u128 = 1;
    for _ in 0..r {
        vc = vc.saturating_mul(base);
    }
    let valuation_count = guard.check_carrier(vc)?;
    let nd = n as u8;

    let mut elements: Vec<Vec<u8>> = Vec::new();
    let mut index: HashMap<Vec<u8>, u32> = HashMap::new();
    let push = |elements: &mut Vec<Vec<u8>>,
                    index: &mut HashMap<Vec<u8>, u32>,
                    t: Vec<u8>|
     -> Result<()> {
        if !index.contains_key(&t) {
            if elements.len() >= guard.max_free_elements {
                return Err(CoreError::SizeGuard {
                    requested: elements.len() as u128 + 1,
                    cap: guard.max_free_elements,
                });
            }
            index.insert(t.clone(), elements.len() as u32);
            elements.push(t);
        }
        Ok(())
    };

    for i in 0..r {
        let stride = (n + 1).pow(i as u32);
        let g: Vec<u8> = (0..valuation_count)
            .map(|v| (v / stride % (n + 1)) as u8)
            .collect();
        push(&mut elements, &mut index, g)?;
    }
    push(&mut elements, &mut index, vec![nd; valuation_count])?;

    let mut i = 0;
    while i < elements.len() {
        for j in 0..=i {
            let (a, b) = (elements[i].clone(), elements[j].clone());
            push(&mut elements, &mut index, tuple_imp(nd, &a, &b))?;
            push(&mut elements, &mut index, tuple_imp(nd, &b, &a))?;
            push(&mut elements, &mut index, tuple_join(&a, &b))?;
        }
        i += 1;
    }

    let m = elements.len();
    let mut imp = vec![0u32; m * m];
    let mut join = vec![0u32; m * m];
    for x in 0..m {
        for y in 0..m {
            imp[x * m + y] = index[&tuple_imp(nd, &elements[x], &elements[y])];
            join[x * m + y] = index[&tuple_join(&elements[x], &elements[y])];
        }
    }
    let top = index[&vec![nd; valuation_count]];
    let algebra = Arc::new(FiniteAlgebra::from_flat(m, top, imp, join));
    Ok(FreeAlgebra {
        n,
        r,
        valuation_count,
        elements,
        generators: (0..r).collect(),
        algebra,
    })
}

impl FreeAlgebra {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn valuation_count(&self) -> usize {
        self.valuation_count
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    /// Generator positions in the carrier (always `0..r`).
    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn element_tuple(&self, x: Element) -> &[u8] {
        &self.elements[x]
    }

    pub fn tuples(&self) -> &[Vec<u8>] {
        &self.elements
    }

    /// Structural diagnostics on the generating set: the generators are
    /// pairwise incomparable, they are exactly the minimal elements of
    /// the carrier, and their principal filters cover everything.
    pub fn generator_diagnostics(&self) -> ValidationReport {
        let a = &self.algebra;
        let mut report = ValidationReport::default();
        for (i, &g) in self.generators.iter().enumerate() {
            for &h in &self.generators[i + 1..] {
                if a.leq(g, h) || a.leq(h, g) {
                    report.violations.push(Violation {
                        law: "generators-antichain",
                        witness: vec![g, h],
                        count: 1,
                    });
                }
            }
        }
        let carrier = ElementSet::full(a.size());
        let mu = a.minimal_elements(&carrier);
        let gens = ElementSet::from_indices(a.size(), &self.generators);
        if mu != gens {
            report.violations.push(Violation {
                law: "generators-are-minimal-elements",
                witness: mu.indices(),
                count: 1,
            });
        }
        for x in a.elements() {
            if !self.generators.iter().any(|&g| a.leq(g, x)) {
                report.violations.push(Violation {
                    law: "generator-filters-cover",
                    witness: vec![x],
                    count: 1,
                });
            }
        }
        report
    }

    /// Builds the filter of the join of a generator subset, together with
    /// its classification data.
    ///
    /// Verifies the filter equals the intersection of the generators'
    /// filters, computes the valuedness of the filter subalgebra and
    /// counts its minimal / all irreducible systems by chain parameter.
    pub fn join_filter(&self, subset: &[usize], guard: &SizeGuard) -> Result<GeneratorFilter> {
        let mut subset: Vec<usize> = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        if subset.is_empty() {
            return Err(CoreError::BadParameter("empty generator subset".into()));
        }
        if *subset.last().unwrap() >= self.r {
            return Err(CoreError::BadParameter(format!(
                "generator index {} out of range",
                subset.last().unwrap()
            )));
        }
        let a = &self.algebra;
        let join_element = subset[1..]
            .iter()
            .fold(subset[0], |acc, &g| a.join(acc, g));
        let filter = a.principal_filter(join_element);
        let intersection = subset
            .iter()
            .map(|&g| a.principal_filter(g))
            .reduce(|x, y| x.intersection(&y))
            .unwrap();
        if filter != intersection {
            return Err(CoreError::Verification(
                "join filter differs from the intersection of generator filters".into(),
            ));
        }
        let subalgebra = a.subalgebra(&filter)?;
        let valuedness = subalgebra.algebra.valuedness();
        if valuedness > self.n {
            return Err(CoreError::Verification(format!(
                "filter subalgebra has valuedness {valuedness} above n = {}",
                self.n
            )));
        }
        let classification = classify_all(&subalgebra.algebra, guard)?;
        let mut alpha = vec![0u64; self.n];
        let mut eta = vec![0u64; self.n];
        for c in &classification {
            if !c.irreducible {
                continue;
            }
            let p = c.valued_p.ok_or_else(|| {
                CoreError::Verification("irreducible system without a chain quotient".into())
            })?;
            if p > self.n {
                return Err(CoreError::Verification(format!(
                    "irreducible system with chain parameter {p} above n"
                )));
            }
            eta[p - 1] += 1;
            if c.minimal_in_e {
                alpha[p - 1] += 1;
            }
        }
        Ok(GeneratorFilter {
            subset,
            join_element,
            filter,
            subalgebra,
            valuedness,
            alpha,
            eta,
            classification,
        })
    }

    /// The filters of the joins of the first `k` generators, `k = 1..=r`.
    pub fn canonical_filters(&self, guard: &SizeGuard) -> Result<Vec<GeneratorFilter>> {
        (1..=self.r)
            .map(|k| self.join_filter(&(0..k).collect::<Vec<_>>(), guard))
            .collect()
    }

    /// Rebuilds the filter as a product of chains along the canonical
    /// epimorphisms of its minimal irreducible systems and checks the
    /// joint map is an isomorphism.
    pub fn verify_decomposition(
        &self,
        gf: &GeneratorFilter,
        guard: &SizeGuard,
    ) -> Result<DecompositionCheck> {
        let sub = &gf.subalgebra.algebra;
        let mins: Vec<&DsClassification> = minimal_of(&gf.classification);
        let mut epis = Vec::with_capacity(mins.len());
        let mut factor_sizes = Vec::with_capacity(mins.len());
        for c in &mins {
            let p = c.valued_p.ok_or(CoreError::NotChainValued)?;
            epis.push(canonical_epi(sub, &c.ds, guard)?);
            factor_sizes.push(p + 1);
        }
        let chains: Vec<FiniteAlgebra> = factor_sizes
            .iter()
            .map(|&s| FiniteAlgebra::chain(s - 1))
            .collect::<Result<_>>()?;
        let chain_refs: Vec<&FiniteAlgebra> = chains.iter().collect();
        let prod = product(&chain_refs, guard)?;
        let encode = |x: Element| -> Element {
            let digits: Vec<Element> = epis.iter().map(|h| h.apply(x)).collect();
            FiniteAlgebra::encode_tuple(&digits, &factor_sizes)
        };
        let images: Vec<Element> = sub.elements().map(encode).collect();
        let mut seen = vec![false; prod.size()];
        for (x, &ix) in images.iter().enumerate() {
            if seen[ix] {
                return Ok(DecompositionCheck {
                    holds: false,
                    witness: Some(vec![x]),
                    filter_size: sub.size(),
                    product_size: prod.size(),
                    factor_sizes,
                });
            }
            seen[ix] = true;
        }
        if sub.size() != prod.size() {
            return Ok(DecompositionCheck {
                holds: false,
                witness: None,
                filter_size: sub.size(),
                product_size: prod.size(),
                factor_sizes,
            });
        }
        for x in sub.elements() {
            for y in sub.elements() {
                if images[sub.imp(x, y)] != prod.imp(images[x], images[y])
                    || images[sub.join(x, y)] != prod.join(images[x], images[y])
                {
                    return Ok(DecompositionCheck {
                        holds: false,
                        witness: Some(vec![x, y]),
                        filter_size: sub.size(),
                        product_size: prod.size(),
                        factor_sizes,
                    });
                }
            }
        }
        Ok(DecompositionCheck {
            holds: true,
            witness: None,
            filter_size: sub.size(),
            product_size: prod.size(),
            factor_sizes,
        })
    }

    /// Evaluates the three cardinality routes against the actual size:
    /// inclusion–exclusion over all generator subsets, the binomial
    /// collapse over canonical subsets, and the chain-power product form.
    pub fn cardinality_checks(&self, filters: &[GeneratorFilter]) -> CardinalityReport {
        let a = &self.algebra;
        let r = self.r;
        assert_eq!(filters.len(), r, "one canonical filter per 1..=r");
        let mut inclusion_exclusion: i128 = 0;
        for mask in 1u32..1 << r {
            let inter = (0..r)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| a.principal_filter(self.generators[i]))
                .reduce(|x, y| x.intersection(&y))
                .unwrap();
            let k = mask.count_ones();
            let sign = if k % 2 == 1 { 1 } else { -1 };
            inclusion_exclusion += sign * inter.len() as i128;
        }
        let mut binomial_filter_form: i128 = 0;
        let mut alpha_product_form: i128 = 0;
        for (k, gf) in (1..=r).zip(filters) {
            let choose: i128 = binomial(r as u64, k as u64)
                .try_into()
                .expect("binomial fits in i128 at desk scale");
            let sign = if k % 2 == 1 { 1 } else { -1 };
            binomial_filter_form += sign * choose * gf.filter.len() as i128;
            let mut prod: i128 = 1;
            for (p, &count) in (1..=self.n).zip(&gf.alpha) {
                prod *= ((p + 1) as i128).pow(count as u32);
            }
            alpha_product_form += sign * choose * prod;
        }
        CardinalityReport {
            actual: self.size() as u64,
            inclusion_exclusion,
            binomial_filter_form,
            alpha_product_form,
        }
    }

    /// For every epimorphism onto a chain of the variety, checks that the
    /// generator images cover the chain below the top, and that filters
    /// map onto filters.
    pub fn epi_image_check(&self, guard: &SizeGuard) -> Result<ValidationReport> {
        let _ = guard;
        let a = &self.algebra;
        let mut report = ValidationReport::default();
        for q in 1..=self.n {
            let chain = Arc::new(FiniteAlgebra::chain(q)?);
            let homs = restricted_extensions(a, &self.generators, &chain)?;
            for h in homs.iter().filter(|h| h.is_surjective()) {
                let gen_images: Vec<Element> =
                    self.generators.iter().map(|&g| h.apply(g)).collect();
                for v in 0..q {
                    if !gen_images.contains(&v) {
                        report.violations.push(Violation {
                            law: "epi-generator-images-cover-chain",
                            witness: [vec![q, v], gen_images.clone()].concat(),
                            count: 1,
                        });
                    }
                }
                for z in a.elements() {
                    let mut image_of_filter = ElementSet::empty(chain.size());
                    for x in a.elements() {
                        if a.leq(z, x) {
                            image_of_filter.insert(h.apply(x));
                        }
                    }
                    let filter_of_image = chain.principal_filter(h.apply(z));
                    if image_of_filter != filter_of_image {
                        report.violations.push(Violation {
                            law: "epi-maps-filters-onto-filters",
                            witness: vec![q, z],
                            count: 1,
                        });
                    }
                }
            }
        }
        Ok(report)
    }

    /// Freeness at the realized scale: every assignment of the generators
    /// into the `(q+1)`-chain, `q ≤ n`, extends to exactly one
    /// homomorphism.
    pub fn freeness_check(&self) -> Result<ValidationReport> {
        let a = &self.algebra;
        let mut report = ValidationReport::default();
        for q in 1..=self.n {
            let chain = Arc::new(FiniteAlgebra::chain(q)?);
            let homs = restricted_extensions(a, &self.generators, &chain)?;
            let expected = (q + 1).pow(self.r as u32);
            if homs.len() != expected {
                report.violations.push(Violation {
                    law: "free-extension-count",
                    witness: vec![q, homs.len(), expected],
                    count: 1,
                });
            }
        }
        Ok(report)
    }
}

/// The filter above the join of a generator subset, with its
/// classification: valuedness of the subalgebra and the counts of
/// minimal (`alpha`) and all (`eta`) irreducible systems per chain
/// parameter (index `p-1` holds the `(p+1)`-chain count).
pub struct GeneratorFilter {
    pub subset: Vec<usize>,
    pub join_element: Element,
    pub filter: ElementSet,
    pub subalgebra: Subalgebra,
    pub valuedness: usize,
    pub alpha: Vec<u64>,
    pub eta: Vec<u64>,
    pub classification: Vec<DsClassification>,
}

/// Result of rebuilding a filter as a product of chains.
#[derive(Debug)]
pub struct DecompositionCheck {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
    pub filter_size: usize,
    pub product_size: usize,
    pub factor_sizes: Vec<usize>,
}

/// Three-way cardinality crosscheck for a free algebra.
#[derive(Debug)]
pub struct CardinalityReport {
    pub actual: u64,
    pub inclusion_exclusion: i128,
    pub binomial_filter_form: i128,
    pub alpha_product_form: i128,
}

impl CardinalityReport {
    pub fn all_agree(&self) -> bool {
        let a = self.actual as i128;
        a == self.inclusion_exclusion
            && a == self.binomial_filter_form
            && a == self.alpha_product_form
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn guard() -> SizeGuard {
        SizeGuard::default()
    }

    #[test]
    fn one_generator_two_chain() {
        let f = build_free(1, 1, &guard()).unwrap();
        assert_eq!(f.size(), 2);
        assert_eq!(f.tuples(), &[vec![0, 1], vec![1, 1]]);
        assert_eq!(f.generators(), &[0]);
    }

    #[test]
    fn two_generators_two_chain_has_six_elements() {
        let f = build_free(1, 2, &guard()).unwrap();
        assert_eq!(f.size(), 6);
        assert_eq!(f.valuation_count(), 4);
        let mut gens: Vec<Vec<u8>> = f
            .generators()
            .iter()
            .map(|&g| f.element_tuple(g).to_vec())
            .collect();
        gens.sort();
        assert_eq!(gens, vec![vec![0, 0, 1, 1], vec![0, 1, 0, 1]]);
    }

    #[test]
    fn single_generator_closures_stay_small() {
        for n in 1..=3 {
            let f = build_free(n, 1, &guard()).unwrap();
            assert_eq!(f.size(), 2, "n={n}");
        }
    }

    #[test]
    fn generator_diagnostics_clean_on_grid() {
        for (n, r) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let f = build_free(n, r, &guard()).unwrap();
            let report = f.generator_diagnostics();
            assert!(report.is_empty(), "n={n} r={r}: {report}");
        }
    }

    #[test]
    fn join_filter_of_both_generators() {
        let f = build_free(1, 2, &guard()).unwrap();
        let gf = f.join_filter(&[0, 1], &guard()).unwrap();
        assert_eq!(f.element_tuple(gf.join_element), &[0, 1, 1, 1]);
        let mut tuples: Vec<Vec<u8>> = gf
            .filter
            .iter()
            .map(|x| f.element_tuple(x).to_vec())
            .collect();
        tuples.sort();
        assert_eq!(tuples, vec![vec![0, 1, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(gf.alpha, vec![1]);
        assert_eq!(gf.eta, vec![1]);
        assert_eq!(gf.valuedness, 1);
    }

    #[test]
    fn singleton_subset_filter_is_generator_filter() {
        let f = build_free(1, 2, &guard()).unwrap();
        let gf = f.join_filter(&[1], &guard()).unwrap();
        assert_eq!(gf.join_element, 1);
        assert_eq!(gf.filter.len(), 4);
        assert_eq!(gf.alpha, vec![2]);
        assert_eq!(gf.eta, vec![2]);
    }

    #[test]
    fn alpha_depends_only_on_subset_size() {
        for (n, r) in [(1, 2), (2, 2)] {
            let f = build_free(n, r, &guard()).unwrap();
            let a0 = f.join_filter(&[0], &guard()).unwrap();
            let a1 = f.join_filter(&[1], &guard()).unwrap();
            assert_eq!(a0.alpha, a1.alpha, "n={n} r={r}");
            assert_eq!(a0.eta, a1.eta, "n={n} r={r}");
            assert_eq!(a0.filter.len(), a1.filter.len());
        }
    }

    #[test]
    fn first_free_example_decomposes_as_two_chain() {
        let f = build_free(1, 1, &guard()).unwrap();
        let gf = f.join_filter(&[0], &guard()).unwrap();
        assert_eq!(gf.alpha, vec![1]);
        let check = f.verify_decomposition(&gf, &guard()).unwrap();
        assert!(check.holds);
        assert_eq!(check.factor_sizes, vec![2]);
        assert_eq!(check.filter_size, 2);
    }

    #[test]
    fn second_free_example_decomposes_as_square_and_chain() {
        let f = build_free(1, 2, &guard()).unwrap();
        let g1 = f.join_filter(&[0], &guard()).unwrap();
        let check = f.verify_decomposition(&g1, &guard()).unwrap();
        assert!(check.holds);
        assert_eq!(check.filter_size, 4);
        assert_eq!(check.product_size, 4);
        assert_eq!(check.factor_sizes, vec![2, 2]);
        let g12 = f.join_filter(&[0, 1], &guard()).unwrap();
        let check = f.verify_decomposition(&g12, &guard()).unwrap();
        assert!(check.holds);
        assert_eq!(check.factor_sizes, vec![2]);
    }

    #[test]
    fn filter_of_three_chain_single_generator() {
        let f = build_free(2, 1, &guard()).unwrap();
        let gf = f.join_filter(&[0], &guard()).unwrap();
        assert_eq!(gf.alpha, vec![1, 0]);
        let check = f.verify_decomposition(&gf, &guard()).unwrap();
        assert!(check.holds);
        assert_eq!(check.factor_sizes, vec![2]);
    }

    #[test]
    fn cardinality_routes_agree_on_grid() {
        for (n, r, expected) in [(1, 1, 2), (1, 2, 6), (2, 1, 2), (2, 2, 16), (1, 3, 38)] {
            let f = build_free(n, r, &guard()).unwrap();
            let filters = f.canonical_filters(&guard()).unwrap();
            let report = f.cardinality_checks(&filters);
            assert!(report.all_agree(), "n={n} r={r}: {report:?}");
            assert_eq!(report.actual, expected, "n={n} r={r}");
        }
    }

    #[test]
    fn larger_chain_with_two_generators_stabilizes() {
        // With two generators no epimorphism can reach a four-element
        // chain, so the closure for n = 3 coincides in size with n = 2.
        let f = build_free(3, 2, &guard()).unwrap();
        assert_eq!(f.size(), 16);
        let filters = f.canonical_filters(&guard()).unwrap();
        assert!(f.cardinality_checks(&filters).all_agree());
        assert_eq!(filters[0].alpha, vec![2, 1, 0]);
    }

    #[test]
    fn epi_images_and_freeness_clean_on_grid() {
        for (n, r) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let f = build_free(n, r, &guard()).unwrap();
            assert!(f.epi_image_check(&guard()).unwrap().is_empty(), "n={n} r={r}");
            assert!(f.freeness_check().unwrap().is_empty(), "n={n} r={r}");
        }
    }

    #[test]
    fn guard_rejects_oversized_request() {
        let tight = SizeGuard {
            max_free_elements: 4,
            ..SizeGuard::default()
        };
        assert!(matches!(
            build_free(1, 2, &tight),
            Err(CoreError::SizeGuard { .. })
        ));
    }
}
