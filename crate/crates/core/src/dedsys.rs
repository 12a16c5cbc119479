//! Deductive systems of a finite algebra and their classification.
//!
//! A deductive system is a subset containing the top and closed under
//! modus ponens; every such set is an up-set of the derived order, so the
//! full enumeration walks the up-sets of the order, saturates each under
//! modus ponens and deduplicates. Classification covers irreducibility
//! (two independent criteria), primeness, minimality and the chain
//! parameter of the quotient.

use std::collections::HashSet;
use std::sync::Arc;

use crate::algebra::{check_deductive, Element, FiniteAlgebra};
use crate::error::{CoreError, Result};
use crate::guard::SizeGuard;
use crate::hom::Homomorphism;
use crate::set::ElementSet;

/// A subset of a carrier containing the top and closed under modus ponens.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeductiveSystem {
    members: ElementSet,
}

impl DeductiveSystem {
    /// Validates the invariants against the parent algebra.
    pub fn new(algebra: &FiniteAlgebra, members: ElementSet) -> Result<DeductiveSystem> {
        check_deductive(algebra, &members)?;
        Ok(DeductiveSystem { members })
    }

    /// The principal system `[z) = {x : z ≤ x}`.
    pub fn principal(algebra: &FiniteAlgebra, z: Element) -> DeductiveSystem {
        DeductiveSystem {
            members: algebra.principal_filter(z),
        }
    }

    /// Modus-ponens saturation of an arbitrary seed (plus the top).
    pub fn saturate(algebra: &FiniteAlgebra, seed: &ElementSet) -> DeductiveSystem {
        let mut d = seed.clone();
        d.insert(algebra.top());
        loop {
            let mut changed = false;
            for x in d.indices() {
                for y in algebra.elements() {
                    if !d.contains(y) && d.contains(algebra.imp(x, y)) {
                        d.insert(y);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        DeductiveSystem { members: d }
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_proper(&self, algebra: &FiniteAlgebra) -> bool {
        self.members.len() < algebra.size()
    }
}

/// All up-sets of the derived order, found by deciding membership element
/// by element in an order that visits every element after everything
/// above it.
fn upsets(algebra: &FiniteAlgebra) -> Vec<ElementSet> {
    let m = algebra.size();
    let ups: Vec<ElementSet> = (0..m).map(|x| algebra.principal_filter(x)).collect();
    let mut order: Vec<Element> = (0..m).collect();
    order.sort_by_key(|&x| (ups[x].len(), x));
    let mut out = Vec::new();
    let mut current = ElementSet::empty(m);
    fn rec(
        i: usize,
        order: &[Element],
        ups: &[ElementSet],
        current: &mut ElementSet,
        out: &mut Vec<ElementSet>,
    ) {
        if i == order.len() {
            out.push(current.clone());
            return;
        }
        let x = order[i];
        rec(i + 1, order, ups, current, out);
        let mut above = ups[x].clone();
        above.remove(x);
        if above.is_subset(current) {
            current.insert(x);
            rec(i + 1, order, ups, current, out);
            current.remove(x);
        }
    }
    rec(0, &order, &ups, &mut current, &mut out);
    out
}

/// Enumerates every deductive system.
///
/// Carriers beyond `guard.max_full_ds` fall back to principal systems
/// only (every segment `[z)` saturated); below the guard the enumeration
/// is complete. Results are sorted by (cardinality, mask).
pub fn enumerate_ds(algebra: &FiniteAlgebra, guard: &SizeGuard) -> Vec<DeductiveSystem> {
    let seeds: Vec<ElementSet> = if algebra.size() <= guard.max_full_ds {
        upsets(algebra)
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect()
    } else {
        algebra
            .elements()
            .map(|z| algebra.principal_filter(z))
            .collect()
    };
    let mut systems: Vec<ElementSet> = seeds
        .into_iter()
        .map(|s| DeductiveSystem::saturate(algebra, &s).members)
        .collect();
    systems.sort_by(|a, b| a.set_cmp(b));
    systems.dedup();
    systems
        .into_iter()
        .map(|members| DeductiveSystem { members })
        .collect()
}

/// Irreducibility by the dominance criterion: every two elements outside
/// the system share an upper bound outside the system.
pub fn is_irreducible(algebra: &FiniteAlgebra, ds: &DeductiveSystem) -> Result<bool> {
    if !ds.is_proper(algebra) {
        return Err(CoreError::ImproperDs);
    }
    let outside: Vec<Element> = algebra
        .elements()
        .filter(|&x| !ds.contains(x))
        .collect();
    for (i, &a) in outside.iter().enumerate() {
        for &b in &outside[i..] {
            let covered = outside
                .iter()
                .any(|&c| algebra.leq(a, c) && algebra.leq(b, c));
            if !covered {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Full irreducibility by the witness criterion: some element outside the
/// system absorbs every implication from outside into the system.
pub fn is_fully_irreducible(algebra: &FiniteAlgebra, ds: &DeductiveSystem) -> Result<bool> {
    if !ds.is_proper(algebra) {
        return Err(CoreError::ImproperDs);
    }
    Ok(algebra.elements().any(|a| {
        !ds.contains(a)
            && algebra
                .elements()
                .filter(|&x| !ds.contains(x))
                .all(|x| ds.contains(algebra.imp(x, a)))
    }))
}

/// Primeness: a join in the system forces one of its arguments in.
pub fn is_prime(algebra: &FiniteAlgebra, ds: &DeductiveSystem) -> Result<bool> {
    if !ds.is_proper(algebra) {
        return Err(CoreError::ImproperDs);
    }
    for x in algebra.elements() {
        for y in algebra.elements() {
            if ds.contains(algebra.join(x, y)) && !ds.contains(x) && !ds.contains(y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Full classification record for one deductive system.
#[derive(Clone, Debug)]
pub struct DsClassification {
    pub ds: DeductiveSystem,
    pub proper: bool,
    pub irreducible: bool,
    pub fully_irreducible: bool,
    pub prime: bool,
    /// Minimal by inclusion among the irreducible systems.
    pub minimal_in_e: bool,
    /// `p` such that the quotient is the `(p+1)`-element chain, when the
    /// quotient is a non-trivial chain.
    pub valued_p: Option<usize>,
}

/// Classifies every enumerated deductive system. The quotient chain
/// parameter is recognized by total comparability of the quotient order;
/// chains are rigid, so the order type determines the chain.
pub fn classify_all(
    algebra: &Arc<FiniteAlgebra>,
    guard: &SizeGuard,
) -> Result<Vec<DsClassification>> {
    let systems = enumerate_ds(algebra, guard);
    let mut out = Vec::with_capacity(systems.len());
    for ds in systems {
        let proper = ds.is_proper(algebra);
        let (irreducible, fully_irreducible, prime) = if proper {
            (
                is_irreducible(algebra, &ds)?,
                is_fully_irreducible(algebra, &ds)?,
                is_prime(algebra, &ds)?,
            )
        } else {
            (false, false, false)
        };
        let (quotient, _) = algebra.quotient(ds.members())?;
        let valued_p = if quotient.size() >= 2 && quotient.is_totally_ordered() {
            Some(quotient.size() - 1)
        } else {
            None
        };
        out.push(DsClassification {
            ds,
            proper,
            irreducible,
            fully_irreducible,
            prime,
            minimal_in_e: false,
            valued_p,
        });
    }
    let irreducible_sets: Vec<ElementSet> = out
        .iter()
        .filter(|c| c.irreducible)
        .map(|c| c.ds.members().clone())
        .collect();
    for c in out.iter_mut().filter(|c| c.irreducible) {
        c.minimal_in_e = !irreducible_sets
            .iter()
            .any(|other| other != c.ds.members() && other.is_subset(c.ds.members()));
    }
    Ok(out)
}

/// The irreducible systems of a classification (the set `E`).
pub fn irreducible_of(cls: &[DsClassification]) -> Vec<&DsClassification> {
    cls.iter().filter(|c| c.irreducible).collect()
}

/// The minimal irreducible systems (the set `M`).
pub fn minimal_of(cls: &[DsClassification]) -> Vec<&DsClassification> {
    cls.iter().filter(|c| c.minimal_in_e).collect()
}

/// The irreducible systems whose quotient is the `(p+1)`-chain.
pub fn irreducible_valued(cls: &[DsClassification], p: usize) -> Vec<&DsClassification> {
    cls.iter()
        .filter(|c| c.irreducible && c.valued_p == Some(p))
        .collect()
}

pub fn minimal_valued(cls: &[DsClassification], p: usize) -> Vec<&DsClassification> {
    cls.iter()
        .filter(|c| c.minimal_in_e && c.valued_p == Some(p))
        .collect()
}

/// Checks both splitting identities: the irreducible systems intersect in
/// `{top}`, and so do the minimal ones.
pub fn splitting_check(algebra: &Arc<FiniteAlgebra>, guard: &SizeGuard) -> Result<bool> {
    let cls = classify_all(algebra, guard)?;
    let e = irreducible_of(&cls);
    if e.is_empty() {
        return Err(CoreError::BadParameter(
            "no irreducible deductive systems (trivial algebra)".into(),
        ));
    }
    let top_only = ElementSet::singleton(algebra.size(), algebra.top());
    let inter = |list: &[&DsClassification]| {
        list.iter()
            .map(|c| c.ds.members().clone())
            .reduce(|a, b| a.intersection(&b))
            .unwrap()
    };
    let e_ok = inter(&e) == top_only;
    let m_ok = inter(&minimal_of(&cls)) == top_only;
    Ok(e_ok && m_ok)
}

/// The ordered family of deductive systems containing `ds`, verified to
/// be a chain of principal systems. Returns `(generator, system)` pairs
/// ascending by inclusion, starting at `ds` itself.
pub fn chain_above(
    algebra: &Arc<FiniteAlgebra>,
    ds: &DeductiveSystem,
    guard: &SizeGuard,
) -> Result<Vec<(Element, DeductiveSystem)>> {
    let all = enumerate_ds(algebra, guard);
    let mut family: Vec<DeductiveSystem> = all
        .into_iter()
        .filter(|s| ds.members().is_subset(s.members()))
        .collect();
    family.sort_by(|a, b| a.members().set_cmp(b.members()));
    for pair in family.windows(2) {
        if !pair[0].members().is_subset(pair[1].members()) {
            return Err(CoreError::Verification(
                "systems above the given one do not form a chain".into(),
            ));
        }
    }
    if family.first().map(|s| s.members()) != Some(ds.members()) {
        return Err(CoreError::Verification(
            "the given system is not the least element of its chain".into(),
        ));
    }
    family
        .into_iter()
        .map(|s| {
            let mins = algebra.minimal_elements(s.members());
            if mins.len() != 1 {
                return Err(CoreError::Verification(format!(
                    "system {:?} is not principal",
                    s.members()
                )));
            }
            let g = mins.iter().next().unwrap();
            if algebra.principal_filter(g) != *s.members() {
                return Err(CoreError::Verification(format!(
                    "system {:?} is not the filter of its least element",
                    s.members()
                )));
            }
            Ok((g, s))
        })
        .collect()
}

/// The canonical epimorphism onto the `(p+1)`-chain associated with a
/// chain-valued irreducible system: an element maps to `p - j` where `j`
/// indexes the least member of the chain above `ds` containing it.
/// The construction is validated as a homomorphism with kernel `ds`.
pub fn canonical_epi(
    algebra: &Arc<FiniteAlgebra>,
    ds: &DeductiveSystem,
    guard: &SizeGuard,
) -> Result<Homomorphism> {
    if !ds.is_proper(algebra) {
        return Err(CoreError::ImproperDs);
    }
    let (quotient, _) = algebra.quotient(ds.members())?;
    if !quotient.is_totally_ordered() {
        return Err(CoreError::NotChainValued);
    }
    let p = quotient.size() - 1;
    let family = chain_above(algebra, ds, guard)?;
    if family.len() != p + 1 {
        return Err(CoreError::Verification(format!(
            "chain above a {}-valued system has {} members",
            p + 1,
            family.len()
        )));
    }
    let mut map = vec![0u32; algebra.size()];
    for x in algebra.elements() {
        let j = family
            .iter()
            .position(|(_, s)| s.contains(x))
            .ok_or_else(|| {
                CoreError::Verification("element missing from the full system".into())
            })?;
        map[x] = (p - j) as u32;
    }
    let chain = Arc::new(FiniteAlgebra::chain(p)?);
    let h = Homomorphism::new(algebra.clone(), chain, map)?;
    if h.kernel() != *ds.members() {
        return Err(CoreError::Verification(
            "canonical epimorphism kernel differs from the system".into(),
        ));
    }
    if !h.is_surjective() {
        return Err(CoreError::Verification(
            "canonical map onto the chain is not surjective".into(),
        ));
    }
    Ok(h)
}

/// For an irreducible system `ds` of the filter subalgebra at `c`, finds
/// the unique irreducible system of the ambient algebra whose trace on
/// the filter is `ds`. `ds` is given in ambient indices.
pub fn unique_extension(
    algebra: &Arc<FiniteAlgebra>,
    c: Element,
    ds_ambient: &ElementSet,
    guard: &SizeGuard,
) -> Result<DeductiveSystem> {
    let filter = algebra.principal_filter(c);
    if !ds_ambient.is_subset(&filter) {
        return Err(CoreError::BadParameter(
            "the system must live inside the filter".into(),
        ));
    }
    let sub = algebra.subalgebra(&filter)?;
    let local = ElementSet::from_indices(
        sub.algebra.size(),
        &ds_ambient
            .iter()
            .map(|x| sub.locate(x).expect("member of the filter"))
            .collect::<Vec<_>>(),
    );
    let local_ds = DeductiveSystem::new(&sub.algebra, local)?;
    if !is_irreducible(&sub.algebra, &local_ds)? {
        return Err(CoreError::BadParameter(
            "the filter system is not irreducible".into(),
        ));
    }
    let cls = classify_all(algebra, guard)?;
    let matches: Vec<&DsClassification> = irreducible_of(&cls)
        .into_iter()
        .filter(|m| m.ds.members().intersection(&filter) == *ds_ambient)
        .collect();
    match matches.len() {
        1 => Ok(matches[0].ds.clone()),
        n => Err(CoreError::Verification(format!(
            "expected exactly one irreducible extension, found {n}"
        ))),
    }
}

/// Injectivity of the joint map into the product of quotients by all
/// irreducible systems. The product is never materialized; elements are
/// compared by their projection signatures.
pub fn subdirect_embedding_injective(
    algebra: &Arc<FiniteAlgebra>,
    guard: &SizeGuard,
) -> Result<bool> {
    let cls = classify_all(algebra, guard)?;
    let e = irreducible_of(&cls);
    if e.is_empty() {
        return Err(CoreError::BadParameter(
            "no irreducible deductive systems (trivial algebra)".into(),
        ));
    }
    let projections: Vec<Homomorphism> = e
        .iter()
        .map(|c| algebra.quotient(c.ds.members()).map(|(_, p)| p))
        .collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    for x in algebra.elements() {
        let sig: Vec<usize> = projections.iter().map(|p| p.apply(x)).collect();
        if !seen.insert(sig) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc_chain(q: usize) -> Arc<FiniteAlgebra> {
        Arc::new(FiniteAlgebra::chain(q).unwrap())
    }

    fn guard() -> SizeGuard {
        SizeGuard::default()
    }

    fn j2_square() -> Arc<FiniteAlgebra> {
        let j2 = FiniteAlgebra::chain(1).unwrap();
        Arc::new(j2.power(2, &guard()).unwrap())
    }

    #[test]
    fn three_chain_has_exactly_the_filters() {
        let j3 = arc_chain(2);
        let systems = enumerate_ds(&j3, &guard());
        let sets: Vec<Vec<usize>> = systems.iter().map(|d| d.members().indices()).collect();
        assert_eq!(sets, vec![vec![2], vec![1, 2], vec![0, 1, 2]]);
    }

    #[test]
    fn two_chain_has_two_systems() {
        let j2 = arc_chain(1);
        assert_eq!(enumerate_ds(&j2, &guard()).len(), 2);
    }

    #[test]
    fn every_principal_filter_is_enumerated() {
        let sq = j2_square();
        let systems = enumerate_ds(&sq, &guard());
        for z in sq.elements() {
            let f = sq.principal_filter(z);
            assert!(
                systems.iter().any(|d| *d.members() == f),
                "missing [{z})"
            );
        }
    }

    /// Brute-force oracle: filter the full powerset.
    fn powerset_ds(a: &FiniteAlgebra) -> Vec<Vec<usize>> {
        let m = a.size();
        assert!(m <= 12);
        let mut out = Vec::new();
        for mask in 0u32..1 << m {
            if mask >> a.top() & 1 == 0 {
                continue;
            }
            let members: Vec<usize> = (0..m).filter(|&x| mask >> x & 1 == 1).collect();
            let set = ElementSet::from_indices(m, &members);
            if check_deductive(a, &set).is_ok() {
                out.push(members);
            }
        }
        out.sort_by_key(|s| (s.len(), s.iter().rev().fold(0u64, |acc, &x| acc | 1 << x)));
        out
    }

    #[test]
    fn enumeration_is_complete_against_powerset() {
        let guard = guard();
        let j2 = FiniteAlgebra::chain(1).unwrap();
        let j3 = FiniteAlgebra::chain(2).unwrap();
        for a in [
            Arc::new(FiniteAlgebra::chain(3).unwrap()),
            j2_square(),
            Arc::new(j2.power(3, &guard).unwrap()),
            Arc::new(crate::algebra::product(&[&j2, &j3], &guard).unwrap()),
            Arc::new(crate::algebra::product(&[&j2, &j2, &j3], &guard).unwrap()),
        ] {
            let fast: Vec<Vec<usize>> = enumerate_ds(&a, &guard)
                .iter()
                .map(|d| d.members().indices())
                .collect();
            let slow = powerset_ds(&a);
            assert_eq!(fast, slow, "size {}", a.size());
        }
    }

    #[test]
    fn irreducibility_in_three_chain() {
        let j3 = arc_chain(2);
        let d = DeductiveSystem::principal(&j3, 1);
        assert!(is_irreducible(&j3, &d).unwrap());
        let whole = DeductiveSystem::principal(&j3, 0);
        assert!(matches!(
            is_irreducible(&j3, &whole),
            Err(CoreError::ImproperDs)
        ));
    }

    #[test]
    fn irreducibility_in_square() {
        let sq = j2_square();
        // [(0,1)) with (0,1) encoded as index 2.
        let d = DeductiveSystem::principal(&sq, 2);
        assert!(is_irreducible(&sq, &d).unwrap());
        let top_only = DeductiveSystem::principal(&sq, 3);
        assert!(!is_irreducible(&sq, &top_only).unwrap());
    }

    #[test]
    fn full_irreducibility_examples() {
        let j3 = arc_chain(2);
        let d = DeductiveSystem::principal(&j3, 1);
        assert!(is_fully_irreducible(&j3, &d).unwrap());
        let j2 = arc_chain(1);
        let top_only = DeductiveSystem::principal(&j2, 1);
        assert!(is_fully_irreducible(&j2, &top_only).unwrap());
        let sq = j2_square();
        let top_sq = DeductiveSystem::principal(&sq, 3);
        assert!(!is_fully_irreducible(&sq, &top_sq).unwrap());
    }

    #[test]
    fn primeness_examples() {
        let sq = j2_square();
        let top_sq = DeductiveSystem::principal(&sq, 3);
        assert!(!is_prime(&sq, &top_sq).unwrap());
        let j3 = arc_chain(2);
        let d = DeductiveSystem::principal(&j3, 1);
        assert!(is_prime(&j3, &d).unwrap());
    }

    #[test]
    fn classification_of_three_chain() {
        let j3 = arc_chain(2);
        let cls = classify_all(&j3, &guard()).unwrap();
        assert_eq!(cls.len(), 3);
        let e = irreducible_of(&cls);
        assert_eq!(e.len(), 2);
        // [1) = {1,2} is 2-valued; [2) = {2} is 3-valued.
        for c in &e {
            match c.ds.len() {
                1 => assert_eq!(c.valued_p, Some(2)),
                2 => assert_eq!(c.valued_p, Some(1)),
                n => panic!("unexpected irreducible system of size {n}"),
            }
        }
        // The smallest irreducible system is the minimal one.
        let m = minimal_of(&cls);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].ds.len(), 1);
    }

    #[test]
    fn top_valued_class_is_nonempty_for_chains() {
        for q in 1..=4 {
            let j = arc_chain(q);
            let cls = classify_all(&j, &guard()).unwrap();
            assert!(
                !irreducible_valued(&cls, q).is_empty(),
                "chain q={q} must have a (q+1)-valued irreducible system"
            );
        }
    }

    #[test]
    fn square_minimal_systems_are_the_coordinate_filters() {
        let sq = j2_square();
        let cls = classify_all(&sq, &guard()).unwrap();
        let m = minimal_of(&cls);
        let mut sets: Vec<Vec<usize>> = m.iter().map(|c| c.ds.members().indices()).collect();
        sets.sort();
        assert_eq!(sets, vec![vec![1, 3], vec![2, 3]]);
        assert!(m.iter().all(|c| c.valued_p == Some(1)));
    }

    #[test]
    fn irreducible_matches_fully_irreducible_on_finite_algebras() {
        let guard = guard();
        let j2 = FiniteAlgebra::chain(1).unwrap();
        for a in [
            arc_chain(3),
            j2_square(),
            Arc::new(j2.power(3, &guard).unwrap()),
        ] {
            for c in classify_all(&a, &guard).unwrap() {
                assert_eq!(c.irreducible, c.fully_irreducible, "{:?}", c.ds);
            }
        }
    }

    #[test]
    fn irreducible_implies_prime() {
        let guard = guard();
        for a in [arc_chain(3), j2_square()] {
            for c in classify_all(&a, &guard).unwrap() {
                if c.irreducible {
                    assert!(c.prime, "{:?}", c.ds);
                }
            }
        }
    }

    #[test]
    fn splitting_identities_hold() {
        assert!(splitting_check(&arc_chain(1), &guard()).unwrap());
        assert!(splitting_check(&arc_chain(2), &guard()).unwrap());
        assert!(splitting_check(&j2_square(), &guard()).unwrap());
    }

    #[test]
    fn chain_above_in_three_chain() {
        let j3 = arc_chain(2);
        let d = DeductiveSystem::principal(&j3, 1);
        let family = chain_above(&j3, &d, &guard()).unwrap();
        let gens: Vec<usize> = family.iter().map(|(g, _)| *g).collect();
        assert_eq!(gens, vec![1, 0]);
        let epi = canonical_epi(&j3, &d, &guard()).unwrap();
        assert_eq!(epi.apply(0), 0);
        assert_eq!(epi.apply(1), 1);
        assert_eq!(epi.apply(2), 1);
        assert_eq!(epi.kernel(), *d.members());
    }

    #[test]
    fn canonical_epi_of_top_system_is_identity() {
        for p in 1..=4 {
            let j = arc_chain(p);
            let d = DeductiveSystem::principal(&j, p);
            let epi = canonical_epi(&j, &d, &guard()).unwrap();
            for x in 0..=p {
                assert_eq!(epi.apply(x), x);
            }
        }
    }

    #[test]
    fn canonical_epi_on_square_filter() {
        let sq = j2_square();
        let d = DeductiveSystem::principal(&sq, 2);
        let epi = canonical_epi(&sq, &d, &guard()).unwrap();
        assert_eq!(epi.target().size(), 2);
        assert_eq!(epi.kernel(), *d.members());
    }

    #[test]
    fn unique_extension_when_filter_is_whole_algebra() {
        let j3 = arc_chain(2);
        let d = j3.principal_filter(1);
        let m = unique_extension(&j3, 0, &d, &guard()).unwrap();
        assert_eq!(*m.members(), d);
    }

    #[test]
    fn subdirect_embedding_is_injective() {
        assert!(subdirect_embedding_injective(&arc_chain(2), &guard()).unwrap());
        assert!(subdirect_embedding_injective(&j2_square(), &guard()).unwrap());
    }

    #[test]
    fn principal_fallback_beyond_guard() {
        let tight = SizeGuard {
            max_full_ds: 2,
            ..SizeGuard::default()
        };
        let j3 = arc_chain(2);
        let systems = enumerate_ds(&j3, &tight);
        // The three principal filters are exactly all systems here.
        assert_eq!(systems.len(), 3);
    }
}
