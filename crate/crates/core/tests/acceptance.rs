//! Acceptance suite: every release criterion as one test, each printing a
//! single verdict line (run with `--nocapture` to see them).
//!
//! All expected values are exact; tolerances are equality. The axiom
//! sweep (criterion 7) is tiered: carriers up to 1024 get the full cubic
//! law scan, larger powers up to 4096 get exhaustive quadratic laws plus
//! full componentwise table verification plus a deterministic sampled
//! cubic sweep.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};

use hilsup_core::counting::{beta, eta_closed_form, eta_via_theorem, upper_bound};
use hilsup_core::dedsys::{
    classify_all, irreducible_of, splitting_check, subdirect_embedding_injective,
};
use hilsup_core::free::build_free;
use hilsup_core::laws::{
    check_derived_identities, check_quadratic_identities, spot_check_identities,
    validate_hilbert, validate_sup, verify_componentwise,
};
use hilsup_core::report::build_count_report;
use hilsup_core::{FiniteAlgebra, SizeGuard};

const GRID: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];

fn guard() -> SizeGuard {
    SizeGuard::default()
}

#[test]
fn criterion_1_single_generator_free_algebra() {
    let start = Instant::now();
    let f = build_free(1, 1, &guard()).unwrap();
    assert_eq!(f.size(), 2, "free algebra on one generator over the 2-chain");
    let gf = f.join_filter(&[0], &guard()).unwrap();
    assert_eq!(gf.alpha, vec![1], "alpha_{{1,2}}");
    let check = f.verify_decomposition(&gf, &guard()).unwrap();
    assert!(check.holds);
    assert_eq!(check.factor_sizes, vec![2], "generator filter is the 2-chain");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "criterion 1 must run in under 1 s");
    println!(
        "[acceptance] criterion 1: PASS - |free(1,1)| = 2, generator filter = 2-chain, alpha = [1] ({} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_2_two_generator_free_algebra() {
    let start = Instant::now();
    let f = build_free(1, 2, &guard()).unwrap();
    assert_eq!(f.size(), 6);
    for g in 0..2 {
        let gf = f.join_filter(&[g], &guard()).unwrap();
        assert_eq!(gf.alpha, vec![2], "alpha_{{1,2}} via generator {g}");
        let check = f.verify_decomposition(&gf, &guard()).unwrap();
        assert!(check.holds);
        assert_eq!(
            check.factor_sizes,
            vec![2, 2],
            "generator filter is the square of the 2-chain"
        );
    }
    let both = f.join_filter(&[0, 1], &guard()).unwrap();
    assert_eq!(both.alpha, vec![1], "alpha_{{2,2}}");
    let check = f.verify_decomposition(&both, &guard()).unwrap();
    assert!(check.holds);
    assert_eq!(check.factor_sizes, vec![2], "join filter is the 2-chain");
    let filters = f.canonical_filters(&guard()).unwrap();
    let card = f.cardinality_checks(&filters);
    assert!(card.all_agree(), "{card:?}");
    assert_eq!(card.actual, 6);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "criterion 2 must run in under 1 s");
    println!(
        "[acceptance] criterion 2: PASS - |free(1,2)| = 6, filters decompose as [2,2] and [2], all cardinality routes give 6 ({} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_3_assignment_count_matches_classification_oracle() {
    let start = Instant::now();
    let g = guard();
    let mut checked = 0;
    for (n, r) in GRID {
        let f = build_free(n, r, &g).unwrap();
        let filters = f.canonical_filters(&g).unwrap();
        for k in 1..=r {
            let gf = &filters[k - 1];
            for p in 1..=n {
                let via = eta_via_theorem(n as u32, r as u32, k as u32, p as u32, &g).unwrap();
                let oracle = gf.eta[p - 1];
                assert_eq!(
                    via, oracle,
                    "counts disagree at (n={n}, r={r}, k={k}, p={p})"
                );
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "criterion 3 must run in under 60 s");
    println!(
        "[acceptance] criterion 3: PASS - assignment enumeration equals the classification oracle at {checked} grid points ({} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_4_closed_form_consistency() {
    let g = guard();
    let mut checked = 0;
    for (n, r) in GRID {
        let f = build_free(n, r, &g).unwrap();
        let filters = f.canonical_filters(&g).unwrap();
        for k in 1..r {
            let gf = &filters[k - 1];
            for p in 1..=gf.valuedness {
                let closed = beta(n as u64, r as u64, k as u64, p as u64);
                let oracle = BigUint::from(gf.eta[p - 1]);
                assert_eq!(
                    closed, oracle,
                    "closed form disagrees with the enumeration oracle at witness (n={n}, r={r}, k={k}, p={p})"
                );
                checked += 1;
            }
        }
    }
    println!(
        "[acceptance] criterion 4: PASS - the double-sum closed form matches the enumeration oracle at all {checked} applicable (n, r, k, p) points"
    );
}

#[test]
fn criterion_5_bound_dominates_and_is_tight_on_small_grid() {
    let g = guard();
    for (n, r) in GRID {
        let report = build_count_report(n as u32, r as u32, &g).unwrap();
        let exact = BigInt::from(report.cardinality_exact);
        assert!(
            report.upper_bound_oracle >= exact,
            "bound {} below exact {} at (n={n}, r={r})",
            report.upper_bound_oracle,
            report.cardinality_exact
        );
        assert!(report.bound_holds);
        if (n, r) == (1, 1) || (n, r) == (1, 2) {
            assert_eq!(
                report.upper_bound_oracle, exact,
                "bound must be tight at (n={n}, r={r})"
            );
        }
    }
    println!(
        "[acceptance] criterion 5: PASS - oracle-table bound dominates the exact cardinality on the grid and is tight at (1,1) and (1,2)"
    );
}

#[test]
fn criterion_6_structural_suite() {
    let g = guard();
    for (n, r) in GRID {
        let f = build_free(n, r, &g).unwrap();
        let diag = f.generator_diagnostics();
        assert!(diag.is_empty(), "(n={n}, r={r}): {diag}");

        // Every generator-subset filter equals the intersection of the
        // generator filters (verified inside join_filter).
        let mut filters = Vec::new();
        for mask in 1u32..1 << r {
            let subset: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
            filters.push(f.join_filter(&subset, &g).unwrap());
        }

        // Irreducible systems are prime, on the free algebra and on each
        // filter subalgebra.
        let ambient_cls = classify_all(f.algebra(), &g).unwrap();
        for c in irreducible_of(&ambient_cls) {
            assert!(c.prime, "(n={n}, r={r}): {:?}", c.ds.members().indices());
        }
        for gf in &filters {
            for c in irreducible_of(&gf.classification) {
                assert!(c.prime, "(n={n}, r={r}) filter {:?}", gf.subset);
            }
        }

        assert!(splitting_check(f.algebra(), &g).unwrap(), "(n={n}, r={r})");
        assert!(
            subdirect_embedding_injective(f.algebra(), &g).unwrap(),
            "(n={n}, r={r})"
        );
        for gf in &filters {
            assert!(
                splitting_check(&gf.subalgebra.algebra, &g).unwrap(),
                "(n={n}, r={r}) filter {:?}",
                gf.subset
            );
            assert!(
                subdirect_embedding_injective(&gf.subalgebra.algebra, &g).unwrap(),
                "(n={n}, r={r}) filter {:?}",
                gf.subset
            );
        }
    }
    println!(
        "[acceptance] criterion 6: PASS - generators, filter intersections, primeness, splitting and subdirect injectivity hold on the whole grid"
    );
}

#[test]
fn criterion_7_axiom_suites_on_chains_and_powers() {
    let start = Instant::now();
    let g = guard();

    for q in 1..=6 {
        let chain = FiniteAlgebra::chain(q).unwrap();
        assert!(validate_hilbert(&chain).is_empty(), "chain q={q}");
        assert!(validate_sup(&chain).is_empty(), "chain q={q}");
        assert!(check_derived_identities(&chain).is_empty(), "chain q={q}");
    }
    for q in 1..=5 {
        let chain = FiniteAlgebra::chain(q).unwrap();
        for p in 1..=6 {
            assert_eq!(
                chain.thomas_holds(p),
                p >= q,
                "Thomas term on the {}-chain at p={p}",
                q + 1
            );
        }
    }

    let mut full = 0;
    let mut tiered = 0;
    for s in 2..=7usize {
        let base = FiniteAlgebra::chain(s - 1).unwrap();
        for k in 2.. {
            let carrier = s.checked_pow(k as u32).unwrap();
            if carrier > 4096 {
                break;
            }
            let power = base.power(k, &g).unwrap();
            let factors: Vec<&FiniteAlgebra> = std::iter::repeat_n(&base, k).collect();
            assert!(
                verify_componentwise(&power, &factors).is_empty(),
                "power {s}^{k} tables"
            );
            if carrier <= 1024 {
                assert!(validate_hilbert(&power).is_empty(), "power {s}^{k}");
                assert!(validate_sup(&power).is_empty(), "power {s}^{k}");
                assert!(
                    check_derived_identities(&power).is_empty(),
                    "power {s}^{k}"
                );
                full += 1;
            } else {
                assert!(
                    check_quadratic_identities(&power).is_empty(),
                    "power {s}^{k} quadratic laws"
                );
                assert!(
                    spot_check_identities(&power, 1_000_000, 0x6163636570).is_empty(),
                    "power {s}^{k} sampled cubic laws"
                );
                tiered += 1;
            }
        }
    }
    println!(
        "[acceptance] criterion 7: PASS - chains up to 7 elements fully validated; {full} powers exhaustively (carrier <= 1024), {tiered} powers up to 4096 via full tables + quadratic laws + 10^6 sampled cubic laws ({} ms)",
        start.elapsed().as_millis()
    );
}

#[test]
fn criterion_8_documented_discrepancies() {
    let g = guard();

    // Diagonal-case summation limit, witnessed at (n=1, r=2, k=2, p=1):
    // the literal form sums surjection counts up to r, the corrected one
    // up to n; enumeration decides for the corrected reading.
    let (n, r, k, p) = (1u64, 2u64, 2u64, 1u64);
    let f = build_free(n as usize, r as usize, &g).unwrap();
    let gf = f.join_filter(&[0, 1], &g).unwrap();
    let oracle = BigUint::from(gf.eta[(p - 1) as usize]);
    let closed = eta_closed_form(n, r, k, p, gf.valuedness as u64);
    assert_eq!(oracle, BigUint::from(1u32));
    assert_eq!(closed.literal, BigUint::from(3u32));
    assert_eq!(closed.corrected, oracle);
    assert!(closed.differs());
    println!(
        "[acceptance] criterion 8a: discrepancy confirmed at witness (n={n}, r={r}, k={k}): literal diagonal sum = {}, enumeration oracle = {}, corrected sum = {}",
        closed.literal, oracle, closed.corrected
    );

    // The literal table even breaks the bound here: it evaluates to 0,
    // below the true cardinality 6.
    let eta_literal = vec![vec![BigUint::from(2u32)], vec![closed.literal.clone()]];
    let bound_literal = upper_bound(1, 2, &eta_literal).unwrap();
    assert_eq!(bound_literal, BigInt::from(0));
    assert!(bound_literal < BigInt::from(f.size()));
    println!(
        "[acceptance] criterion 8b: with the literal table the alternating bound gives {bound_literal} < |free(1,2)| = {}, so the corrected reading enters the bound",
        f.size()
    );

    // Double-sum coefficient: the implemented binomial C(q-p, t-1)
    // reproduces the enumeration oracle everywhere on the grid (see
    // criterion 4); spot-confirm the largest grid point here.
    let f22 = build_free(2, 2, &g).unwrap();
    let gf1 = f22.join_filter(&[0], &g).unwrap();
    assert_eq!(beta(2, 2, 1, 1), BigUint::from(gf1.eta[0]));
    assert_eq!(beta(2, 2, 1, 2), BigUint::from(gf1.eta[1]));
    println!(
        "[acceptance] criterion 8c: the double-sum coefficient as defined matches enumeration at (n=2, r=2): beta(1,1) = {} and beta(1,2) = {}",
        beta(2, 2, 1, 1),
        beta(2, 2, 1, 2)
    );
    println!(
        "[acceptance] criterion 8: PASS - both suspected closed-form defects decided by enumeration with witnesses printed"
    );
}
