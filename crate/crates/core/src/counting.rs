//! Exact counting of chain-valued irreducible systems.
//!
//! Everything here is closed-form integer combinatorics paired with a
//! brute-force enumeration oracle. The enumeration of constrained
//! generator assignments ([`count_assignments`]) is ground truth; the
//! surjection-based closed forms are evaluated independently and compared
//! against it, never trusted on their own. All arithmetic is exact; big
//! integers are used wherever intermediate values can leave the machine
//! word.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{CoreError, Result};
use crate::guard::SizeGuard;

/// Exact binomial coefficient by the multiplicative formula.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of surjections from a `d`-element set onto an `a`-element set:
/// `Σ_{j=0}^{a-1} (-1)^j C(a,j) (a-j)^d` for `1 ≤ a ≤ d`, else zero.
pub fn surjections(d: u64, a: u64) -> BigUint {
    surjections_signed(d, a as i64)
}

fn surjections_signed(d: u64, a: i64) -> BigUint {
    if a <= 0 || a as u64 > d {
        return BigUint::zero();
    }
    let a = a as u64;
    let exp = u32::try_from(d).expect("exponent fits in u32");
    let mut total = BigInt::zero();
    for j in 0..a {
        let term = BigInt::from(binomial(a, j)) * BigInt::from(a - j).pow(exp);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
        .to_biguint()
        .expect("surjection count is nonnegative")
}

/// Enumeration oracle for [`surjections`]: walks all `a^d` maps.
/// Intended for small arguments only.
pub fn surjections_bruteforce(d: u32, a: u32) -> u64 {
    if a == 0 {
        return if d == 0 { 1 } else { 0 };
    }
    let mut digits = vec![0u32; d as usize];
    let mut count = 0u64;
    loop {
        let mut hit = vec![false; a as usize];
        for &v in &digits {
            hit[v as usize] = true;
        }
        if hit.iter().all(|&h| h) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == d as usize {
                return count;
            }
            digits[i] += 1;
            if digits[i] < a {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Maps of the `r-k` remaining generators whose image is forced up to an
/// overlap of size `b` with the image of the first `k`: surjection count
/// onto `q+1-t+b` targets (top attained) plus onto `q-t+b` (top missed).
pub fn complement_surjections(r: u64, k: u64, q: u64, t: u64, b: u64) -> BigUint {
    assert!(k <= r);
    let d = r - k;
    surjections_signed(d, q as i64 + 1 - t as i64 + b as i64)
        + surjections_signed(d, q as i64 - t as i64 + b as i64)
}

/// `u(q,t) = Σ_{b=0}^{t} C(t,b) · u(q,t,b)`.
pub fn complement_maps(r: u64, k: u64, q: u64, t: u64) -> BigUint {
    (0..=t)
        .map(|b| binomial(t, b) * complement_surjections(r, k, q, t, b))
        .sum()
}

/// `β(k,p) = Σ_{q=p}^{n} Σ_{t=1}^{q-p+1} C(q-p, t-1) · e_{k,t} · u(q,t)`.
///
/// `t` runs over the possible image sizes of the first `k` generators.
/// An empty `q` range (p > n) yields zero.
pub fn beta(n: u64, r: u64, k: u64, p: u64) -> BigUint {
    assert!(k <= r, "beta needs k <= r");
    let mut total = BigUint::zero();
    for q in p..=n {
        for t in 1..=(q - p + 1) {
            total += binomial(q - p, t - 1) * surjections(k, t) * complement_maps(r, k, q, t);
        }
    }
    total
}

/// Parameters for the assignment enumeration: `r` generators mapped into
/// the `(q+1)`-chain, constrained on the first `k`.
#[derive(Clone, Copy, Debug)]
pub struct AssignmentSpec {
    pub n: u32,
    pub r: u32,
    pub k: u32,
    pub p: u32,
    pub q: u32,
}

impl AssignmentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.r < 1 || self.k < 1 || self.k > self.r {
            return Err(CoreError::BadParameter(format!(
                "need 1 <= k <= r, got k={} r={}",
                self.k, self.r
            )));
        }
        if self.p < 1 || self.p > self.q || self.q > self.n {
            return Err(CoreError::BadParameter(format!(
                "need 1 <= p <= q <= n, got p={} q={} n={}",
                self.p, self.q, self.n
            )));
        }
        Ok(())
    }
}

/// Brute-force count of assignments `f` of the `r` generators into the
/// `(q+1)`-chain `{0, …, q}` such that
///
/// 1. every non-top value `0..q` is attained,
/// 2. `f(g) ≤ q-p` on the first `k` generators, and
/// 3. some of the first `k` generators attains `q-p`.
pub fn count_assignments(spec: &AssignmentSpec, guard: &SizeGuard) -> Result<u64> {
    spec.validate()?;
    let (r, k, q, p) = (
        spec.r as usize,
        spec.k as usize,
        spec.q,
        spec.p,
    );
    let base = q as u64 + 1;
    let space = (base as u128).saturating_pow(r as u32);
    if space > guard.max_assignments as u128 {
        return Err(CoreError::SizeGuard {
            requested: space,
            cap: guard.max_assignments as usize,
        });
    }
    let cap = q - p;
    let mut digits = vec![0u32; r];
    let mut count = 0u64;
    loop {
        let mut covered = vec![false; q as usize];
        for &v in &digits {
            if v < q {
                covered[v as usize] = true;
            }
        }
        let ok = covered.iter().all(|&c| c)
            && digits[..k].iter().all(|&v| v <= cap)
            && digits[..k].contains(&cap);
        if ok {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == r {
                return Ok(count);
            }
            digits[i] += 1;
            if digits[i] <= q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// The count of `(p+1)`-valued irreducible systems of the `k`-th filter
/// by summing the assignment enumeration over all chain sizes:
/// `Σ_{q=p}^{n} |assignments|`.
pub fn eta_via_theorem(n: u32, r: u32, k: u32, p: u32, guard: &SizeGuard) -> Result<u64> {
    let mut total = 0u64;
    for q in p..=n {
        total += count_assignments(&AssignmentSpec { n, r, k, p, q }, guard)?;
    }
    Ok(total)
}

/// Closed-form evaluation with both readings of the `k = r` case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaClosedForm {
    /// The formula as printed: for `k = r`, the surjection sum runs
    /// `q = 1..=r`.
    pub literal: BigUint,
    /// The derivation's range: for `k = r`, the sum runs `q = 1..=n`.
    pub corrected: BigUint,
}

impl EtaClosedForm {
    pub fn differs(&self) -> bool {
        self.literal != self.corrected
    }
}

/// Closed form for the `(p+1)`-valued irreducible-system count of the
/// `k`-th filter, given the valuedness `m_k` of that filter:
/// `β(k,p)` when `k < r` and `p ≤ m_k`, zero when `p > m_k`, and a
/// surjection sum when `k = r` (nonzero only at `p = 1`). The two `k = r`
/// summation limits disagree when `n < r`; both are returned and the
/// enumeration oracle decides which one enters the bound.
pub fn eta_closed_form(n: u64, r: u64, k: u64, p: u64, m_k: u64) -> EtaClosedForm {
    assert!(k >= 1 && k <= r && p >= 1);
    if k < r {
        let v = if p <= m_k {
            beta(n, r, k, p)
        } else {
            BigUint::zero()
        };
        EtaClosedForm {
            literal: v.clone(),
            corrected: v,
        }
    } else if p == 1 {
        let sum_to = |hi: u64| -> BigUint { (1..=hi).map(|q| surjections(r, q)).sum() };
        EtaClosedForm {
            literal: sum_to(r),
            corrected: sum_to(n),
        }
    } else {
        EtaClosedForm {
            literal: BigUint::zero(),
            corrected: BigUint::zero(),
        }
    }
}

/// The alternating binomial bound
/// `Σ_{k=1}^{r} (-1)^{k+1} C(r,k) Π_{p=1}^{n} (p+1)^{η_{k,p+1}}`
/// for a full `η` table (`eta[k-1][p-1]`). Exact; may be negative for
/// inconsistent tables, hence the signed result.
pub fn upper_bound(n: u32, r: u32, eta: &[Vec<BigUint>]) -> Result<BigInt> {
    if eta.len() != r as usize || eta.iter().any(|row| row.len() != n as usize) {
        return Err(CoreError::BadParameter(format!(
            "eta table must be {r} x {n}"
        )));
    }
    let mut total = BigInt::zero();
    for k in 1..=r as usize {
        let mut prod = BigUint::one();
        for p in 1..=n as usize {
            let exp = eta[k - 1][p - 1].to_u32().ok_or_else(|| {
                CoreError::BadParameter("eta exponent too large to evaluate".into())
            })?;
            prod *= BigUint::from(p as u64 + 1).pow(exp);
        }
        let term = BigInt::from(binomial(r as u64, k as u64)) * BigInt::from(prod);
        if k % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn guard() -> SizeGuard {
        SizeGuard::default()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(0, 0), big(1));
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(5, 6), big(0));
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn surjection_examples() {
        assert_eq!(surjections(2, 2), big(2));
        assert_eq!(surjections(3, 2), big(6));
        assert_eq!(surjections(2, 3), big(0));
        assert_eq!(surjections(1, 0), big(0));
        assert_eq!(surjections(0, 1), big(0));
    }

    #[test]
    fn surjections_match_bruteforce() {
        for d in 0..=6u32 {
            for a in 1..=6u32 {
                assert_eq!(
                    surjections(d as u64, a as u64),
                    big(surjections_bruteforce(d, a)),
                    "d={d} a={a}"
                );
            }
        }
    }

    #[test]
    fn complement_map_examples() {
        // r = 2, k = 1: u(1,1,0) = e_{1,1} + e_{1,0} = 1.
        assert_eq!(complement_surjections(2, 1, 1, 1, 0), big(1));
        // u(1,1,1) = e_{1,2} + e_{1,1} = 1.
        assert_eq!(complement_surjections(2, 1, 1, 1, 1), big(1));
        // u(1,1) = C(1,0)·1 + C(1,1)·1 = 2.
        assert_eq!(complement_maps(2, 1, 1, 1), big(2));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(1, 2, 1, 1), big(2));
        assert_eq!(beta(2, 2, 1, 1), big(3));
        assert_eq!(beta(2, 2, 1, 2), big(1));
        // Empty outer sum when p > n.
        assert_eq!(beta(1, 2, 1, 2), big(0));
    }

    #[test]
    fn assignment_counts() {
        let g = guard();
        let spec = |n, r, k, p, q| AssignmentSpec { n, r, k, p, q };
        assert_eq!(count_assignments(&spec(1, 2, 1, 1, 1), &g).unwrap(), 2);
        assert_eq!(count_assignments(&spec(1, 2, 2, 1, 1), &g).unwrap(), 1);
        // p = q with k < r forces the first block to zero and the rest to
        // cover the chain: exactly one assignment here.
        assert_eq!(count_assignments(&spec(2, 2, 1, 2, 2), &g).unwrap(), 1);
        assert_eq!(count_assignments(&spec(2, 2, 1, 1, 2), &g).unwrap(), 1);
    }

    #[test]
    fn eta_theorem_values_on_grid() {
        let g = guard();
        assert_eq!(eta_via_theorem(1, 1, 1, 1, &g).unwrap(), 1);
        assert_eq!(eta_via_theorem(1, 2, 1, 1, &g).unwrap(), 2);
        assert_eq!(eta_via_theorem(1, 2, 2, 1, &g).unwrap(), 1);
        assert_eq!(eta_via_theorem(2, 2, 1, 1, &g).unwrap(), 3);
        assert_eq!(eta_via_theorem(2, 2, 1, 2, &g).unwrap(), 1);
        assert_eq!(eta_via_theorem(2, 2, 2, 1, &g).unwrap(), 3);
        assert_eq!(eta_via_theorem(2, 2, 2, 2, &g).unwrap(), 0);
    }

    #[test]
    fn closed_form_matches_beta_below_r() {
        let e = eta_closed_form(1, 2, 1, 1, 1);
        assert_eq!(e.literal, big(2));
        assert!(!e.differs());
        let e = eta_closed_form(2, 2, 1, 2, 2);
        assert_eq!(e.corrected, big(1));
        // p above the filter valuedness gives zero.
        let e = eta_closed_form(2, 3, 1, 2, 1);
        assert_eq!(e.corrected, big(0));
    }

    #[test]
    fn closed_form_diagonal_case_discrepancy() {
        // n = 1, r = 2, k = r: literal sums e_{2,1}+e_{2,2} = 3, the
        // corrected range stops at n giving e_{2,1} = 1.
        let e = eta_closed_form(1, 2, 2, 1, 1);
        assert_eq!(e.literal, big(3));
        assert_eq!(e.corrected, big(1));
        assert!(e.differs());
        // With n = r the two readings coincide.
        let e = eta_closed_form(2, 2, 2, 1, 1);
        assert_eq!(e.literal, e.corrected);
        assert_eq!(e.literal, big(3));
    }

    #[test]
    fn bound_examples() {
        // n = 1, r = 2, oracle table η = (2, 1): 2·2² − 1·2¹ = 6.
        let eta = vec![vec![big(2)], vec![big(1)]];
        assert_eq!(upper_bound(1, 2, &eta).unwrap(), BigInt::from(6));
        // Literal table η = (2, 3): 8 − 8 = 0, below the true size 6.
        let eta = vec![vec![big(2)], vec![big(3)]];
        assert_eq!(upper_bound(1, 2, &eta).unwrap(), BigInt::from(0));
        // n = 1, r = 1, η = 1: bound 2.
        let eta = vec![vec![big(1)]];
        assert_eq!(upper_bound(1, 1, &eta).unwrap(), BigInt::from(2));
    }

    #[test]
    fn assignment_guard_rejects_huge_spaces() {
        let tiny = SizeGuard {
            max_assignments: 10,
            ..SizeGuard::default()
        };
        let spec = AssignmentSpec {
            n: 3,
            r: 5,
            k: 1,
            p: 1,
            q: 3,
        };
        assert!(matches!(
            count_assignments(&spec, &tiny),
            Err(CoreError::SizeGuard { .. })
        ));
    }
}
