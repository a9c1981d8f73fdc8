//! Closed forms: alternating binomial sums over residue classes, the cyclic
//! degree formula, the `p`-primary sum maximization, `δ(A,B)`, `δ°(A,B)`
//! and the degree set `D(A,B)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::ext_nat::ExtNat;
use crate::group_ring::{delta_elem, GroupRingElement};
use crate::groups::arith::pow;
use crate::groups::{hom_is_trivial, FiniteAbelianGroup, GroupDescriptor, GroupElement};

/// Largest `p^α` accepted by [`wilson_check`].
pub const WILSON_MAX_ORDER: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("both groups must be nontrivial")]
    TrivialGroup,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("{0} exceeds the work budget")]
    Budget(String),
    #[error("modulus 1 gives the zero ring")]
    ZeroRing,
}

/// `M_k(j, n) = Σ_{0≤i≤n, i≡j (mod k)} (−1)^i C(n, i)`, exactly.
pub fn weisman_m(k: u64, j: i64, n: u64) -> BigInt {
    assert!(k >= 1, "k must be positive");
    let r = j.rem_euclid(k as i64) as u64;
    let mut binom = BigInt::one();
    let mut sum = BigInt::zero();
    for i in 0..=n {
        if i % k == r {
            if i % 2 == 0 {
                sum += &binom;
            } else {
                sum -= &binom;
            }
        }
        binom = binom * (n - i) / (i + 1);
    }
    sum
}

/// `M_k(j, n) mod m`, reducing every binomial along a Pascal row.
pub fn weisman_m_mod(k: u64, j: i64, n: u64, m: u64) -> u64 {
    assert!(k >= 1 && m >= 2, "k ≥ 1 and m ≥ 2 required");
    let r = j.rem_euclid(k as i64) as u64;
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(1);
        for w in row.windows(2) {
            next.push((w[0] + w[1]) % m);
        }
        next.push(1 % m);
        row = next;
    }
    row.iter().enumerate().fold(0u64, |acc, (i, &c)| {
        if i as u64 % k != r {
            acc
        } else if i % 2 == 0 {
            (acc + c) % m
        } else {
            (acc + m - c % m) % m
        }
    })
}

/// `(β(p−1)+1)·p^{α−1}`: from here on `M_{p^α}(j, n) ≡ 0 (mod p^β)`.
pub fn weisman_threshold(p: u64, alpha: u32, beta: u32) -> u64 {
    assert!(alpha >= 1 && beta >= 1);
    (beta as u64 * (p - 1) + 1) * pow(p, alpha - 1)
}

/// The competing reading `β((p−1)+1)p^{α−1} = β·p^α`. It coincides with
/// [`weisman_threshold`] only when `β = 1`.
pub fn alternate_threshold(p: u64, alpha: u32, beta: u32) -> u64 {
    beta as u64 * pow(p, alpha)
}

/// `(−p)^{β−1} mod p^β`.
pub fn weisman_residue(p: u64, beta: u32) -> u64 {
    let m = pow(p, beta);
    let v = pow(p, beta - 1) % m;
    if (beta - 1) % 2 == 1 {
        (m - v) % m
    } else {
        v
    }
}

/// Outcome of checking the congruence pair for one residue class `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeismanCheck {
    pub p: u64,
    pub alpha: u32,
    pub beta: u32,
    pub j: i64,
    pub threshold: u64,
    /// `M mod p^β` at `n = threshold − 1`.
    pub value_below: u64,
    pub expected_below: u64,
    /// `n` values in `[threshold, threshold + extra]` where `M` is not `≡ 0`.
    pub nonzero_at: Vec<u64>,
}

impl WeismanCheck {
    pub fn holds(&self) -> bool {
        self.value_below == self.expected_below && self.nonzero_at.is_empty()
    }
}

/// Checks `M_{p^α}(j, n) ≡ 0 (mod p^β)` for `n ∈ [T, T+extra]` and
/// `M_{p^α}(j, T−1) ≡ (−p)^{β−1}` where `T` is [`weisman_threshold`].
/// Uses exact big-integer sums.
pub fn weisman_check(p: u64, alpha: u32, beta: u32, j: i64, extra: u64) -> WeismanCheck {
    let k = pow(p, alpha);
    let m = BigInt::from(pow(p, beta));
    let t = weisman_threshold(p, alpha, beta);
    let residue = |n: u64| -> u64 {
        let v = weisman_m(k, j, n).mod_floor(&m);
        u64::try_from(v).expect("reduced")
    };
    WeismanCheck {
        p,
        alpha,
        beta,
        j,
        threshold: t,
        value_below: residue(t - 1),
        expected_below: weisman_residue(p, beta),
        nonzero_at: (t..=t + extra).filter(|&n| residue(n) != 0).collect(),
    }
}

/// `δ(Z_{p^α}, B)` for `exp(B) = p^β`: `(β(p−1)+1)p^{α−1} − 1`.
pub fn delta_cyclic(p: u64, alpha: u32, beta: u32) -> u64 {
    weisman_threshold(p, alpha, beta) - 1
}

/// Both sides of the congruence
/// `(t−1)^{T−1} ≡ (−p)^{β−1}·(1 + t + … + t^{p^α−1})` in `Z_{p^β}[Z_{p^α}]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WilsonCheck {
    pub p: u64,
    pub alpha: u32,
    pub beta: u32,
    pub exponent: u64,
    pub lhs: GroupRingElement,
    pub rhs: GroupRingElement,
    pub equal: bool,
    /// Whether `(t−1)^T = 0`.
    pub annihilated: bool,
}

pub fn wilson_check(p: u64, alpha: u32, beta: u32) -> Result<WilsonCheck, FormulaError> {
    let order = p
        .checked_pow(alpha)
        .filter(|&q| q <= WILSON_MAX_ORDER)
        .ok_or_else(|| FormulaError::Budget(format!("group order {p}^{alpha}")))?;
    let m = pow(p, beta);
    let group = FiniteAbelianGroup::cyclic(order).map_err(|e| FormulaError::Budget(e.to_string()))?;
    let t_minus_1 = delta_elem(m, &group, &group.generator(0)).expect("valid modulus");
    let threshold = weisman_threshold(p, alpha, beta);
    let lhs = t_minus_1.pow(threshold - 1);
    let c = BigInt::from(weisman_residue(p, beta));
    let rhs = GroupRingElement::from_terms(
        m,
        &group,
        (0..order).map(|i| (GroupElement(vec![i]), c.clone())),
    )
    .expect("valid modulus");
    let annihilated = lhs.mul(&t_minus_1).expect("same ring").is_zero();
    Ok(WilsonCheck {
        p,
        alpha,
        beta,
        exponent: threshold - 1,
        equal: lhs == rhs,
        lhs,
        rhs,
        annihilated,
    })
}

/// Maximum of `Σ_i δ(Z_{p^{α_i}}, Z_{p^{β_i+1}})` over all `(β_1,…,β_r) ∈ ℕ^r`
/// with `Σ β_i = β − 1`, enumerated exhaustively.
pub fn sum_theorem_max(p: u64, alphas: &[u32], beta: u32) -> u64 {
    assert!(beta >= 1 && !alphas.is_empty());
    fn go(p: u64, alphas: &[u32], left: u32, acc: u64, best: &mut u64) {
        match alphas {
            [] => unreachable!(),
            [last] => *best = (*best).max(acc + delta_cyclic(p, *last, left + 1)),
            [first, rest @ ..] => {
                for b in 0..=left {
                    go(p, rest, left - b, acc + delta_cyclic(p, *first, b + 1), best);
                }
            }
        }
    }
    let mut best = 0;
    go(p, alphas, beta - 1, 0, &mut best);
    best
}

/// `Σ_j (p^{α_j} − 1) + (β − 1)(p − 1)p^{α_1 − 1}` with `α_1 = max α_j`.
/// Empty `alphas` (trivial `A`) gives 0.
pub fn main_formula_value(p: u64, alphas: &[u32], beta: u32) -> u64 {
    let Some(&top) = alphas.iter().max() else {
        return 0;
    };
    let base: u64 = alphas.iter().map(|&a| pow(p, a) - 1).sum();
    base + (beta as u64 - 1) * (p - 1) * pow(p, top - 1)
}

/// Human-readable instantiation of [`main_formula_value`].
pub fn main_formula_instantiation(p: u64, alphas: &[u32], beta: u32) -> String {
    let mut sorted = alphas.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let terms: Vec<String> = sorted.iter().map(|&a| format!("({}-1)", pow(p, a))).collect();
    format!(
        "{} + ({}-1)*({}-1)*{}^{} = {}",
        terms.join(" + "),
        beta,
        p,
        p,
        sorted[0] - 1,
        main_formula_value(p, &sorted, beta)
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaCase {
    #[serde(rename = "A_infinite")]
    AInfinite,
    NoCommonPrime,
    PGroupFormula,
    UnboundedCodomain,
}

impl fmt::Display for DeltaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeltaCase::AInfinite => "A_infinite",
            DeltaCase::NoCommonPrime => "no_common_prime",
            DeltaCase::PGroupFormula => "p_group_formula",
            DeltaCase::UnboundedCodomain => "unbounded_codomain",
        })
    }
}

/// `δ(A,B) = sup fdeg` over `B^A`, tagged with the case that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaResult {
    pub value: ExtNat,
    pub case_tag: DeltaCase,
    pub all_maps_finite_degree: bool,
}

/// `(p, [α_1 ≥ … ≥ α_r], β)` when `A` is a finite `p`-group and `B` a
/// `p`-group of finite exponent `p^β`.
pub fn p_group_parameters(a: &GroupDescriptor, b: &GroupDescriptor) -> Option<(u64, Vec<u32>, u32)> {
    let p = a.p_group_prime()?;
    if !a.is_finite() || b.p_group_prime() != Some(p) {
        return None;
    }
    let alphas = a.part(p)?.exponent_list()?;
    let beta = b.part(p)?.max_exponent()?;
    Some((p, alphas, beta))
}

pub fn delta_sup(a: &GroupDescriptor, b: &GroupDescriptor) -> Result<DeltaResult, FormulaError> {
    if a.is_trivial() || b.is_trivial() {
        return Err(FormulaError::TrivialGroup);
    }
    if !a.is_finite() {
        return Ok(DeltaResult {
            value: ExtNat::Infinity,
            case_tag: DeltaCase::AInfinite,
            all_maps_finite_degree: false,
        });
    }
    let shared = a.p_group_prime().filter(|&p| b.p_group_prime() == Some(p));
    let Some(p) = shared else {
        return Ok(DeltaResult {
            value: ExtNat::Infinity,
            case_tag: DeltaCase::NoCommonPrime,
            all_maps_finite_degree: false,
        });
    };
    match p_group_parameters(a, b) {
        Some((p, alphas, beta)) => Ok(DeltaResult {
            value: ExtNat::Finite(main_formula_value(p, &alphas, beta)),
            case_tag: DeltaCase::PGroupFormula,
            all_maps_finite_degree: true,
        }),
        None => {
            debug_assert!(b.part(p).is_some_and(|part| part.unbounded));
            Ok(DeltaResult {
                value: ExtNat::Infinity,
                case_tag: DeltaCase::UnboundedCodomain,
                all_maps_finite_degree: true,
            })
        }
    }
}

/// `δ°(A,B)`: the supremum of the finite degrees attained by maps `A → B`.
pub fn delta_circ(a: &GroupDescriptor, b: &GroupDescriptor) -> Result<ExtNat, FormulaError> {
    if a.is_trivial() || b.is_trivial() {
        return Err(FormulaError::TrivialGroup);
    }
    if a.free_rank > 0 {
        // Binomial maps x ↦ C(x, d)·b pulled back along A ↠ Z reach every d.
        return Ok(ExtNat::Infinity);
    }
    if hom_is_trivial(a, b) {
        return Ok(ExtNat::ZERO);
    }
    if b.free_rank > 0 {
        return delta_circ(a, &b.torsion_part());
    }
    if let Some(p) = a.primes().find(|&p| a.part(p).is_some_and(|part| part.unbounded)) {
        return Err(FormulaError::Unsupported(format!(
            "the {p}-primary part of {a} has unbounded exponent"
        )));
    }
    let mut best = ExtNat::ZERO;
    for p in a.primes() {
        let (Some(ap), Some(bp)) = (a.part(p), b.part(p)) else {
            continue;
        };
        let value = if bp.unbounded || !ap.is_finite() {
            ExtNat::Infinity
        } else {
            let alphas = ap.exponent_list().expect("finite part");
            let beta = bp.max_exponent().expect("bounded part");
            ExtNat::Finite(main_formula_value(p, &alphas, beta))
        };
        best = best.max(value);
    }
    Ok(best)
}

/// `D(A,B) = {−inf} ∪ {n ∈ ℕ : n ≤ finite_sup} ∪ ({inf} if contains_inf)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSet {
    pub finite_sup: ExtNat,
    pub contains_inf: bool,
}

impl DegreeSet {
    pub fn contains(&self, d: ExtNat) -> bool {
        match d {
            ExtNat::NegInfinity => true,
            ExtNat::Finite(_) => d <= self.finite_sup,
            ExtNat::Infinity => self.contains_inf,
        }
    }

    /// Explicit member list when the finite part is bounded, e.g.
    /// `{-inf, 0, 1, 2, inf}`.
    pub fn members(&self) -> Option<Vec<ExtNat>> {
        let mut out = vec![ExtNat::NegInfinity];
        match self.finite_sup {
            ExtNat::NegInfinity => {}
            ExtNat::Finite(s) => out.extend((0..=s).map(ExtNat::Finite)),
            ExtNat::Infinity => return None,
        }
        if self.contains_inf {
            out.push(ExtNat::Infinity);
        }
        Some(out)
    }

    pub fn members_string(&self) -> Option<String> {
        self.members().map(|m| {
            format!(
                "{{{}}}",
                m.iter().map(ExtNat::to_string).collect::<Vec<_>>().join(", ")
            )
        })
    }
}

/// Normal form `{-inf} ∪ {0..s} ∪ {inf}`, omitting empty segments.
impl fmt::Display for DegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{-inf}")?;
        match self.finite_sup {
            ExtNat::NegInfinity => {}
            ExtNat::Finite(0) => f.write_str(" ∪ {0}")?,
            ExtNat::Finite(s) => write!(f, " ∪ {{0..{s}}}")?,
            ExtNat::Infinity => f.write_str(" ∪ {0..}")?,
        }
        if self.contains_inf {
            f.write_str(" ∪ {inf}")?;
        }
        Ok(())
    }
}

pub fn degree_set(a: &GroupDescriptor, b: &GroupDescriptor) -> Result<DegreeSet, FormulaError> {
    if b.is_trivial() {
        return Ok(DegreeSet {
            finite_sup: ExtNat::NegInfinity,
            contains_inf: false,
        });
    }
    if a.is_trivial() {
        return Ok(DegreeSet {
            finite_sup: ExtNat::ZERO,
            contains_inf: false,
        });
    }
    let finite_sup = delta_circ(a, b)?;
    let same_p_group = a.is_finite() && a.p_group_prime().is_some_and(|p| b.p_group_prime() == Some(p));
    Ok(DegreeSet {
        finite_sup,
        contains_inf: !same_p_group,
    })
}

/// Predicted `ν(Z_m[A])` as `δ(A, Z_m) + 1`.
pub fn predicted_nu(modulus: u64, a: &GroupDescriptor) -> Result<ExtNat, FormulaError> {
    if modulus == 1 {
        return Err(FormulaError::ZeroRing);
    }
    if a.is_trivial() {
        return Ok(ExtNat::Finite(1));
    }
    if modulus == 0 {
        return Ok(ExtNat::Infinity);
    }
    let zm = GroupDescriptor::from_finite(&FiniteAbelianGroup::cyclic(modulus).expect("modulus ≥ 2"));
    Ok(delta_sup(a, &zm)?.value.succ())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_group_spec;

    fn d(s: &str) -> GroupDescriptor {
        parse_group_spec(s).unwrap()
    }

    /// Term-by-term oracle, independent of both implementations above.
    fn m_oracle(k: i64, j: i64, n: i64) -> i64 {
        let binom = |n: i64, r: i64| -> i64 { (0..r).fold(1i64, |acc, i| acc * (n - i) / (i + 1)) };
        (0..=n)
            .filter(|i| (i - j).rem_euclid(k) == 0)
            .map(|i| if i % 2 == 0 { binom(n, i) } else { -binom(n, i) })
            .sum()
    }

    #[test]
    fn weisman_sums() {
        for n in 1..10 {
            assert!(weisman_m(1, 0, n).is_zero());
        }
        assert_eq!(weisman_m(2, 0, 2), BigInt::from(2));
        for j in 0..2 {
            assert_eq!(weisman_m_mod(2, j, 2, 4), 2);
            assert_eq!(weisman_residue(2, 2), 2);
        }
        for k in 1..6 {
            for j in -3..6 {
                for n in 0..20 {
                    let exact = m_oracle(k, j, n);
                    assert_eq!(weisman_m(k as u64, j, n as u64), BigInt::from(exact));
                    assert_eq!(
                        weisman_m_mod(k as u64, j, n as u64, 9),
                        exact.rem_euclid(9) as u64,
                        "k={k} j={j} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn thresholds() {
        assert_eq!(weisman_threshold(2, 1, 1), 2);
        assert_eq!(weisman_m_mod(2, 0, 2, 2), 0);
        assert_eq!(weisman_m_mod(2, 1, 2, 2), 0);
        assert_eq!(weisman_m_mod(2, 0, 1, 2), 1);
        assert_eq!(weisman_m_mod(2, 1, 1, 2), 1);
        assert_eq!(weisman_threshold(2, 1, 2), 3);
        assert_eq!(weisman_m(2, 0, 3), BigInt::from(4));
        assert_eq!(weisman_threshold(3, 1, 1), 3);
        assert_eq!(m_oracle(3, 0, 3).rem_euclid(3), 0);
    }

    #[test]
    fn alternate_threshold_fails_at_2_1_2() {
        // Under β·p^α = 4, the value at n = 3 would have to be (−2)^1 ≡ 2 mod 4.
        assert_eq!(alternate_threshold(2, 1, 2), 4);
        assert_eq!(weisman_m_mod(2, 0, 3, 4), 0);
        assert_ne!(weisman_m_mod(2, 0, 3, 4), weisman_residue(2, 2));
        for p in [2, 3, 5] {
            for a in 1..3 {
                assert_eq!(alternate_threshold(p, a, 1), weisman_threshold(p, a, 1));
            }
        }
    }

    #[test]
    fn cyclic_formula_values() {
        assert_eq!(delta_cyclic(2, 1, 1), 1);
        assert_eq!(delta_cyclic(2, 2, 1), 3);
        assert_eq!(delta_cyclic(3, 1, 2), 4);
    }

    #[test]
    fn wilson_examples() {
        let w = wilson_check(2, 1, 1).unwrap();
        assert!(w.equal && w.annihilated);
        assert_eq!(w.lhs.to_string(), "[0] + [1]");
        let w = wilson_check(2, 1, 2).unwrap();
        assert!(w.equal && w.annihilated);
        assert_eq!(w.lhs.to_string(), "2[0] + 2[1]");
        let w = wilson_check(3, 2, 2).unwrap();
        assert!(w.equal && w.annihilated);
        assert!(wilson_check(2, 13, 1).is_err());
    }

    #[test]
    fn sum_theorem_examples() {
        assert_eq!(sum_theorem_max(2, &[1, 2], 2), 6);
        assert_eq!(delta_cyclic(2, 1, 1) + delta_cyclic(2, 2, 2), 6);
        assert_eq!(delta_cyclic(2, 1, 2) + delta_cyclic(2, 2, 1), 5);
        assert_eq!(sum_theorem_max(3, &[2], 3), delta_cyclic(3, 2, 3));
        assert_eq!(sum_theorem_max(2, &[1, 1], 1), 2);
    }

    #[test]
    fn delta_sup_cases() {
        let r = delta_sup(&d("Z"), &d("Z2")).unwrap();
        assert_eq!((r.value, r.case_tag), (ExtNat::Infinity, DeltaCase::AInfinite));
        let r = delta_sup(&d("Z3"), &d("Z2")).unwrap();
        assert_eq!((r.value, r.case_tag), (ExtNat::Infinity, DeltaCase::NoCommonPrime));
        let r = delta_sup(&d("Z4xZ2"), &d("Z2")).unwrap();
        assert_eq!((r.value, r.case_tag), (ExtNat::Finite(4), DeltaCase::PGroupFormula));
        let r = delta_sup(&d("Z2"), &d("U2")).unwrap();
        assert_eq!((r.value, r.case_tag), (ExtNat::Infinity, DeltaCase::UnboundedCodomain));
        assert!(r.all_maps_finite_degree);
        let r = delta_sup(&d("Z4xZ2"), &d("Z8")).unwrap();
        assert_eq!(r.value, ExtNat::Finite(8));
        assert_eq!(delta_sup(&d("Z2*inf"), &d("Z2")).unwrap().case_tag, DeltaCase::AInfinite);
        assert_eq!(delta_sup(&d("Z2"), &d("Z2*infxZ4")).unwrap().value, ExtNat::Finite(2));
        assert_eq!(delta_sup(&d("1"), &d("Z2")), Err(FormulaError::TrivialGroup));
    }

    #[test]
    fn delta_circ_cases() {
        assert_eq!(delta_circ(&d("Z6"), &d("Z6")).unwrap(), ExtNat::Finite(2));
        assert_eq!(delta_circ(&d("Z2"), &d("Z")).unwrap(), ExtNat::ZERO);
        assert_eq!(delta_circ(&d("Z2xZ2*inf"), &d("Z2")).unwrap(), ExtNat::Infinity);
        assert_eq!(delta_circ(&d("Z"), &d("Z3")).unwrap(), ExtNat::Infinity);
        assert_eq!(delta_circ(&d("Z4"), &d("ZxZ2")).unwrap(), ExtNat::Finite(3));
        assert_eq!(delta_circ(&d("Z2"), &d("U2")).unwrap(), ExtNat::Infinity);
        assert_eq!(delta_circ(&d("Z3"), &d("U2")).unwrap(), ExtNat::ZERO);
        assert_eq!(delta_circ(&d("U2"), &d("Z3")).unwrap(), ExtNat::ZERO);
        assert!(matches!(delta_circ(&d("U2"), &d("Z2")), Err(FormulaError::Unsupported(_))));
        assert!(matches!(delta_circ(&d("U2xZ3"), &d("Z3")), Err(FormulaError::Unsupported(_))));
        assert_eq!(delta_circ(&d("ZxU2"), &d("Z2")).unwrap(), ExtNat::Infinity);
    }

    #[test]
    fn degree_sets() {
        let s = degree_set(&d("Z2"), &d("Z2")).unwrap();
        assert_eq!(s.members_string().unwrap(), "{-inf, 0, 1}");
        let s = degree_set(&d("Z"), &d("Z2")).unwrap();
        assert_eq!((s.finite_sup, s.contains_inf), (ExtNat::Infinity, true));
        assert_eq!(s.to_string(), "{-inf} ∪ {0..} ∪ {inf}");
        let s = degree_set(&d("Z3"), &d("Z2")).unwrap();
        assert_eq!(s.members_string().unwrap(), "{-inf, 0, inf}");
        let s = degree_set(&d("Z2"), &d("U2")).unwrap();
        assert_eq!((s.finite_sup, s.contains_inf), (ExtNat::Infinity, false));
        let s = degree_set(&d("Z6"), &d("Z6")).unwrap();
        assert_eq!(s.to_string(), "{-inf} ∪ {0..2} ∪ {inf}");
        assert_eq!(degree_set(&d("Z6"), &d("1")).unwrap().to_string(), "{-inf}");
        assert_eq!(degree_set(&d("1"), &d("Z6")).unwrap().to_string(), "{-inf} ∪ {0}");
        let s = degree_set(&d("Z2"), &d("ZxZ4")).unwrap();
        assert_eq!(s.members_string().unwrap(), "{-inf, 0, 1, 2, inf}");
    }

    #[test]
    fn predicted_nilpotency() {
        assert_eq!(predicted_nu(2, &d("Z4")).unwrap(), ExtNat::Finite(4));
        assert_eq!(predicted_nu(6, &d("Z2")).unwrap(), ExtNat::Infinity);
        assert_eq!(predicted_nu(4, &d("Z2xZ2")).unwrap(), ExtNat::Finite(4));
        assert_eq!(predicted_nu(0, &d("Z2")).unwrap(), ExtNat::Infinity);
        assert_eq!(predicted_nu(7, &d("1")).unwrap(), ExtNat::Finite(1));
        assert_eq!(predicted_nu(1, &d("Z2")), Err(FormulaError::ZeroRing));
    }

    #[test]
    fn degree_set_json_round_trip() {
        let s = degree_set(&d("Z6"), &d("Z6")).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"finite_sup":2,"contains_inf":true}"#);
        assert_eq!(serde_json::from_str::<DegreeSet>(&j).unwrap(), s);
    }
}
