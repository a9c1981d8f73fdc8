use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{FuncError, FuncTable};
use crate::ext_nat::ExtNat;
use crate::formulas::main_formula_value;
use crate::groups::arith::prime_power;
use crate::groups::FiniteAbelianGroup;

/// Default evaluation budget for [`fdeg_bruteforce`].
pub const DEFAULT_BRUTE_BUDGET: u64 = 400_000_000;

/// Result of a capped degree scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanOutcome {
    Degree(ExtNat),
    /// Some `(cap+1)`-fold difference is still nonzero.
    Exceeded(u64),
}

impl ScanOutcome {
    pub fn degree(self) -> Option<ExtNat> {
        match self {
            ScanOutcome::Degree(d) => Some(d),
            ScanOutcome::Exceeded(_) => None,
        }
    }
}

/// Nonzero `Δ^E f` over multisets `E` of canonical generators of the
/// domain. Each entry records the largest generator index in its multiset.
struct GeneratorFrontier {
    translations: Vec<Vec<usize>>,
    entries: Vec<(usize, FuncTable)>,
}

impl GeneratorFrontier {
    fn new(f: &FuncTable) -> Self {
        let dom = f.domain();
        let translations = (0..dom.arity())
            .map(|i| dom.translation(dom.index_of(&dom.generator(i))))
            .collect();
        GeneratorFrontier {
            translations,
            entries: vec![(0, f.clone())],
        }
    }

    fn extend(&mut self) {
        let mut next = Vec::new();
        for (last, g) in &self.entries {
            for (i, t) in self.translations.iter().enumerate().skip(*last) {
                let h = g.difference_by(t);
                if !h.is_zero() {
                    next.push((i, h));
                }
            }
        }
        self.entries = next;
    }
}

/// Generator-multiset scan over the whole domain, with no prime splitting:
/// `fdeg(f) ≤ n` iff every `(n+1)`-fold product of generator differences
/// kills `f`.
pub fn generator_scan(f: &FuncTable, cap: u64) -> ScanOutcome {
    if f.is_zero() {
        return ScanOutcome::Degree(ExtNat::NegInfinity);
    }
    let mut frontier = GeneratorFrontier::new(f);
    let mut k = 0u64;
    loop {
        frontier.extend();
        if frontier.entries.is_empty() {
            return ScanOutcome::Degree(ExtNat::Finite(k));
        }
        if k == cap {
            return ScanOutcome::Exceeded(cap);
        }
        k += 1;
    }
}

/// Definitional oracle: quantifies over all tuples `(a_1,…,a_{n+1}) ∈ A^{n+1}`.
///
/// Level `k` holds the set of distinct nonzero functions
/// `Δ_{a_1}⋯Δ_{a_k} f`; level `k+1` applies every `Δ_a` to each. Work is
/// counted in single-point evaluations against `budget`. A level equal to
/// its predecessor repeats forever, so the scan reports `Exceeded(cap)`
/// at once.
pub fn fdeg_bruteforce(f: &FuncTable, cap: u64, budget: u64) -> Result<ScanOutcome, FuncError> {
    if f.is_zero() {
        return Ok(ScanOutcome::Degree(ExtNat::NegInfinity));
    }
    let dom = f.domain();
    let moduli = f.codomain().factors();
    let k = moduli.len();
    let translations: Vec<Vec<usize>> = (0..dom.size()).map(|a| dom.translation(a)).collect();
    let mut level: HashSet<Vec<u64>> = HashSet::from([f.value_data().to_vec()]);
    let mut buf = vec![0u64; dom.size() * k];
    let mut work = 0u64;
    let mut depth = 0u64;
    loop {
        let mut next = HashSet::new();
        for g in &level {
            for t in &translations {
                work += dom.size() as u64;
                if work > budget {
                    return Err(FuncError::BudgetExceeded(budget));
                }
                for (x, &y) in t.iter().enumerate() {
                    for (i, &n) in moduli.iter().enumerate() {
                        buf[x * k + i] = (g[y * k + i] + n - g[x * k + i]) % n;
                    }
                }
                if buf.iter().any(|&v| v != 0) && !next.contains(&buf) {
                    next.insert(buf.clone());
                }
            }
        }
        if next.is_empty() {
            return Ok(ScanOutcome::Degree(ExtNat::Finite(depth)));
        }
        if depth == cap || next == level {
            return Ok(ScanOutcome::Exceeded(cap));
        }
        level = next;
        depth += 1;
    }
}

/// Exact functional degree of any map between finite abelian groups.
///
/// Works one primary component `B_p` of the codomain at a time and takes
/// the maximum. A component is infinite unless it is constant on every
/// coset of the `p'`-part of the domain; otherwise it factors through the
/// projection onto `A_p` and its degree is found by a generator scan,
/// bounded by the closed-form maximum for `(A_p, B_p)`.
pub fn fdeg(f: &FuncTable) -> ExtNat {
    if f.is_zero() {
        return ExtNat::NegInfinity;
    }
    if f.is_constant() {
        return ExtNat::ZERO;
    }
    let f = f.canonicalize();
    let mut best = ExtNat::NegInfinity;
    for p in f.codomain().primes() {
        best = best.max(component_degree(&f, p));
        if best == ExtNat::Infinity {
            break;
        }
    }
    best
}

/// Degree of `π_p ∘ f` for canonical `f`.
fn component_degree(f: &FuncTable, p: u64) -> ExtNat {
    let g = f.project_primary(p);
    if g.is_zero() {
        return ExtNat::NegInfinity;
    }
    let Some(reduced) = factor_through_p_part(&g, p) else {
        return ExtNat::Infinity;
    };
    if reduced.is_constant() {
        return ExtNat::ZERO;
    }
    let alphas: Vec<u32> = reduced
        .domain()
        .factors()
        .iter()
        .map(|&n| prime_power(n).expect("canonical factor").1)
        .collect();
    let beta = prime_power(reduced.codomain().exponent()).expect("p-group codomain").1;
    let bound = main_formula_value(p, &alphas, beta);

    let mut frontier = GeneratorFrontier::new(&reduced);
    let mut k = 0u64;
    loop {
        frontier.extend();
        if frontier.entries.is_empty() {
            return ExtNat::Finite(k);
        }
        k += 1;
        assert!(
            k <= bound,
            "generator scan exceeded the closed-form bound {bound} for {} -> {}",
            reduced.domain(),
            reduced.codomain()
        );
    }
}

/// Induced map `A_p → B_p` when `g` is constant on the cosets of the
/// `p'`-part of its (canonical) domain, else `None`.
fn factor_through_p_part(g: &FuncTable, p: u64) -> Option<FuncTable> {
    let dom = g.domain();
    let keep: Vec<usize> = dom
        .factors()
        .iter()
        .enumerate()
        .filter(|(_, &n)| n % p == 0)
        .map(|(i, _)| i)
        .collect();
    if keep.len() == dom.arity() {
        return Some(g.clone());
    }
    let sub = FiniteAbelianGroup::new(keep.iter().map(|&i| dom.factors()[i]).collect())
        .expect("subgroup of a valid group");
    let k = g.codomain().arity();
    let mut data: Vec<Option<&[u64]>> = vec![None; sub.size()];
    for (x, elem) in dom.elements().enumerate() {
        let mut idx = 0usize;
        for &i in &keep {
            idx = idx * dom.factors()[i] as usize + elem.coords()[i] as usize;
        }
        let v = g.value_slice(x);
        match data[idx] {
            None => data[idx] = Some(v),
            Some(w) if w == v => {}
            Some(_) => return None,
        }
    }
    let flat: Vec<u64> = data
        .into_iter()
        .flat_map(|v| v.expect("every coset visited").iter().copied())
        .collect();
    debug_assert_eq!(flat.len(), sub.size() * k);
    Some(FuncTable::from_raw(sub, g.codomain().clone(), flat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcmap::{make_delta, make_hom};
    use crate::groups::GroupElement;

    fn grp(f: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(f.to_vec()).unwrap()
    }

    fn el(c: &[u64]) -> GroupElement {
        GroupElement(c.to_vec())
    }

    #[test]
    fn fdeg_examples() {
        let z2 = grp(&[2]);
        let z3 = grp(&[3]);
        let z4 = grp(&[4]);
        assert_eq!(fdeg(&FuncTable::zero(&z4, &z2)), ExtNat::NegInfinity);
        assert_eq!(fdeg(&make_delta(&z4, &z2, &el(&[0]), &el(&[1])).unwrap()), ExtNat::Finite(3));
        assert_eq!(fdeg(&make_delta(&z3, &z2, &el(&[0]), &el(&[1])).unwrap()), ExtNat::Infinity);
        let h = make_hom(&grp(&[4, 2]), &grp(&[8, 3]), &[el(&[2, 0]), el(&[4, 0])]).unwrap();
        assert_eq!(fdeg(&h), ExtNat::Finite(1));
        assert_eq!(fdeg(&FuncTable::constant(&z3, &z2, &el(&[1])).unwrap()), ExtNat::ZERO);
    }

    #[test]
    fn brute_force_examples() {
        let z2 = grp(&[2]);
        let z3 = grp(&[3]);
        let d = make_delta(&z2, &z2, &el(&[0]), &el(&[1])).unwrap();
        assert_eq!(
            fdeg_bruteforce(&d, 5, DEFAULT_BRUTE_BUDGET).unwrap(),
            ScanOutcome::Degree(ExtNat::Finite(1))
        );
        let id3 = make_hom(&z3, &z3, &[el(&[1])]).unwrap();
        assert_eq!(
            fdeg_bruteforce(&id3, 5, DEFAULT_BRUTE_BUDGET).unwrap(),
            ScanOutcome::Degree(ExtNat::Finite(1))
        );
        let d32 = make_delta(&z3, &z2, &el(&[0]), &el(&[1])).unwrap();
        assert_eq!(
            fdeg_bruteforce(&d32, 6, DEFAULT_BRUTE_BUDGET).unwrap(),
            ScanOutcome::Exceeded(6)
        );
        assert_eq!(fdeg_bruteforce(&d32, 6, 10), Err(FuncError::BudgetExceeded(10)));
    }

    #[test]
    fn generator_scan_examples() {
        let z4 = grp(&[4]);
        let z2 = grp(&[2]);
        let d = make_delta(&z4, &z2, &el(&[0]), &el(&[1])).unwrap();
        assert_eq!(generator_scan(&d, 10), ScanOutcome::Degree(ExtNat::Finite(3)));
        assert_eq!(generator_scan(&d, 2), ScanOutcome::Exceeded(2));
        let c = FuncTable::constant(&z4, &z2, &el(&[1])).unwrap();
        assert_eq!(generator_scan(&c, 0), ScanOutcome::Degree(ExtNat::ZERO));
    }
}
