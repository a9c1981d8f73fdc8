//! Definitional computations used as oracles. Nothing here calls the
//! closed forms in [`crate::formulas`].

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::funcmap::{difference, FuncTable};
use crate::group_ring::GroupRingElement;
use crate::groups::{FiniteAbelianGroup, GroupElement};

/// `Σ_{0≤i≤n, i≡j (mod k)} (−1)^i C(n,i)` from a full Pascal row.
pub fn binomial_sum(k: u64, j: i64, n: u64) -> BigInt {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::one()];
        next.extend(row.windows(2).map(|w| &w[0] + &w[1]));
        next.push(BigInt::one());
        row = next;
    }
    let mut sum = BigInt::zero();
    for (i, c) in row.iter().enumerate() {
        if (i as i64 - j).rem_euclid(k as i64) == 0 {
            if i % 2 == 0 {
                sum += c;
            } else {
                sum -= c;
            }
        }
    }
    sum
}

/// `x^n` by `n − 1` successive multiplications.
pub fn naive_power(x: &GroupRingElement, n: u64) -> GroupRingElement {
    let mut acc = GroupRingElement::one(x.modulus(), x.group()).expect("ring of x");
    for _ in 0..n {
        acc = acc.mul(x).expect("same ring");
    }
    acc
}

/// `Δ_a^n f` by repeated single differences.
pub fn iterate_difference(f: &FuncTable, a: &GroupElement, n: u64) -> FuncTable {
    let mut g = f.clone();
    for _ in 0..n {
        g = difference(&g, a).expect("element of the domain");
    }
    g
}

/// Every map `A → B`, in lexicographic order of value tables.
pub fn all_maps<'a>(a: &'a FiniteAbelianGroup, b: &'a FiniteAbelianGroup) -> impl Iterator<Item = FuncTable> + 'a {
    let total = (b.size() as u64).checked_pow(a.size() as u32).expect("map count fits in u64");
    (0..total).map(move |mut code| {
        let mut idx = vec![0usize; a.size()];
        for slot in idx.iter_mut().rev() {
            *slot = (code % b.size() as u64) as usize;
            code /= b.size() as u64;
        }
        FuncTable::from_fn(a, b, |x| b.element_at(idx[a.index_of(&x)])).expect("values in b")
    })
}

/// Coordinates of a canonical group whose cyclic order is a power of `p`.
fn p_coordinates(g: &FiniteAbelianGroup, p: u64) -> Vec<usize> {
    (0..g.arity()).filter(|&i| g.factors()[i] % p == 0).collect()
}

/// For `f` with canonical domain and codomain: the map `A_p → B_p` induced
/// by `π_p ∘ f`, or `None` when `π_p ∘ f` is not constant on the cosets of
/// the `p'`-part of `A`. Built from element coordinates directly.
pub fn induced_primary_map(f: &FuncTable, p: u64) -> Option<FuncTable> {
    let (dom, cod) = (f.domain(), f.codomain());
    let dk = p_coordinates(dom, p);
    let ck = p_coordinates(cod, p);
    let ap = FiniteAbelianGroup::new(dk.iter().map(|&i| dom.factors()[i]).collect()).expect("subgroup");
    let bp = FiniteAbelianGroup::new(ck.iter().map(|&i| cod.factors()[i]).collect()).expect("subgroup");
    let project = |y: &GroupElement| GroupElement(ck.iter().map(|&i| y.coords()[i]).collect());
    let embed = |x: &GroupElement| {
        let mut c = vec![0u64; dom.arity()];
        for (slot, &i) in x.coords().iter().zip(&dk) {
            c[i] = *slot;
        }
        GroupElement(c)
    };
    for x in dom.elements() {
        let xp = GroupElement(dk.iter().map(|&i| x.coords()[i]).collect());
        if project(&f.value_at(&x)) != project(&f.value_at(&embed(&xp))) {
            return None;
        }
    }
    Some(FuncTable::from_fn(&ap, &bp, |x| project(&f.value_at(&embed(&x)))).expect("values in b_p"))
}

/// Whether `f: A_1 ⊕ A_2 → B_1 ⊕ B_2` has `B_i`-component depending only
/// on the `A_i`-coordinates, with the splits given by factor counts.
pub fn is_diagonal(f: &FuncTable, domain_split: usize, codomain_split: usize) -> bool {
    let dom = f.domain();
    for x in dom.elements() {
        let y = f.value_at(&x);
        for z in dom.elements() {
            let w = f.value_at(&z);
            let same_first = x.coords()[..domain_split] == z.coords()[..domain_split];
            let same_second = x.coords()[domain_split..] == z.coords()[domain_split..];
            if same_first && y.coords()[..codomain_split] != w.coords()[..codomain_split] {
                return false;
            }
            if same_second && y.coords()[codomain_split..] != w.coords()[codomain_split..] {
                return false;
            }
        }
    }
    true
}

/// The component maps of a diagonal `f`, read off along the axes.
pub fn diagonal_components(
    f: &FuncTable,
    a1: &FiniteAbelianGroup,
    a2: &FiniteAbelianGroup,
    b1: &FiniteAbelianGroup,
    b2: &FiniteAbelianGroup,
) -> (FuncTable, FuncTable) {
    let r = a1.arity();
    let s = b1.arity();
    let f1 = FuncTable::from_fn(a1, b1, |x| {
        let mut c = x.coords().to_vec();
        c.extend(a2.zero().coords());
        GroupElement(f.value_at(&GroupElement(c)).coords()[..s].to_vec())
    })
    .expect("values in b1");
    let f2 = FuncTable::from_fn(a2, b2, |x| {
        let mut c = a1.zero().coords().to_vec();
        c.extend(x.coords());
        GroupElement(f.value_at(&GroupElement(c)).coords()[s..].to_vec())
    })
    .expect("values in b2");
    debug_assert_eq!(r + a2.arity(), f.domain().arity());
    (f1, f2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_sums_by_hand() {
        // M_2(0,3) = C(3,0) + C(3,2) = 4; M_3(1,4) = −C(4,1) + C(4,4) = −3.
        assert_eq!(binomial_sum(2, 0, 3), BigInt::from(4));
        assert_eq!(binomial_sum(3, 1, 4), BigInt::from(-3));
        assert_eq!(binomial_sum(3, -2, 4), BigInt::from(-3));
        assert_eq!(binomial_sum(1, 0, 5), BigInt::zero());
    }

    #[test]
    fn all_maps_counts() {
        let z2 = FiniteAbelianGroup::new(vec![2]).unwrap();
        let z3 = FiniteAbelianGroup::new(vec![3]).unwrap();
        let maps: Vec<_> = all_maps(&z3, &z2).collect();
        assert_eq!(maps.len(), 8);
        let distinct: std::collections::HashSet<_> = maps.iter().collect();
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn induced_map_of_projection() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let id = FuncTable::from_fn(&g, &g, |x| x.clone()).unwrap();
        let f2 = induced_primary_map(&id, 2).unwrap();
        assert_eq!(f2.domain().factors(), &[2]);
        assert_eq!(f2.values(), vec![GroupElement(vec![0]), GroupElement(vec![1])]);
        let swap = FuncTable::from_fn(&g, &g, |x| GroupElement(vec![x.coords()[1] % 2, 0])).unwrap();
        assert!(induced_primary_map(&swap, 2).is_none());
        assert!(is_diagonal(&id, 1, 1));
        assert!(!is_diagonal(&swap, 1, 1));
    }
}
