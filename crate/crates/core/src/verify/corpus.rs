//! Seeded corpora of small groups and maps.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Budget;
use crate::funcmap::{difference, make_delta, make_hom, FuncTable};
use crate::groups::arith::factorize;
use crate::groups::{FiniteAbelianGroup, GroupElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Random,
    HomPlusConstant,
    Delta,
    DifferenceOfRandom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusMap {
    pub kind: MapKind,
    pub map: FuncTable,
}

/// Deterministic RNG for case `index` of a run seeded with `seed`.
pub fn case_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64 + 1);
    rng
}

fn partitions(n: u32, max_part: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max_part)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every abelian group of order `n`, in canonical form.
pub fn groups_of_order(n: u64) -> Vec<FiniteAbelianGroup> {
    let mut lists: Vec<Vec<u64>> = vec![vec![]];
    for (p, k) in factorize(n) {
        let mut next = Vec::new();
        for prefix in &lists {
            for part in partitions(k, k) {
                let mut l = prefix.clone();
                l.extend(part.iter().map(|&e| p.pow(e)));
                next.push(l);
            }
        }
        lists = next;
    }
    lists
        .into_iter()
        .map(|l| FiniteAbelianGroup::new(l).expect("valid factors"))
        .collect()
}

/// Canonical groups of order `2..=max_order`, plus non-canonical
/// presentations such as `Z6`, `Z12` and `Z2xZ6` so that canonicalization
/// is exercised.
pub fn groups_up_to(max_order: u64) -> Vec<FiniteAbelianGroup> {
    let mut out = Vec::new();
    for n in 2..=max_order {
        out.extend(groups_of_order(n));
        if factorize(n).len() > 1 {
            out.push(FiniteAbelianGroup::new(vec![n]).expect("n ≥ 2"));
        }
    }
    for literal in [vec![2, 6], vec![3, 4], vec![6, 2]] {
        if literal.iter().product::<u64>() <= max_order {
            out.push(FiniteAbelianGroup::new(literal).expect("valid factors"));
        }
    }
    out
}

/// Canonical nontrivial `p`-groups of order at most `max_order`.
pub fn p_groups_up_to(max_order: u64) -> Vec<FiniteAbelianGroup> {
    (2..=max_order)
        .filter(|&n| factorize(n).len() == 1)
        .flat_map(groups_of_order)
        .collect()
}

/// A homomorphism with each generator sent to a random element of
/// admissible order.
pub fn random_hom<R: Rng + ?Sized>(a: &FiniteAbelianGroup, b: &FiniteAbelianGroup, rng: &mut R) -> FuncTable {
    let images: Vec<GroupElement> = a
        .factors()
        .iter()
        .map(|&n| {
            let y = b.element_at(rng.gen_range(0..b.size()));
            let o = b.order_of(&y).expect("element of b");
            b.scale(&y, (o / o.gcd(&n)) as i64).expect("element of b")
        })
        .collect();
    make_hom(a, b, &images).expect("images have admissible orders")
}

pub fn random_element<R: Rng + ?Sized>(g: &FiniteAbelianGroup, rng: &mut R) -> GroupElement {
    g.element_at(rng.gen_range(0..g.size()))
}

pub fn random_map<R: Rng + ?Sized>(kind: MapKind, a: &FiniteAbelianGroup, b: &FiniteAbelianGroup, rng: &mut R) -> FuncTable {
    match kind {
        MapKind::Random => FuncTable::random(a, b, rng),
        MapKind::HomPlusConstant => {
            let c = FuncTable::constant(a, b, &random_element(b, rng)).expect("element of b");
            random_hom(a, b, rng).add(&c).expect("same shape")
        }
        MapKind::Delta => {
            make_delta(a, b, &random_element(a, rng), &random_element(b, rng)).expect("elements of a and b")
        }
        MapKind::DifferenceOfRandom => {
            let f = FuncTable::random(a, b, rng);
            difference(&f, &random_element(a, rng)).expect("element of a")
        }
    }
}

/// `corpus_size` maps between groups of order at most `max_group_order`.
/// About 30% of the pairs are `p`-groups for a common prime `p`, where
/// every map has finite degree.
pub fn corpus(budget: &Budget) -> Vec<CorpusMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let all = groups_up_to(budget.max_group_order);
    let p_groups = p_groups_up_to(budget.max_group_order);
    let kinds = [
        MapKind::Random,
        MapKind::HomPlusConstant,
        MapKind::Delta,
        MapKind::DifferenceOfRandom,
    ];
    (0..budget.corpus_size)
        .map(|_| {
            let (a, b) = if rng.gen_bool(0.3) {
                let a = p_groups.choose(&mut rng).expect("order ≥ 2 has p-groups");
                let p = a.p_group_prime().expect("p-group");
                let same: Vec<_> = p_groups.iter().filter(|g| g.p_group_prime() == Some(p)).collect();
                (a.clone(), (*same.choose(&mut rng).expect("a itself")).clone())
            } else {
                (
                    all.choose(&mut rng).expect("nonempty").clone(),
                    all.choose(&mut rng).expect("nonempty").clone(),
                )
            };
            let kind = *kinds.choose(&mut rng).expect("nonempty");
            CorpusMap {
                kind,
                map: random_map(kind, &a, &b, &mut rng),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_counts() {
        // Numbers of abelian groups of orders 1..=16 (partition products).
        let expected = [1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5];
        for (n, &e) in (1..=16).zip(&expected) {
            assert_eq!(groups_of_order(n).len(), e, "order {n}");
        }
        assert!(groups_of_order(16).iter().all(|g| g.is_canonical()));
        assert_eq!(p_groups_up_to(16).len(), 1 + 1 + 2 + 1 + 1 + 3 + 2 + 1 + 1 + 5);
    }

    #[test]
    fn corpus_is_deterministic() {
        let budget = Budget {
            corpus_size: 50,
            ..Budget::default()
        };
        let c1 = corpus(&budget);
        assert_eq!(c1, corpus(&budget));
        assert!(c1.iter().all(|m| m.map.domain().order() <= 12 && m.map.codomain().order() <= 12));
        let other = corpus(&Budget { seed: 1, ..budget });
        assert_ne!(c1, other);
    }

    #[test]
    fn random_homs_are_homomorphisms() {
        let mut rng = case_rng(7, 0);
        let a = FiniteAbelianGroup::new(vec![4, 2]).unwrap();
        let b = FiniteAbelianGroup::new(vec![6]).unwrap();
        for _ in 0..20 {
            let h = random_hom(&a, &b, &mut rng);
            for x in a.elements() {
                for y in a.elements() {
                    let lhs = h.value_at(&a.add(&x, &y).unwrap());
                    let rhs = b.add(&h.value_at(&x), &h.value_at(&y)).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
