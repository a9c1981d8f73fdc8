use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::arith::{checked_pow, factorize};
use super::finite::FiniteAbelianGroup;
use super::GroupError;
use crate::ext_nat::ExtNat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    fn plus(self, other: Multiplicity) -> Multiplicity {
        match (self, other) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => Multiplicity::Finite(a + b),
            _ => Multiplicity::Infinite,
        }
    }
}

/// The `p`-primary part `⊕ Z_{p^α}^{(m_α)}`, optionally together with
/// `⊕_{k≥1} Z_{p^k}` when `unbounded` is set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimaryPart {
    /// `(α, multiplicity)` pairs, `α` strictly descending.
    pub factors: Vec<(u32, Multiplicity)>,
    pub unbounded: bool,
}

impl PrimaryPart {
    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty() && !self.unbounded
    }

    pub fn is_finite(&self) -> bool {
        !self.unbounded && self.factors.iter().all(|(_, m)| matches!(m, Multiplicity::Finite(_)))
    }

    pub fn has_bounded_exponent(&self) -> bool {
        !self.unbounded
    }

    /// Largest exponent `α`, when bounded and nontrivial.
    pub fn max_exponent(&self) -> Option<u32> {
        if self.unbounded {
            None
        } else {
            self.factors.first().map(|&(a, _)| a)
        }
    }

    /// The exponents with multiplicity, `α_1 ≥ α_2 ≥ …`; `None` unless finite.
    pub fn exponent_list(&self) -> Option<Vec<u32>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = Vec::new();
        for &(a, m) in &self.factors {
            if let Multiplicity::Finite(m) = m {
                out.extend(std::iter::repeat(a).take(m as usize));
            }
        }
        Some(out)
    }

    fn normalize(&mut self) {
        let mut merged: BTreeMap<u32, Multiplicity> = BTreeMap::new();
        for &(a, m) in &self.factors {
            merged
                .entry(a)
                .and_modify(|old| *old = old.plus(m))
                .or_insert(m);
        }
        self.factors = merged.into_iter().rev().collect();
    }
}

/// A possibly infinite group `Z^s ⊕ ⊕_p (p-part)` with finitely many primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub free_rank: u64,
    pub primary_parts: BTreeMap<u64, PrimaryPart>,
}

/// Structural invariants of a descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureStats {
    pub exponent: ExtNat,
    pub e_value: u64,
    pub rank: ExtNat,
    pub is_finite: bool,
    pub is_torsion: bool,
    pub is_trivial: bool,
    pub is_p_group: Option<u64>,
}

impl GroupDescriptor {
    pub fn trivial() -> Self {
        GroupDescriptor::default()
    }

    /// Builds a descriptor, merging duplicate exponents and dropping trivial
    /// primary parts.
    pub fn new(free_rank: u64, parts: BTreeMap<u64, PrimaryPart>) -> Self {
        let mut d = GroupDescriptor {
            free_rank,
            primary_parts: parts,
        };
        d.normalize();
        d
    }

    pub(crate) fn normalize(&mut self) {
        for part in self.primary_parts.values_mut() {
            part.normalize();
        }
        self.primary_parts.retain(|_, part| !part.is_trivial());
    }

    /// Adds `Z_n` (`n ≥ 2`) with the given multiplicity, split into prime powers.
    pub(crate) fn push_cyclic(&mut self, n: u64, mult: Multiplicity) {
        for (p, k) in factorize(n) {
            self.primary_parts
                .entry(p)
                .or_default()
                .factors
                .push((k, mult));
        }
    }

    pub(crate) fn push_unbounded(&mut self, p: u64) {
        self.primary_parts.entry(p).or_default().unbounded = true;
    }

    pub fn part(&self, p: u64) -> Option<&PrimaryPart> {
        self.primary_parts.get(&p)
    }

    /// Primes with a nontrivial primary component, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primary_parts.keys().copied()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.primary_parts.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0 && self.primary_parts.values().all(PrimaryPart::is_finite)
    }

    /// The prime `p` when this is a nontrivial `p`-group.
    pub fn p_group_prime(&self) -> Option<u64> {
        if self.free_rank > 0 || self.primary_parts.len() != 1 {
            return None;
        }
        self.primary_parts.keys().next().copied()
    }

    /// `exp(A)`, or `inf` when unbounded; `None` never happens for valid
    /// descriptors because parsing rejects exponents beyond `u64`.
    pub fn exponent(&self) -> ExtNat {
        if self.free_rank > 0 {
            return ExtNat::Infinity;
        }
        let mut e: u64 = 1;
        for (&p, part) in &self.primary_parts {
            match part.max_exponent() {
                None => return ExtNat::Infinity,
                Some(a) => {
                    let q = checked_pow(p, a).expect("validated exponent");
                    e = e.checked_mul(q).expect("validated exponent");
                }
            }
        }
        ExtNat::Finite(e)
    }

    /// `e(A)`: the exponent if finite, else 0.
    pub fn e_value(&self) -> u64 {
        self.exponent().finite().unwrap_or(0)
    }

    /// Least number of cyclic summands, `inf` when not finitely generated.
    pub fn rank(&self) -> ExtNat {
        let mut torsion_rank = 0u64;
        for part in self.primary_parts.values() {
            if part.unbounded {
                return ExtNat::Infinity;
            }
            let mut count = 0u64;
            for &(_, m) in &part.factors {
                match m {
                    Multiplicity::Finite(m) => count += m,
                    Multiplicity::Infinite => return ExtNat::Infinity,
                }
            }
            torsion_rank = torsion_rank.max(count);
        }
        ExtNat::Finite(self.free_rank + torsion_rank)
    }

    pub fn structure_stats(&self) -> StructureStats {
        StructureStats {
            exponent: self.exponent(),
            e_value: self.e_value(),
            rank: self.rank(),
            is_finite: self.is_finite(),
            is_torsion: self.is_torsion(),
            is_trivial: self.is_trivial(),
            is_p_group: self.p_group_prime(),
        }
    }

    /// `A[p^∞]`; the free part is dropped.
    pub fn primary_component(&self, p: u64) -> GroupDescriptor {
        let mut parts = BTreeMap::new();
        if let Some(part) = self.primary_parts.get(&p) {
            parts.insert(p, part.clone());
        }
        GroupDescriptor {
            free_rank: 0,
            primary_parts: parts,
        }
    }

    /// `A[tors]`.
    pub fn torsion_part(&self) -> GroupDescriptor {
        GroupDescriptor {
            free_rank: 0,
            primary_parts: self.primary_parts.clone(),
        }
    }

    pub fn to_finite_group(&self) -> Result<FiniteAbelianGroup, GroupError> {
        if !self.is_finite() {
            return Err(GroupError::NotFinite(self.to_string()));
        }
        let mut factors = Vec::new();
        for (&p, part) in &self.primary_parts {
            for &(a, m) in &part.factors {
                if let Multiplicity::Finite(m) = m {
                    let q = checked_pow(p, a).ok_or(GroupError::TooLarge)?;
                    factors.extend(std::iter::repeat(q).take(m as usize));
                }
            }
        }
        FiniteAbelianGroup::new(factors)
    }

    pub fn from_finite(g: &FiniteAbelianGroup) -> Self {
        let mut d = GroupDescriptor::trivial();
        for &n in g.factors() {
            d.push_cyclic(n, Multiplicity::Finite(1));
        }
        d.normalize();
        d
    }
}

/// Whether every homomorphism `A → B` is zero.
///
/// Holds iff `B` is trivial, or `A` is torsion and no prime has both
/// `A[p^∞]` and `B[p^∞]` nontrivial. A free summand of `A` maps onto any
/// nonzero cyclic subgroup, and a shared prime gives `Z_p → Z_p` inside.
pub fn hom_is_trivial(a: &GroupDescriptor, b: &GroupDescriptor) -> bool {
    if b.is_trivial() {
        return true;
    }
    a.free_rank == 0 && a.primes().all(|p| b.part(p).is_none())
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for _ in 0..self.free_rank {
            terms.push("Z".to_string());
        }
        for (&p, part) in &self.primary_parts {
            for &(a, m) in &part.factors {
                let q = checked_pow(p, a).expect("validated exponent");
                match m {
                    Multiplicity::Finite(1) => terms.push(format!("Z{q}")),
                    Multiplicity::Finite(m) => terms.push(format!("Z{q}*{m}")),
                    Multiplicity::Infinite => terms.push(format!("Z{q}*inf")),
                }
            }
            if part.unbounded {
                terms.push(format!("U{p}"));
            }
        }
        if terms.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&terms.join("x"))
        }
    }
}
