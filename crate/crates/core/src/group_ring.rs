//! Exact arithmetic in the group ring `Z_m[A]` of a finite abelian group,
//! the augmentation ideal, and nilpotency of its powers.
//!
//! Modulus `m = 0` means unreduced integer coefficients. Coefficients are
//! always arbitrary precision, so the same code serves both cases.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::ext_nat::ExtNat;
use crate::funcmap::FuncTable;
use crate::groups::arith::prime_power;
use crate::groups::{FiniteAbelianGroup, GroupElement, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupRingError {
    #[error("modulus 1 gives the zero ring")]
    ZeroRing,
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),
    #[error("coefficients mod {modulus} do not act on a codomain of exponent {exponent}")]
    IncompatibleModulus { modulus: u64, exponent: u64 },
    #[error("nilpotency scan passed the cap {0}")]
    CapExceeded(u64),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("malformed group ring element: {0}")]
    Malformed(String),
}

/// A sparse element `Σ r_a [a]` of `Z_m[A]`, keyed by element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    modulus: u64,
    group: FiniteAbelianGroup,
    terms: BTreeMap<usize, BigInt>,
}

fn check_modulus(m: u64) -> Result<(), GroupRingError> {
    if m == 1 {
        Err(GroupRingError::ZeroRing)
    } else {
        Ok(())
    }
}

impl GroupRingElement {
    pub fn zero(modulus: u64, group: &FiniteAbelianGroup) -> Result<Self, GroupRingError> {
        check_modulus(modulus)?;
        Ok(GroupRingElement {
            modulus,
            group: group.clone(),
            terms: BTreeMap::new(),
        })
    }

    /// `c · [a]`.
    pub fn monomial(
        modulus: u64,
        group: &FiniteAbelianGroup,
        a: &GroupElement,
        c: impl Into<BigInt>,
    ) -> Result<Self, GroupRingError> {
        let mut x = GroupRingElement::zero(modulus, group)?;
        let a = group.element(a.coords().to_vec())?;
        x.add_term(group.index_of(&a), c.into());
        Ok(x)
    }

    /// The multiplicative identity `[0]`.
    pub fn one(modulus: u64, group: &FiniteAbelianGroup) -> Result<Self, GroupRingError> {
        GroupRingElement::monomial(modulus, group, &group.zero(), 1)
    }

    /// Builds an element from `(element, coefficient)` pairs; repeated
    /// elements accumulate.
    pub fn from_terms<I, C>(
        modulus: u64,
        group: &FiniteAbelianGroup,
        terms: I,
    ) -> Result<Self, GroupRingError>
    where
        I: IntoIterator<Item = (GroupElement, C)>,
        C: Into<BigInt>,
    {
        let mut x = GroupRingElement::zero(modulus, group)?;
        for (a, c) in terms {
            let a = group.element(a.0)?;
            x.add_term(group.index_of(&a), c.into());
        }
        Ok(x)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, a: &GroupElement) -> BigInt {
        self.terms
            .get(&self.group.index_of(a))
            .cloned()
            .unwrap_or_default()
    }

    /// Terms in enumeration order.
    pub fn terms(&self) -> impl Iterator<Item = (GroupElement, &BigInt)> + '_ {
        self.terms
            .iter()
            .map(move |(&i, c)| (self.group.element_at(i), c))
    }

    fn reduce(&self, c: BigInt) -> BigInt {
        if self.modulus == 0 {
            c
        } else {
            c.mod_floor(&BigInt::from(self.modulus))
        }
    }

    fn add_term(&mut self, idx: usize, c: BigInt) {
        let old = self.terms.remove(&idx).unwrap_or_default();
        let new = self.reduce(old + c);
        if !new.is_zero() {
            self.terms.insert(idx, new);
        }
    }

    fn compatible(&self, other: &Self) -> Result<(), GroupRingError> {
        if self.modulus != other.modulus {
            return Err(GroupRingError::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.group != other.group {
            return Err(GroupRingError::GroupMismatch(
                self.group.to_string(),
                other.group.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupRingError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (&i, c) in &other.terms {
            out.add_term(i, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = GroupRingElement {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (&i, c) in &self.terms {
            out.add_term(i, -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GroupRingError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = GroupRingElement {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (&i, c) in &self.terms {
            out.add_term(i, c * k);
        }
        out
    }

    /// Convolution: `[a]·[b] = [a+b]`.
    pub fn mul(&self, other: &Self) -> Result<Self, GroupRingError> {
        self.compatible(other)?;
        let mut out = GroupRingElement {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (&i, c) in &self.terms {
            for (&j, d) in &other.terms {
                out.add_term(self.group.add_index(i, j), c * d);
            }
        }
        Ok(out)
    }

    /// `self^n` by repeated squaring; `x^0 = [0]`.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = GroupRingElement::one(self.modulus, &self.group).expect("valid modulus");
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// `ε(x)`: the coefficient sum, reduced mod `m` when `m ≥ 2`.
    pub fn augmentation(&self) -> BigInt {
        let s: BigInt = self.terms.values().sum();
        self.reduce(s)
    }

    pub fn in_augmentation_ideal(&self) -> bool {
        self.augmentation().is_zero()
    }

    /// Module action on `B^A`: `(Σ n_a [a]) f = Σ n_a τ_a f`, where
    /// `(τ_a f)(x) = f(x + a)`.
    pub fn act(&self, f: &FuncTable) -> Result<FuncTable, GroupRingError> {
        if f.domain() != &self.group {
            return Err(GroupRingError::GroupMismatch(
                self.group.to_string(),
                f.domain().to_string(),
            ));
        }
        let e = f.codomain().exponent();
        if self.modulus != 0 && self.modulus % e != 0 {
            return Err(GroupRingError::IncompatibleModulus {
                modulus: self.modulus,
                exponent: e,
            });
        }
        let weights: Vec<(Vec<usize>, u64)> = self
            .terms
            .iter()
            .map(|(&a, c)| {
                let w = c.mod_floor(&BigInt::from(e)).to_u64().expect("reduced below exponent");
                (self.group.translation(a), w)
            })
            .collect();
        let moduli = f.codomain().factors().to_vec();
        let k = moduli.len();
        let mut data = vec![0u64; f.domain().size() * k];
        for x in 0..f.domain().size() {
            let out = &mut data[x * k..(x + 1) * k];
            for (shift, w) in &weights {
                for ((o, &v), &n) in out.iter_mut().zip(f.value_slice(shift[x])).zip(&moduli) {
                    *o = ((*o as u128 + v as u128 * *w as u128) % n as u128) as u64;
                }
            }
        }
        Ok(FuncTable::from_raw(f.domain().clone(), f.codomain().clone(), data))
    }
}

/// `Δ_a = [a] − [0]`.
pub fn delta_elem(
    modulus: u64,
    group: &FiniteAbelianGroup,
    a: &GroupElement,
) -> Result<GroupRingElement, GroupRingError> {
    let x = GroupRingElement::monomial(modulus, group, a, 1)?;
    x.sub(&GroupRingElement::one(modulus, group)?)
}

/// Products `Π Δ_{s_i}^{e_i}` over multisets of canonical generators.
///
/// Each entry remembers the largest generator index used, so multisets are
/// only extended by indices at or above it. Zero products are dropped since
/// every extension of them is zero too.
struct Frontier {
    generators: Vec<GroupRingElement>,
    entries: Vec<(usize, GroupRingElement)>,
}

impl Frontier {
    fn start(modulus: u64, group: &FiniteAbelianGroup) -> Result<Self, GroupRingError> {
        let generators = (0..group.arity())
            .map(|i| delta_elem(modulus, group, &group.generator(i)))
            .collect::<Result<Vec<_>, _>>()?;
        let entries = generators
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(i, g)| (i, g.clone()))
            .collect();
        Ok(Frontier {
            generators,
            entries,
        })
    }

    fn extend(&mut self) {
        let mut next = Vec::new();
        for (last, x) in &self.entries {
            for (i, g) in self.generators.iter().enumerate().skip(*last) {
                let y = x.mul(g).expect("same ring");
                if !y.is_zero() {
                    next.push((i, y));
                }
            }
        }
        self.entries = next;
    }
}

/// Whether `I^n = 0` in `Z_m[A]`, tested on all `n`-fold products of
/// `Δ_s` over the canonical generators `s`, which generate `I^n`.
pub fn ideal_power_is_zero(
    modulus: u64,
    group: &FiniteAbelianGroup,
    n: u64,
) -> Result<bool, GroupRingError> {
    check_modulus(modulus)?;
    if n == 0 {
        return Ok(false);
    }
    let mut frontier = Frontier::start(modulus, group)?;
    for _ in 1..n {
        if frontier.entries.is_empty() {
            break;
        }
        frontier.extend();
    }
    Ok(frontier.entries.is_empty())
}

/// Whether the augmentation ideal of `Z_m[A]` is nilpotent: `A` trivial, or
/// `m = p^β` with `A` a `p`-group.
pub fn augmentation_ideal_is_nilpotent(modulus: u64, group: &FiniteAbelianGroup) -> bool {
    if group.is_trivial() {
        return true;
    }
    match (prime_power(modulus), group.p_group_prime()) {
        (Some((p, _)), Some(q)) => p == q,
        _ => false,
    }
}

/// `ν(Z_m[A])`, the least `n ≥ 1` with `I^n = 0`, or `inf`.
///
/// The structural test runs first and certifies `inf`; only nilpotent cases
/// are scanned. `cap` bounds the scan.
pub fn nilpotency_index(
    modulus: u64,
    group: &FiniteAbelianGroup,
    cap: u64,
) -> Result<ExtNat, GroupRingError> {
    check_modulus(modulus)?;
    if group.is_trivial() {
        return Ok(ExtNat::Finite(1));
    }
    if !augmentation_ideal_is_nilpotent(modulus, group) {
        return Ok(ExtNat::Infinity);
    }
    let mut frontier = Frontier::start(modulus, group)?;
    for k in 1..=cap {
        if frontier.entries.is_empty() {
            return Ok(ExtNat::Finite(k));
        }
        frontier.extend();
    }
    Err(GroupRingError::CapExceeded(cap))
}

#[derive(Serialize, Deserialize)]
struct GroupRingJson {
    modulus: u64,
    group: String,
    terms: Vec<(GroupElement, serde_json::Value)>,
}

fn coeff_to_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

fn coeff_from_json(v: &serde_json::Value) -> Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| format!("non-integer coefficient {n}")),
        serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad coefficient {s:?}")),
        other => Err(format!("bad coefficient {other}")),
    }
}

impl Serialize for GroupRingElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GroupRingJson {
            modulus: self.modulus,
            group: self.group.to_string(),
            terms: self.terms().map(|(a, c)| (a, coeff_to_json(c))).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroupRingElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = GroupRingJson::deserialize(deserializer)?;
        let group = FiniteAbelianGroup::parse_literal(&raw.group).map_err(D::Error::custom)?;
        let terms = raw
            .terms
            .iter()
            .map(|(a, v)| coeff_from_json(v).map(|c| (a.clone(), c)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        GroupRingElement::from_terms(raw.modulus, &group, terms).map_err(D::Error::custom)
    }
}

/// Displays as a sum like `2[0] - 2[1]` with coordinates of each element.
impl std::fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (a, c)) in self.terms().enumerate() {
            let sign_neg = c.is_negative();
            let mag = c.abs();
            match (k, sign_neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "[{}]", a.coords().iter().map(u64::to_string).collect::<Vec<_>>().join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcmap::make_delta;

    fn grp(f: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(f.to_vec()).unwrap()
    }

    fn el(c: &[u64]) -> GroupElement {
        GroupElement(c.to_vec())
    }

    #[test]
    fn delta_squared_over_integers() {
        let z2 = grp(&[2]);
        let d = delta_elem(0, &z2, &el(&[1])).unwrap();
        let sq = d.pow(2);
        let expected = GroupRingElement::from_terms(0, &z2, [(el(&[0]), 2), (el(&[1]), -2)]).unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn delta_squared_mod_two_vanishes() {
        let z2 = grp(&[2]);
        let d = delta_elem(2, &z2, &el(&[1])).unwrap();
        assert!(d.mul(&d).unwrap().is_zero());
    }

    #[test]
    fn identity_and_delta_shapes() {
        let z4 = grp(&[4]);
        let x = GroupRingElement::from_terms(0, &z4, [(el(&[1]), 3), (el(&[3]), -7)]).unwrap();
        assert_eq!(x.mul(&GroupRingElement::one(0, &z4).unwrap()).unwrap(), x);

        assert!(delta_elem(0, &z4, &el(&[0])).unwrap().is_zero());
        let d2 = delta_elem(2, &z4, &el(&[1])).unwrap();
        assert_eq!(d2.coefficient(&el(&[1])), BigInt::from(1));
        assert_eq!(d2.coefficient(&el(&[0])), BigInt::from(1));
        let d0 = delta_elem(0, &z4, &el(&[1])).unwrap();
        assert_eq!(d0.coefficient(&el(&[0])), BigInt::from(-1));
    }

    #[test]
    fn augmentation_values() {
        let z4 = grp(&[4]);
        assert!(delta_elem(0, &z4, &el(&[3])).unwrap().augmentation().is_zero());
        let x = GroupRingElement::monomial(0, &z4, &el(&[1]), 3).unwrap();
        assert_eq!(x.augmentation(), BigInt::from(3));
        assert!(GroupRingElement::zero(0, &z4).unwrap().augmentation().is_zero());
    }

    #[test]
    fn mismatches_and_zero_ring() {
        let z4 = grp(&[4]);
        assert_eq!(GroupRingElement::zero(1, &z4).unwrap_err(), GroupRingError::ZeroRing);
        let a = GroupRingElement::one(2, &z4).unwrap();
        let b = GroupRingElement::one(3, &z4).unwrap();
        assert!(matches!(a.mul(&b), Err(GroupRingError::ModulusMismatch(2, 3))));
        let c = GroupRingElement::one(2, &grp(&[2])).unwrap();
        assert!(matches!(a.add(&c), Err(GroupRingError::GroupMismatch(..))));
    }

    #[test]
    fn action_examples() {
        let z2 = grp(&[2]);
        let f = make_delta(&z2, &z2, &el(&[0]), &el(&[1])).unwrap();
        let d = delta_elem(2, &z2, &el(&[1])).unwrap();
        let g = d.act(&f).unwrap();
        assert_eq!(g.values(), vec![el(&[1]), el(&[1])]);

        let zero = GroupRingElement::zero(0, &z2).unwrap();
        assert!(zero.act(&f).unwrap().is_zero());

        let z4 = grp(&[4]);
        let id = crate::funcmap::make_hom(&z4, &z4, &[el(&[1])]).unwrap();
        let shifted = GroupRingElement::monomial(0, &z4, &el(&[1]), 1).unwrap().act(&id).unwrap();
        for x in 0..4 {
            assert_eq!(shifted.value(x), el(&[(x as u64 + 1) % 4]));
        }

        let z3 = grp(&[3]);
        let f = make_delta(&z2, &z3, &el(&[0]), &el(&[1])).unwrap();
        assert!(matches!(
            GroupRingElement::one(2, &z2).unwrap().act(&f),
            Err(GroupRingError::IncompatibleModulus { .. })
        ));
    }

    #[test]
    fn ideal_powers() {
        let z2 = grp(&[2]);
        assert!(ideal_power_is_zero(2, &z2, 2).unwrap());
        assert!(!ideal_power_is_zero(2, &z2, 1).unwrap());
        for n in 1..6 {
            assert!(!ideal_power_is_zero(0, &z2, n).unwrap());
        }
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(nilpotency_index(2, &grp(&[4]), 100).unwrap(), ExtNat::Finite(4));
        assert_eq!(nilpotency_index(3, &grp(&[9]), 100).unwrap(), ExtNat::Finite(9));
        assert_eq!(nilpotency_index(6, &grp(&[2]), 100).unwrap(), ExtNat::Infinity);
        assert_eq!(nilpotency_index(0, &grp(&[2]), 100).unwrap(), ExtNat::Infinity);
        assert_eq!(nilpotency_index(4, &grp(&[2, 2]), 100).unwrap(), ExtNat::Finite(4));
        assert_eq!(nilpotency_index(5, &FiniteAbelianGroup::trivial(), 1).unwrap(), ExtNat::Finite(1));
        assert_eq!(
            nilpotency_index(2, &grp(&[8]), 3).unwrap_err(),
            GroupRingError::CapExceeded(3)
        );
    }

    #[test]
    fn json_round_trip() {
        let z4 = grp(&[4, 2]);
        let x = GroupRingElement::from_terms(0, &z4, [(el(&[1, 1]), -3), (el(&[0, 0]), 5)]).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"modulus":0,"group":"Z4xZ2","terms":[[[0,0],5],[[1,1],-3]]}"#);
        let back: GroupRingElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let big = x.pow(40);
        let back: GroupRingElement = serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn display() {
        let z2 = grp(&[2]);
        let d = delta_elem(0, &z2, &el(&[1])).unwrap().pow(2);
        assert_eq!(d.to_string(), "2[0] - 2[1]");
    }
}
