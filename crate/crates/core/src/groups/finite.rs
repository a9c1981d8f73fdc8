use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::arith::{factorize, prime_power};
use super::GroupError;

/// Largest group order accepted for concrete (table-based) computation.
pub const MAX_CONCRETE_ORDER: u64 = 1 << 24;

/// A finite abelian group `Z_{N_1} ⊕ … ⊕ Z_{N_k}` given by its cyclic orders.
///
/// Elements are enumerated lexicographically in factor order with the last
/// coordinate running fastest; `index_of` / `element_at` follow that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
    canonical: bool,
}

/// A tuple of residues, parallel to the factor list of its group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn is_canonical_list(factors: &[u64]) -> bool {
    let keys: Option<Vec<(u64, std::cmp::Reverse<u32>)>> = factors
        .iter()
        .map(|&n| prime_power(n).map(|(p, k)| (p, std::cmp::Reverse(k))))
        .collect();
    match keys {
        Some(keys) => keys.windows(2).all(|w| w[0] <= w[1]),
        None => false,
    }
}

impl FiniteAbelianGroup {
    /// Group with the given cyclic orders, kept in the given order.
    pub fn new(factors: Vec<u64>) -> Result<Self, GroupError> {
        if let Some(&bad) = factors.iter().find(|&&n| n < 2) {
            return Err(GroupError::BadFactor(bad));
        }
        let mut order: u64 = 1;
        for &n in &factors {
            order = order
                .checked_mul(n)
                .filter(|&o| o <= MAX_CONCRETE_ORDER)
                .ok_or(GroupError::TooLarge)?;
        }
        let canonical = is_canonical_list(&factors);
        Ok(FiniteAbelianGroup { factors, canonical })
    }

    /// Canonical form of `⊕ Z_{N_i}`: prime-power factors sorted by prime
    /// ascending, then exponent descending.
    pub fn canonical(factors: &[u64]) -> Result<Self, GroupError> {
        if let Some(&bad) = factors.iter().find(|&&n| n < 2) {
            return Err(GroupError::BadFactor(bad));
        }
        let mut parts: Vec<(u64, u32)> = factors.iter().flat_map(|&n| factorize(n)).collect();
        parts.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        FiniteAbelianGroup::new(parts.into_iter().map(|(p, k)| p.pow(k)).collect())
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            factors: Vec::new(),
            canonical: true,
        }
    }

    pub fn cyclic(n: u64) -> Result<Self, GroupError> {
        FiniteAbelianGroup::new(vec![n])
    }

    /// Direct sum, factor lists concatenated in order.
    pub fn direct_sum<'a, I: IntoIterator<Item = &'a FiniteAbelianGroup>>(
        parts: I,
    ) -> Result<Self, GroupError> {
        FiniteAbelianGroup::new(parts.into_iter().flat_map(|g| g.factors.iter().copied()).collect())
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn size(&self) -> usize {
        self.order() as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |acc, &n| acc.lcm(&n))
    }

    /// Least number of cyclic summands.
    pub fn rank(&self) -> usize {
        let mut counts: std::collections::BTreeMap<u64, usize> = Default::default();
        for &n in &self.factors {
            for (p, _) in factorize(n) {
                *counts.entry(p).or_default() += 1;
            }
        }
        counts.values().copied().max().unwrap_or(0)
    }

    /// Primes dividing the order, ascending.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self
            .factors
            .iter()
            .flat_map(|&n| factorize(n).into_iter().map(|(p, _)| p))
            .collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// The prime `p` when the group is a nontrivial `p`-group.
    pub fn p_group_prime(&self) -> Option<u64> {
        match self.primes().as_slice() {
            [p] => Some(*p),
            _ => None,
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.arity()])
    }

    /// The `i`-th canonical generator (1 in factor `i`, 0 elsewhere).
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut c = vec![0; self.arity()];
        c[i] = 1;
        GroupElement(c)
    }

    fn check(&self, x: &GroupElement) -> Result<(), GroupError> {
        if x.0.len() != self.arity() {
            return Err(GroupError::ArityMismatch {
                expected: self.arity(),
                found: x.0.len(),
            });
        }
        for (i, (&c, &n)) in x.0.iter().zip(&self.factors).enumerate() {
            if c >= n {
                return Err(GroupError::CoordinateOutOfRange {
                    position: i,
                    value: c,
                    modulus: n,
                });
            }
        }
        Ok(())
    }

    /// Validates coordinates without reducing them.
    pub fn element(&self, coords: Vec<u64>) -> Result<GroupElement, GroupError> {
        let x = GroupElement(coords);
        self.check(&x)?;
        Ok(x)
    }

    /// Element from arbitrary integer coordinates, reduced modulo each factor.
    pub fn reduce(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.arity() {
            return Err(GroupError::ArityMismatch {
                expected: self.arity(),
                found: coords.len(),
            });
        }
        Ok(GroupElement(
            coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
                .collect(),
        ))
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(x)?;
        self.check(y)?;
        Ok(GroupElement(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.factors)
                .map(|((&a, &b), &n)| (a + b) % n)
                .collect(),
        ))
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(x)?;
        Ok(GroupElement(
            x.0.iter()
                .zip(&self.factors)
                .map(|(&a, &n)| (n - a) % n)
                .collect(),
        ))
    }

    /// `k · x` for any integer `k`.
    pub fn scale(&self, x: &GroupElement, k: i64) -> Result<GroupElement, GroupError> {
        self.check(x)?;
        Ok(GroupElement(
            x.0.iter()
                .zip(&self.factors)
                .map(|(&a, &n)| {
                    let k = k.rem_euclid(n as i64) as u128;
                    ((a as u128 * k) % n as u128) as u64
                })
                .collect(),
        ))
    }

    /// Least `n ≥ 1` with `n·x = 0`.
    pub fn order_of(&self, x: &GroupElement) -> Result<u64, GroupError> {
        self.check(x)?;
        Ok(x.0
            .iter()
            .zip(&self.factors)
            .fold(1, |acc, (&a, &n)| acc.lcm(&(n / a.gcd(&n)))))
    }

    pub fn index_of(&self, x: &GroupElement) -> usize {
        let mut idx = 0usize;
        for (&c, &n) in x.0.iter().zip(&self.factors) {
            idx = idx * n as usize + c as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut c = vec![0u64; self.arity()];
        for (slot, &n) in c.iter_mut().zip(&self.factors).rev() {
            *slot = (idx % n as usize) as u64;
            idx /= n as usize;
        }
        GroupElement(c)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size()).map(move |i| self.element_at(i))
    }

    /// Index of `x + y` given indices of `x` and `y`.
    pub(crate) fn add_index(&self, x: usize, y: usize) -> usize {
        let (mut x, mut y) = (x, y);
        let mut out = 0usize;
        let mut stride = 1usize;
        for &n in self.factors.iter().rev() {
            let n = n as usize;
            let s = (x % n + y % n) % n;
            out += s * stride;
            stride *= n;
            x /= n;
            y /= n;
        }
        out
    }

    /// Permutation `x ↦ x + a` on element indices.
    pub(crate) fn translation(&self, a: usize) -> Vec<usize> {
        (0..self.size()).map(|x| self.add_index(x, a)).collect()
    }

    /// Isomorphism onto the canonical form of this group.
    pub fn canonical_map(&self) -> CanonicalMap {
        let mut picks: Vec<(u64, u32, usize)> = Vec::new();
        for (i, &n) in self.factors.iter().enumerate() {
            for (p, k) in factorize(n) {
                picks.push((p, k, i));
            }
        }
        picks.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)).then(a.2.cmp(&b.2)));
        let target = FiniteAbelianGroup::new(picks.iter().map(|&(p, k, _)| p.pow(k)).collect())
            .expect("canonical form of a valid group");
        CanonicalMap {
            target,
            picks: picks.iter().map(|&(p, k, i)| (i, p.pow(k))).collect(),
        }
    }

    /// Parses a literal factor list such as `Z4xZ2` or `Z6` without any
    /// normalization; `1` is the trivial group. Used for concrete map files.
    pub fn parse_literal(text: &str) -> Result<Self, GroupError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "1" {
            return Ok(FiniteAbelianGroup::trivial());
        }
        let mut factors = Vec::new();
        for term in compact.split('x') {
            let bad = || GroupError::Literal(text.to_string());
            let body = term.strip_prefix('Z').ok_or_else(bad)?;
            let (n, mult) = match body.split_once('*') {
                Some((n, m)) => (n, m.parse::<u64>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let n: u64 = n.parse().map_err(|_| bad())?;
            if n < 2 || mult < 1 {
                return Err(bad());
            }
            factors.extend(std::iter::repeat(n).take(mult as usize));
        }
        FiniteAbelianGroup::new(factors)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, n) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "Z{n}")?;
        }
        Ok(())
    }
}

/// Coordinate map from a group to its canonical form. Canonical coordinate
/// `k` is source coordinate `picks[k].0` reduced modulo `picks[k].1`.
#[derive(Clone, Debug)]
pub struct CanonicalMap {
    pub target: FiniteAbelianGroup,
    picks: Vec<(usize, u64)>,
}

impl CanonicalMap {
    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        GroupElement(self.picks.iter().map(|&(i, q)| x.0[i] % q).collect())
    }
}
