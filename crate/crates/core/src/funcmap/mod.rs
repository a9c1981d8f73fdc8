//! Dense function tables `f: A → B` between finite abelian groups, the
//! difference operators acting on them, and the functional degree.

mod degree;
mod file;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::groups::{FiniteAbelianGroup, GroupElement, GroupError};

pub use degree::{fdeg, fdeg_bruteforce, generator_scan, ScanOutcome, DEFAULT_BRUTE_BUDGET};
pub use file::MapFile;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FuncError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("image of generator {index} has order {order}, which does not divide {factor}")]
    IllDefined { index: usize, order: u64, factor: u64 },
    #[error("brute-force work budget of {0} evaluations exceeded")]
    BudgetExceeded(u64),
    #[error("at least one component is required")]
    Empty,
    #[error("malformed map file: {0}")]
    Malformed(String),
}

/// A map `A → B` stored as one codomain coordinate tuple per domain element,
/// in the domain's enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FuncTable {
    domain: FiniteAbelianGroup,
    codomain: FiniteAbelianGroup,
    data: Vec<u64>,
}

impl FuncTable {
    pub(crate) fn from_raw(domain: FiniteAbelianGroup, codomain: FiniteAbelianGroup, data: Vec<u64>) -> Self {
        debug_assert_eq!(data.len(), domain.size() * codomain.arity());
        FuncTable {
            domain,
            codomain,
            data,
        }
    }

    pub fn from_values(
        domain: &FiniteAbelianGroup,
        codomain: &FiniteAbelianGroup,
        values: &[GroupElement],
    ) -> Result<Self, FuncError> {
        if values.len() != domain.size() {
            return Err(FuncError::ShapeMismatch(format!(
                "{} values for a domain of order {}",
                values.len(),
                domain.order()
            )));
        }
        let mut data = Vec::with_capacity(values.len() * codomain.arity());
        for v in values {
            data.extend_from_slice(codomain.element(v.0.clone())?.coords());
        }
        Ok(FuncTable::from_raw(domain.clone(), codomain.clone(), data))
    }

    pub fn from_fn<F>(domain: &FiniteAbelianGroup, codomain: &FiniteAbelianGroup, mut f: F) -> Result<Self, FuncError>
    where
        F: FnMut(&GroupElement) -> GroupElement,
    {
        let values: Vec<GroupElement> = domain.elements().map(|x| f(&x)).collect();
        FuncTable::from_values(domain, codomain, &values)
    }

    pub fn zero(domain: &FiniteAbelianGroup, codomain: &FiniteAbelianGroup) -> Self {
        FuncTable::from_raw(domain.clone(), codomain.clone(), vec![0; domain.size() * codomain.arity()])
    }

    pub fn constant(
        domain: &FiniteAbelianGroup,
        codomain: &FiniteAbelianGroup,
        b: &GroupElement,
    ) -> Result<Self, FuncError> {
        let b = codomain.element(b.0.clone())?;
        Ok(FuncTable::from_raw(
            domain.clone(),
            codomain.clone(),
            b.0.iter().copied().cycle().take(domain.size() * codomain.arity()).collect(),
        ))
    }

    /// Uniformly random table.
    pub fn random<R: Rng + ?Sized>(domain: &FiniteAbelianGroup, codomain: &FiniteAbelianGroup, rng: &mut R) -> Self {
        let data = (0..domain.size())
            .flat_map(|_| codomain.factors().iter().map(|&n| rng.gen_range(0..n)).collect::<Vec<_>>())
            .collect();
        FuncTable::from_raw(domain.clone(), codomain.clone(), data)
    }

    pub fn domain(&self) -> &FiniteAbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteAbelianGroup {
        &self.codomain
    }

    pub(crate) fn value_data(&self) -> &[u64] {
        &self.data
    }

    pub(crate) fn value_slice(&self, x: usize) -> &[u64] {
        let k = self.codomain.arity();
        &self.data[x * k..(x + 1) * k]
    }

    /// Value at the element with enumeration index `x`.
    pub fn value(&self, x: usize) -> GroupElement {
        GroupElement(self.value_slice(x).to_vec())
    }

    pub fn value_at(&self, x: &GroupElement) -> GroupElement {
        self.value(self.domain.index_of(x))
    }

    pub fn values(&self) -> Vec<GroupElement> {
        (0..self.domain.size()).map(|x| self.value(x)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn is_constant(&self) -> bool {
        let k = self.codomain.arity();
        k == 0 || self.data.chunks(k).all(|c| c == &self.data[..k])
    }

    fn same_shape(&self, other: &FuncTable) -> Result<(), FuncError> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(FuncError::ShapeMismatch(format!(
                "{} -> {} vs {} -> {}",
                self.domain, self.codomain, other.domain, other.codomain
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &FuncTable, op: impl Fn(u64, u64, u64) -> u64) -> FuncTable {
        let moduli = self.codomain.factors();
        let k = moduli.len();
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .enumerate()
            .map(|(i, (&a, &b))| op(a, b, moduli[i % k]))
            .collect();
        FuncTable::from_raw(self.domain.clone(), self.codomain.clone(), data)
    }

    pub fn add(&self, other: &FuncTable) -> Result<FuncTable, FuncError> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b, n| (a + b) % n))
    }

    pub fn sub(&self, other: &FuncTable) -> Result<FuncTable, FuncError> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b, n| (a + n - b) % n))
    }

    pub fn neg(&self) -> FuncTable {
        self.zip_with(self, |a, _, n| (n - a) % n)
    }

    /// `τ_a f : x ↦ f(x + a)`, with `a` given by index.
    pub(crate) fn shift_index(&self, a: usize) -> FuncTable {
        let perm = self.domain.translation(a);
        let k = self.codomain.arity();
        let mut data = Vec::with_capacity(self.data.len());
        for &y in &perm {
            data.extend_from_slice(&self.data[y * k..(y + 1) * k]);
        }
        FuncTable::from_raw(self.domain.clone(), self.codomain.clone(), data)
    }

    pub fn shift(&self, a: &GroupElement) -> Result<FuncTable, FuncError> {
        let a = self.domain.element(a.0.clone())?;
        Ok(self.shift_index(self.domain.index_of(&a)))
    }

    /// `Δ_a f` computed from a precomputed translation `x ↦ x + a`.
    pub(crate) fn difference_by(&self, translation: &[usize]) -> FuncTable {
        let moduli = self.codomain.factors();
        let k = moduli.len();
        let mut data = Vec::with_capacity(self.data.len());
        for (x, &y) in translation.iter().enumerate() {
            for (i, &n) in moduli.iter().enumerate() {
                let (fy, fx) = (self.data[y * k + i], self.data[x * k + i]);
                data.push((fy + n - fx) % n);
            }
        }
        FuncTable::from_raw(self.domain.clone(), self.codomain.clone(), data)
    }

    /// Isomorphic copy with domain and codomain in canonical form.
    pub fn canonicalize(&self) -> FuncTable {
        if self.domain.is_canonical() && self.codomain.is_canonical() {
            return self.clone();
        }
        let dm = self.domain.canonical_map();
        let cm = self.codomain.canonical_map();
        let k = cm.target.arity();
        let mut data = vec![0u64; dm.target.size() * k];
        for (i, x) in self.domain.elements().enumerate() {
            let j = dm.target.index_of(&dm.apply(&x));
            let v = cm.apply(&self.value(i));
            data[j * k..(j + 1) * k].copy_from_slice(v.coords());
        }
        FuncTable::from_raw(dm.target, cm.target, data)
    }

    /// `π_p ∘ f` for a canonical codomain: keeps the coordinates whose
    /// cyclic order is a power of `p`.
    pub fn project_primary(&self, p: u64) -> FuncTable {
        let keep: Vec<usize> = self
            .codomain
            .factors()
            .iter()
            .enumerate()
            .filter(|(_, &n)| n % p == 0)
            .map(|(i, _)| i)
            .collect();
        let codomain = FiniteAbelianGroup::new(keep.iter().map(|&i| self.codomain.factors()[i]).collect())
            .expect("subgroup of a valid group");
        let k = self.codomain.arity();
        let data = self
            .data
            .chunks(k.max(1))
            .take(self.domain.size())
            .flat_map(|row| keep.iter().map(move |&i| row[i]))
            .collect();
        FuncTable::from_raw(self.domain.clone(), codomain, data)
    }
}

/// `δ_{a,b}`: `b` at `a`, zero elsewhere.
pub fn make_delta(
    domain: &FiniteAbelianGroup,
    codomain: &FiniteAbelianGroup,
    a: &GroupElement,
    b: &GroupElement,
) -> Result<FuncTable, FuncError> {
    let a = domain.element(a.0.clone())?;
    let b = codomain.element(b.0.clone())?;
    let mut f = FuncTable::zero(domain, codomain);
    let k = codomain.arity();
    let i = domain.index_of(&a);
    f.data[i * k..(i + 1) * k].copy_from_slice(b.coords());
    Ok(f)
}

/// `(Δ_a f)(x) = f(x + a) − f(x)`.
pub fn difference(f: &FuncTable, a: &GroupElement) -> Result<FuncTable, FuncError> {
    let a = f.domain.element(a.0.clone())?;
    Ok(f.difference_by(&f.domain.translation(f.domain.index_of(&a))))
}

/// `Δ_a^n f` evaluated directly as `Σ_j (−1)^{n−j} C(n,j) f(x + j·a)`.
pub fn iterated_difference_binomial(f: &FuncTable, a: &GroupElement, n: u64) -> Result<FuncTable, FuncError> {
    let a = f.domain.element(a.0.clone())?;
    let e = f.codomain.exponent();
    let mut binom = BigUint::from(1u32);
    let mut weights = Vec::with_capacity(n as usize + 1);
    for j in 0..=n {
        let w = (&binom % e).to_u64().expect("reduced");
        let w = if (n - j) % 2 == 1 { (e - w) % e } else { w };
        let ja = f.domain.index_of(&f.domain.scale(&a, j as i64)?);
        weights.push((f.domain.translation(ja), w));
        binom = binom * (n - j) / (j + 1);
    }
    let moduli = f.codomain.factors();
    let k = moduli.len();
    let mut data = vec![0u64; f.data.len()];
    for x in 0..f.domain.size() {
        for (perm, w) in &weights {
            let y = perm[x];
            for i in 0..k {
                let n = moduli[i] as u128;
                let acc = data[x * k + i] as u128 + f.data[y * k + i] as u128 * *w as u128;
                data[x * k + i] = (acc % n) as u64;
            }
        }
    }
    Ok(FuncTable::from_raw(f.domain.clone(), f.codomain.clone(), data))
}

/// The homomorphism sending the `i`-th canonical generator to `images[i]`.
pub fn make_hom(
    domain: &FiniteAbelianGroup,
    codomain: &FiniteAbelianGroup,
    images: &[GroupElement],
) -> Result<FuncTable, FuncError> {
    if images.len() != domain.arity() {
        return Err(FuncError::ShapeMismatch(format!(
            "{} images for {} generators",
            images.len(),
            domain.arity()
        )));
    }
    for (i, (img, &n)) in images.iter().zip(domain.factors()).enumerate() {
        let order = codomain.order_of(img)?;
        if n % order != 0 {
            return Err(FuncError::IllDefined {
                index: i,
                order,
                factor: n,
            });
        }
    }
    FuncTable::from_fn(domain, codomain, |x| {
        let mut acc = codomain.zero();
        for (&c, img) in x.coords().iter().zip(images) {
            acc = codomain
                .add(&acc, &codomain.scale(img, c as i64).expect("validated"))
                .expect("validated");
        }
        acc
    })
}

/// `(x_1,…,x_k) ↦ (f_1(x_1),…,f_k(x_k))` on `⊕A_i → ⊕B_i`.
pub fn diagonal_join(parts: &[FuncTable]) -> Result<FuncTable, FuncError> {
    if parts.is_empty() {
        return Err(FuncError::Empty);
    }
    let domain = FiniteAbelianGroup::direct_sum(parts.iter().map(|f| &f.domain))?;
    let codomain = FiniteAbelianGroup::direct_sum(parts.iter().map(|f| &f.codomain))?;
    FuncTable::from_fn(&domain, &codomain, |x| {
        let mut out = Vec::with_capacity(codomain.arity());
        let mut at = 0;
        for f in parts {
            let r = f.domain.arity();
            let xi = GroupElement(x.coords()[at..at + r].to_vec());
            out.extend_from_slice(f.value_at(&xi).coords());
            at += r;
        }
        GroupElement(out)
    })
}

pub fn pointwise_add(f: &FuncTable, g: &FuncTable) -> Result<FuncTable, FuncError> {
    f.add(g)
}

/// `f ∘ ε` for `ε: A' → A`.
pub fn compose_pre(f: &FuncTable, eps: &FuncTable) -> Result<FuncTable, FuncError> {
    if eps.codomain != f.domain {
        return Err(FuncError::ShapeMismatch(format!(
            "cannot precompose {} -> {} with a map into {}",
            f.domain, f.codomain, eps.codomain
        )));
    }
    let k = f.codomain.arity();
    let mut data = Vec::with_capacity(eps.domain.size() * k);
    for x in 0..eps.domain.size() {
        let y = f.domain.index_of(&eps.value(x));
        data.extend_from_slice(f.value_slice(y));
    }
    Ok(FuncTable::from_raw(eps.domain.clone(), f.codomain.clone(), data))
}

/// `μ ∘ f` for `μ: B → B'`.
pub fn compose_post(mu: &FuncTable, f: &FuncTable) -> Result<FuncTable, FuncError> {
    if mu.domain != f.codomain {
        return Err(FuncError::ShapeMismatch(format!(
            "cannot postcompose a map into {} with {} -> {}",
            f.codomain, mu.domain, mu.codomain
        )));
    }
    let k = mu.codomain.arity();
    let mut data = Vec::with_capacity(f.domain.size() * k);
    for x in 0..f.domain.size() {
        let y = mu.domain.index_of(&f.value(x));
        data.extend_from_slice(mu.value_slice(y));
    }
    Ok(FuncTable::from_raw(f.domain.clone(), mu.codomain.clone(), data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext_nat::ExtNat;

    fn grp(f: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(f.to_vec()).unwrap()
    }

    fn el(c: &[u64]) -> GroupElement {
        GroupElement(c.to_vec())
    }

    #[test]
    fn delta_functions() {
        let z2 = grp(&[2]);
        let d = make_delta(&z2, &z2, &el(&[0]), &el(&[1])).unwrap();
        assert_eq!(d.values(), vec![el(&[1]), el(&[0])]);
        assert!(make_delta(&z2, &z2, &el(&[1]), &el(&[0])).unwrap().is_zero());

        let b = grp(&[4, 2]);
        let a = grp(&[3]);
        let u1 = el(&[3, 1]);
        let u2 = el(&[2, 1]);
        let lhs = make_delta(&a, &b, &el(&[0]), &u1)
            .unwrap()
            .add(&make_delta(&a, &b, &el(&[0]), &u2).unwrap())
            .unwrap();
        let rhs = make_delta(&a, &b, &el(&[0]), &b.add(&u1, &u2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn differences() {
        let z4 = grp(&[4]);
        let c = FuncTable::constant(&z4, &z4, &el(&[3])).unwrap();
        assert!(difference(&c, &el(&[1])).unwrap().is_zero());

        let id = make_hom(&z4, &z4, &[el(&[1])]).unwrap();
        let d = difference(&id, &el(&[1])).unwrap();
        assert_eq!(d, FuncTable::constant(&z4, &z4, &el(&[1])).unwrap());

        let z2 = grp(&[2]);
        let delta = make_delta(&z2, &z2, &el(&[0]), &el(&[1])).unwrap();
        assert_eq!(
            difference(&delta, &el(&[1])).unwrap(),
            FuncTable::constant(&z2, &z2, &el(&[1])).unwrap()
        );
    }

    #[test]
    fn binomial_expansion_small_cases() {
        let z4 = grp(&[4]);
        let z8 = grp(&[8]);
        let f = FuncTable::from_values(&z4, &z8, &[el(&[5]), el(&[1]), el(&[7]), el(&[2])]).unwrap();
        let a = el(&[1]);
        assert_eq!(iterated_difference_binomial(&f, &a, 0).unwrap(), f);
        assert_eq!(iterated_difference_binomial(&f, &a, 1).unwrap(), difference(&f, &a).unwrap());
        let id = make_hom(&z4, &z4, &[el(&[1])]).unwrap();
        assert!(iterated_difference_binomial(&id, &a, 2).unwrap().is_zero());
    }

    #[test]
    fn homomorphisms() {
        let z2 = grp(&[2]);
        let z4 = grp(&[4]);
        assert_eq!(make_hom(&z2, &z4, &[el(&[2])]).unwrap().values(), vec![el(&[0]), el(&[2])]);
        assert!(matches!(
            make_hom(&z2, &z4, &[el(&[1])]),
            Err(FuncError::IllDefined { order: 4, factor: 2, .. })
        ));
        let zero = make_hom(&z2, &z4, &[el(&[0])]).unwrap();
        assert!(zero.is_zero());
        assert_eq!(fdeg(&zero), ExtNat::NegInfinity);
    }

    #[test]
    fn joins() {
        let z2 = grp(&[2]);
        let z3 = grp(&[3]);
        let id2 = make_hom(&z2, &z2, &[el(&[1])]).unwrap();
        let id3 = make_hom(&z3, &z3, &[el(&[1])]).unwrap();
        let j = diagonal_join(&[id2, id3]).unwrap();
        assert_eq!(j, make_hom(&grp(&[2, 3]), &grp(&[2, 3]), &[el(&[1, 0]), el(&[0, 1])]).unwrap());

        let d2 = make_delta(&z2, &z2, &el(&[0]), &el(&[1])).unwrap();
        let d3 = make_delta(&z3, &z3, &el(&[0]), &el(&[1])).unwrap();
        assert_eq!(fdeg(&diagonal_join(&[d2.clone(), d3]).unwrap()), ExtNat::Finite(2));
        let zero3 = FuncTable::zero(&z3, &z3);
        assert_eq!(fdeg(&diagonal_join(&[d2, zero3]).unwrap()), ExtNat::Finite(1));
        assert_eq!(diagonal_join(&[]), Err(FuncError::Empty));
    }

    #[test]
    fn additive_inverse_and_composition() {
        let mut rng = rand::rngs::mock::StepRng::new(3, 7);
        let a = grp(&[4, 2]);
        let b = grp(&[8]);
        let f = FuncTable::random(&a, &b, &mut rng);
        assert_eq!(fdeg(&f.add(&f.neg()).unwrap()), ExtNat::NegInfinity);

        // restriction to the subgroup generated by (1,0)
        let sub = grp(&[4]);
        let incl = make_hom(&sub, &a, &[el(&[1, 0])]).unwrap();
        assert!(fdeg(&compose_pre(&f, &incl).unwrap()) <= fdeg(&f));

        // Z8 -> Z16, x -> 2x is injective
        let z16 = grp(&[16]);
        let mu = make_hom(&b, &z16, &[el(&[2])]).unwrap();
        assert_eq!(fdeg(&compose_post(&mu, &f).unwrap()), fdeg(&f));

        assert!(compose_pre(&f, &mu).is_err());
        assert!(compose_post(&incl, &f).is_err());
    }

    #[test]
    fn shift_sign_convention() {
        // τ_a δ_{0,b} = δ_{-a,b} under (τ_a f)(x) = f(x+a).
        let z4 = grp(&[4]);
        let d = make_delta(&z4, &z4, &el(&[0]), &el(&[1])).unwrap();
        let shifted = d.shift(&el(&[1])).unwrap();
        assert_eq!(shifted, make_delta(&z4, &z4, &el(&[3]), &el(&[1])).unwrap());
    }

    #[test]
    fn canonicalize_keeps_degree() {
        let z6 = grp(&[6]);
        let f = make_hom(&z6, &z6, &[el(&[1])]).unwrap();
        let c = f.canonicalize();
        assert_eq!(c.domain().factors(), &[2, 3]);
        assert_eq!(fdeg(&c), ExtNat::Finite(1));
        assert_eq!(fdeg(&f), ExtNat::Finite(1));
    }
}
