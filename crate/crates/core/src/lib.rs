//! Functional degrees of maps between abelian groups, nilpotency of
//! augmentation ideals in group rings, and the closed forms tying them
//! together.
//!
//! A map `f: A → B` has degree `≤ n` when every `(n+1)`-fold difference
//! `Δ_{a_1}⋯Δ_{a_{n+1}} f` vanishes, where `(Δ_a f)(x) = f(x+a) − f(x)`.
//!
//! ```
//! use fdeg::funcmap::{fdeg, make_delta};
//! use fdeg::groups::{FiniteAbelianGroup, GroupElement};
//! use fdeg::ExtNat;
//!
//! let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
//! let z2 = FiniteAbelianGroup::cyclic(2).unwrap();
//! let d = make_delta(&z4, &z2, &GroupElement(vec![0]), &GroupElement(vec![1])).unwrap();
//! assert_eq!(fdeg(&d), ExtNat::Finite(3));
//! ```

pub mod cli;
pub mod ext_nat;
pub mod formulas;
pub mod funcmap;
pub mod group_ring;
pub mod groups;
pub mod verify;

pub use ext_nat::ExtNat;
