//! Concrete finite abelian groups and symbolic group descriptors.

pub mod arith;
mod descriptor;
mod finite;
mod spec;

pub use descriptor::{hom_is_trivial, GroupDescriptor, Multiplicity, PrimaryPart, StructureStats};
pub use finite::{CanonicalMap, FiniteAbelianGroup, GroupElement, MAX_CONCRETE_ORDER};
pub use spec::{parse_group_spec, SpecError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("cyclic order {0} is invalid (each order must be at least 2)")]
    BadFactor(u64),
    #[error("group is too large for concrete computation")]
    TooLarge,
    #[error("element has {found} coordinates, group has {expected} factors")]
    ArityMismatch { expected: usize, found: usize },
    #[error("coordinate {position} is {value}, not reduced modulo {modulus}")]
    CoordinateOutOfRange {
        position: usize,
        value: u64,
        modulus: u64,
    },
    #[error("group {0} is not finite")]
    NotFinite(String),
    #[error("not a literal factor list: {0:?}")]
    Literal(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
}

/// Parses a spec and converts it to a concrete canonical group.
pub fn parse_finite_group(text: &str) -> Result<FiniteAbelianGroup, GroupError> {
    parse_group_spec(text)?.to_finite_group()
}
