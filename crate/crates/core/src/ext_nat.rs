//! The extended naturals `{-inf} ∪ ℕ ∪ {inf}`, codomain of every degree
//! computation in this crate.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A value in `{-inf} ∪ ℕ ∪ {inf}` with `-inf < 0 < 1 < … < inf`.
///
/// The derived ordering relies on the variant order below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    NegInfinity,
    Finite(u64),
    Infinity,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Finite(n) => Some(n),
            _ => None,
        }
    }

    /// Supremum of a finite collection; the empty supremum is `-inf`.
    pub fn sup<I: IntoIterator<Item = ExtNat>>(items: I) -> ExtNat {
        items.into_iter().fold(ExtNat::NegInfinity, ExtNat::max)
    }

    /// `self + 1`, with the infinities absorbing.
    pub fn succ(self) -> ExtNat {
        match self {
            ExtNat::Finite(n) => ExtNat::Finite(n + 1),
            other => other,
        }
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        ExtNat::Finite(n)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::NegInfinity => f.write_str("-inf"),
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not an extended natural: {0:?}")]
pub struct ParseExtNatError(pub String);

impl FromStr for ExtNat {
    type Err = ParseExtNatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-inf" => Ok(ExtNat::NegInfinity),
            "inf" => Ok(ExtNat::Infinity),
            t => t
                .parse::<u64>()
                .map(ExtNat::Finite)
                .map_err(|_| ParseExtNatError(s.to_string())),
        }
    }
}

// Finite values are JSON numbers, the infinities are the strings "inf" / "-inf".
impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtNat::Finite(n) => serializer.serialize_u64(*n),
            ExtNat::NegInfinity => serializer.serialize_str("-inf"),
            ExtNat::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExtNatVisitor;

        impl Visitor<'_> for ExtNatVisitor {
            type Value = ExtNat;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-negative integer, \"inf\" or \"-inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtNat, E> {
                Ok(ExtNat::Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtNat, E> {
                u64::try_from(v)
                    .map(ExtNat::Finite)
                    .map_err(|_| E::custom(format!("negative degree {v}")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtNat, E> {
                match v {
                    "inf" => Ok(ExtNat::Infinity),
                    "-inf" => Ok(ExtNat::NegInfinity),
                    _ => Err(E::custom(format!("unknown degree token {v:?}"))),
                }
            }
        }

        deserializer.deserialize_any(ExtNatVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering() {
        assert!(ExtNat::NegInfinity < ExtNat::Finite(0));
        assert!(ExtNat::Finite(0) < ExtNat::Finite(1));
        assert!(ExtNat::Finite(u64::MAX) < ExtNat::Infinity);
        assert_eq!(ExtNat::sup([]), ExtNat::NegInfinity);
        assert_eq!(
            ExtNat::sup([ExtNat::Finite(3), ExtNat::NegInfinity, ExtNat::Finite(1)]),
            ExtNat::Finite(3)
        );
    }

    #[test]
    fn json_spelling() {
        let v = vec![ExtNat::NegInfinity, ExtNat::Finite(7), ExtNat::Infinity];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["-inf",7,"inf"]"#);
        let back: Vec<ExtNat> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<ExtNat>("-3").is_err());
    }

    #[test]
    fn parse_display() {
        for v in [ExtNat::NegInfinity, ExtNat::ZERO, ExtNat::Finite(12), ExtNat::Infinity] {
            assert_eq!(v.to_string().parse::<ExtNat>().unwrap(), v);
        }
    }
}
