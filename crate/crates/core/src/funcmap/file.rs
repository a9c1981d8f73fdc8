//! JSON map files:
//! `{"domain": "Z4", "codomain": "Z2", "values": [[1],[0],[0],[0]]}`.
//!
//! Values are dense, in the domain's enumeration order. Groups are written
//! as literal factor lists, so `write(read(s)) == s` for any file this
//! module wrote.

use serde::{Deserialize, Serialize};

use super::{FuncError, FuncTable};
use crate::groups::{FiniteAbelianGroup, GroupElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub domain: String,
    pub codomain: String,
    pub values: Vec<GroupElement>,
}

impl MapFile {
    pub fn from_table(f: &FuncTable) -> Self {
        MapFile {
            domain: f.domain().to_string(),
            codomain: f.codomain().to_string(),
            values: f.values(),
        }
    }

    pub fn to_table(&self) -> Result<FuncTable, FuncError> {
        let domain = FiniteAbelianGroup::parse_literal(&self.domain)?;
        let codomain = FiniteAbelianGroup::parse_literal(&self.codomain)?;
        FuncTable::from_values(&domain, &codomain, &self.values)
    }
}

impl FuncTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&MapFile::from_table(self)).expect("map files always serialize")
    }

    pub fn from_json(text: &str) -> Result<FuncTable, FuncError> {
        let file: MapFile = serde_json::from_str(text).map_err(|e| FuncError::Malformed(e.to_string()))?;
        file.to_table()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcmap::make_delta;

    #[test]
    fn exact_text() {
        let z4 = FiniteAbelianGroup::new(vec![4]).unwrap();
        let z2 = FiniteAbelianGroup::new(vec![2]).unwrap();
        let d = make_delta(&z4, &z2, &GroupElement(vec![0]), &GroupElement(vec![1])).unwrap();
        let s = d.to_json();
        assert_eq!(s, r#"{"domain":"Z4","codomain":"Z2","values":[[1],[0],[0],[0]]}"#);
        let back = FuncTable::from_json(&s).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(FuncTable::from_json(r#"{"domain":"Z2","codomain":"Z2","values":[[1]]}"#).is_err());
        assert!(FuncTable::from_json(r#"{"domain":"Z2","codomain":"Z2","values":[[1],[2]]}"#).is_err());
        assert!(FuncTable::from_json(r#"{"domain":"Z","codomain":"Z2","values":[]}"#).is_err());
        assert!(FuncTable::from_json("not json").is_err());
    }

    #[test]
    fn trivial_codomain() {
        let z2 = FiniteAbelianGroup::new(vec![2]).unwrap();
        let f = FuncTable::zero(&z2, &FiniteAbelianGroup::trivial());
        let s = f.to_json();
        assert_eq!(s, r#"{"domain":"Z2","codomain":"1","values":[[],[]]}"#);
        assert_eq!(FuncTable::from_json(&s).unwrap(), f);
    }
}
