//! On-disk formats: the algebra document and the free-algebra sidecar.
//!
//! An algebra file is a single JSON document
//! `{"size": m, "top": t, "imp": [[…]], "join": [[…]]}` with row-major
//! tables. Serialization is canonical (pretty-printed, fixed field
//! order, trailing newline), so save → load → save is byte-identical.

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::error::{CoreError, Result};
use crate::free::FreeAlgebra;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDoc {
    pub size: usize,
    pub top: usize,
    pub imp: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
}

impl AlgebraDoc {
    pub fn from_algebra(a: &FiniteAlgebra) -> AlgebraDoc {
        let m = a.size();
        AlgebraDoc {
            size: m,
            top: a.top(),
            imp: (0..m)
                .map(|x| (0..m).map(|y| a.imp(x, y)).collect())
                .collect(),
            join: (0..m)
                .map(|x| (0..m).map(|y| a.join(x, y)).collect())
                .collect(),
        }
    }

    pub fn to_algebra(&self) -> Result<FiniteAlgebra> {
        if self.imp.len() != self.size {
            return Err(CoreError::MalformedTable(format!(
                "declared size {} but imp has {} rows",
                self.size,
                self.imp.len()
            )));
        }
        FiniteAlgebra::from_tables(self.top, &self.imp, &self.join)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json_str(s: &str) -> Result<AlgebraDoc> {
        serde_json::from_str(s).map_err(|e| CoreError::MalformedTable(e.to_string()))
    }
}

/// Sidecar header written next to an exported free algebra.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FreeMeta {
    pub n: usize,
    pub r: usize,
    pub generators: Vec<Vec<u8>>,
}

impl FreeMeta {
    pub fn from_free(f: &FreeAlgebra) -> FreeMeta {
        FreeMeta {
            n: f.n(),
            r: f.r(),
            generators: f
                .generators()
                .iter()
                .map(|&g| f.element_tuple(g).to_vec())
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("sidecar serializes");
        s.push('\n');
        s
    }

    pub fn from_json_str(s: &str) -> Result<FreeMeta> {
        serde_json::from_str(s).map_err(|e| CoreError::MalformedTable(e.to_string()))
    }
}
