//! JSON document formats: `gca-tensor/1` and `gca-set/1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Alphabet, GaussInt, Shape, StructureFlags, Tensor};

pub const TENSOR_FORMAT: &str = "gca-tensor/1";
pub const SET_FORMAT: &str = "gca-set/1";
pub const ROW_MAJOR: &str = "row-major-last-fastest";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDoc {
    pub format: String,
    pub shape: Vec<usize>,
    pub order: String,
    pub entries: Vec<GaussInt>,
    pub alphabet: Alphabet,
}

impl TensorDoc {
    pub fn from_tensor(t: &Tensor) -> Self {
        TensorDoc {
            format: TENSOR_FORMAT.to_string(),
            shape: t.dims().to_vec(),
            order: ROW_MAJOR.to_string(),
            entries: t.entries().to_vec(),
            alphabet: Alphabet::classify(t),
        }
    }

    /// Validates format tag, order, entry count and the alphabet claim.
    pub fn to_tensor(&self) -> Result<Tensor> {
        if self.format != TENSOR_FORMAT {
            return Err(Error::Parse(format!("expected format {TENSOR_FORMAT}, got {:?}", self.format)));
        }
        if self.order != ROW_MAJOR {
            return Err(Error::Parse(format!("unsupported entry order {:?}", self.order)));
        }
        let t = Tensor::new(Shape::new(self.shape.clone())?, self.entries.clone())?;
        self.alphabet.check(&t)?;
        Ok(t)
    }
}

/// Role of a set: pair, quad, or any other cardinality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Pair,
    Quad,
    SetN,
}

impl Role {
    pub fn for_len(n: usize) -> Role {
        match n {
            2 => Role::Pair,
            4 => Role::Quad,
            _ => Role::SetN,
        }
    }
}

impl std::str::FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pair" => Ok(Role::Pair),
            "quad" => Ok(Role::Quad),
            "set-n" => Ok(Role::SetN),
            other => Err(Error::Parse(format!("unknown role {other:?}"))),
        }
    }
}

/// Structure relations recorded for a set. Keys are `"i~j"` member pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDoc {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub disjoint: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conjoint: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quasi_symmetric: Vec<usize>,
}

impl StructureDoc {
    pub fn is_empty(&self) -> bool {
        self.disjoint.is_empty() && self.conjoint.is_empty() && self.quasi_symmetric.is_empty()
    }

    /// Confirms every recorded relation against the tensors.
    pub fn check(&self, arrays: &[Tensor]) -> Result<()> {
        let member = |i: usize| {
            arrays
                .get(i)
                .ok_or_else(|| Error::StructureFailed(format!("member {i} out of range")))
        };
        for &[i, j] in &self.disjoint {
            let f: StructureFlags = member(i)?.structure(member(j)?)?;
            if !f.disjoint {
                return Err(Error::StructureFailed(format!("members {i} and {j} are not disjoint")));
            }
        }
        for &[i, j] in &self.conjoint {
            if !member(i)?.structure(member(j)?)?.conjoint {
                return Err(Error::StructureFailed(format!("members {i} and {j} are not conjoint")));
            }
        }
        for &i in &self.quasi_symmetric {
            if !member(i)?.quasi_symmetric() {
                return Err(Error::StructureFailed(format!("member {i} is not quasi-symmetric")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetDoc {
    pub format: String,
    pub role: Role,
    pub alphabet: Alphabet,
    pub arrays: Vec<TensorDoc>,
    #[serde(default)]
    pub lineage: String,
    #[serde(default, skip_serializing_if = "StructureDoc::is_empty")]
    pub structure: StructureDoc,
}

impl SetDoc {
    pub fn parse(text: &str) -> Result<SetDoc> {
        let doc: SetDoc = serde_json::from_str(text)?;
        if doc.format != SET_FORMAT {
            return Err(Error::Parse(format!("expected format {SET_FORMAT}, got {:?}", doc.format)));
        }
        if doc.arrays.is_empty() {
            return Err(Error::Parse("set has no arrays".into()));
        }
        Ok(doc)
    }

    pub fn tensors(&self) -> Result<Vec<Tensor>> {
        let ts = self.arrays.iter().map(TensorDoc::to_tensor).collect::<Result<Vec<_>>>()?;
        for t in &ts {
            self.alphabet.check(t)?;
        }
        Ok(ts)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

pub fn tensor_to_json(t: &Tensor) -> String {
    serde_json::to_string(&TensorDoc::from_tensor(t)).expect("documents always serialize")
}

pub fn tensor_from_json(text: &str) -> Result<Tensor> {
    serde_json::from_str::<TensorDoc>(text)?.to_tensor()
}
