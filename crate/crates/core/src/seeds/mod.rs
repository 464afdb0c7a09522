//! Verified seed objects: Golay pairs and base sequences, from bundled data
//! or from exhaustive search.

mod registry;
pub mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complementarity::{is_gca_set, is_gca_set_padded};
use crate::error::{Error, Result};
use crate::formats::TensorDoc;
use crate::ring::{Alphabet, Shape, Tensor};

pub use registry::{LoadReport, Rejected, SeedRegistry, BUNDLED_SEEDS};
pub use search::{SearchOutcome, SearchProblem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedKind {
    GolayPair,
    BaseSequences,
}

impl SeedKind {
    pub fn name(self) -> &'static str {
        match self {
            SeedKind::GolayPair => "golay-pair",
            SeedKind::BaseSequences => "base-sequences",
        }
    }
}

/// Registry key. Pairs are keyed by shape, base sequences by `m`.
///
/// Text form: `golay-pair/<alphabet>/<shape>` or `base-sequences/<alphabet>/<m>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeedKey {
    pub kind: SeedKind,
    pub alphabet: Alphabet,
    pub size: String,
}

impl SeedKey {
    pub fn pair(alphabet: Alphabet, shape: &Shape) -> Self {
        SeedKey {
            kind: SeedKind::GolayPair,
            alphabet,
            size: shape.to_string(),
        }
    }

    pub fn base_sequences(m: usize) -> Self {
        SeedKey {
            kind: SeedKind::BaseSequences,
            alphabet: Alphabet::Binary,
            size: m.to_string(),
        }
    }
}

impl fmt::Display for SeedKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.kind.name(), self.alphabet, self.size)
    }
}

impl FromStr for SeedKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('/').collect();
        let [kind, alphabet, size] = parts[..] else {
            return Err(Error::Parse(format!("malformed seed key {s:?}")));
        };
        let kind = match kind {
            "golay-pair" => SeedKind::GolayPair,
            "base-sequences" => SeedKind::BaseSequences,
            other => return Err(Error::Parse(format!("unknown seed kind {other:?}"))),
        };
        let alphabet: Alphabet = alphabet.parse()?;
        match kind {
            SeedKind::GolayPair => {
                Shape::parse(size)?;
            }
            SeedKind::BaseSequences => {
                size.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad base-sequence order {size:?}")))?;
            }
        }
        Ok(SeedKey {
            kind,
            alphabet,
            size: size.to_string(),
        })
    }
}

/// A seed object whose defining property has been checked by the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedRecord {
    kind: SeedKind,
    alphabet: Alphabet,
    tensors: Vec<Tensor>,
    provenance: String,
}

impl SeedRecord {
    /// Verifies and wraps a seed. Pairs must be complementary with equal
    /// shapes; base sequences must be four binary sequences of lengths
    /// `m+1, m+1, m, m` whose autocorrelations sum to `(4m+2)·δ`.
    pub fn new(kind: SeedKind, alphabet: Alphabet, tensors: Vec<Tensor>, provenance: impl Into<String>) -> Result<Self> {
        for t in &tensors {
            alphabet.check(t)?;
        }
        match kind {
            SeedKind::GolayPair => {
                if tensors.len() != 2 {
                    return Err(Error::VerificationFailed(format!("a pair needs 2 arrays, got {}", tensors.len())));
                }
                if !tensors.iter().all(Tensor::is_polyphase) {
                    return Err(Error::VerificationFailed("pair seeds must be polyphase".into()));
                }
                if !is_gca_set(&tensors)?.is_complementary {
                    return Err(Error::VerificationFailed("pair is not complementary".into()));
                }
            }
            SeedKind::BaseSequences => {
                let lens: Vec<usize> = tensors.iter().map(Tensor::len).collect();
                let ok_shape = tensors.len() == 4
                    && tensors.iter().all(|t| t.rank() == 1)
                    && lens[0] == lens[1]
                    && lens[2] == lens[3]
                    && lens[0] == lens[2] + 1
                    && lens[2] >= 1;
                if !ok_shape {
                    return Err(Error::VerificationFailed(format!(
                        "base sequences need lengths m+1, m+1, m, m; got {lens:?}"
                    )));
                }
                if alphabet != Alphabet::Binary {
                    return Err(Error::VerificationFailed("base sequences must be binary".into()));
                }
                let verdict = is_gca_set_padded(&tensors)?;
                if !verdict.is_complementary || verdict.total_weight != 4 * lens[2] as i64 + 2 {
                    return Err(Error::VerificationFailed("autocorrelations do not sum to (4m+2)·δ".into()));
                }
            }
        }
        Ok(SeedRecord {
            kind,
            alphabet,
            tensors,
            provenance: provenance.into(),
        })
    }

    pub fn kind(&self) -> SeedKind {
        self.kind
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn tensors(&self) -> &[Tensor] {
        &self.tensors
    }

    pub fn shapes(&self) -> Vec<Shape> {
        self.tensors.iter().map(|t| t.shape().clone()).collect()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn key(&self) -> SeedKey {
        match self.kind {
            SeedKind::GolayPair => SeedKey::pair(self.alphabet, self.tensors[0].shape()),
            SeedKind::BaseSequences => SeedKey::base_sequences(self.tensors[2].len()),
        }
    }

    pub fn to_doc(&self) -> SeedDoc {
        SeedDoc {
            kind: self.kind,
            alphabet: self.alphabet,
            tensors: self.tensors.iter().map(TensorDoc::from_tensor).collect(),
            provenance: self.provenance.clone(),
        }
    }
}

/// One record of the `gca-seeds/1` file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedDoc {
    pub kind: SeedKind,
    pub alphabet: Alphabet,
    pub tensors: Vec<TensorDoc>,
    #[serde(default)]
    pub provenance: String,
}

impl SeedDoc {
    pub fn to_record(&self) -> Result<SeedRecord> {
        let tensors = self.tensors.iter().map(TensorDoc::to_tensor).collect::<Result<Vec<_>>>()?;
        SeedRecord::new(self.kind, self.alphabet, tensors, self.provenance.clone())
    }
}

/// Outcome of a seed search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeedSearch {
    Found { record: SeedRecord, nodes: u64 },
    Exhausted { nodes: u64 },
    BudgetExceeded { nodes: u64 },
}

impl SeedSearch {
    fn from_outcome(outcome: SearchOutcome, make: impl FnOnce(Vec<Tensor>, u64) -> Result<SeedRecord>) -> Result<Self> {
        Ok(match outcome {
            SearchOutcome::Found { tensors, nodes } => SeedSearch::Found {
                record: make(tensors, nodes)?,
                nodes,
            },
            SearchOutcome::Exhausted { nodes } => SeedSearch::Exhausted { nodes },
            SearchOutcome::BudgetExceeded { nodes } => SeedSearch::BudgetExceeded { nodes },
        })
    }

    pub fn nodes(&self) -> u64 {
        match self {
            SeedSearch::Found { nodes, .. } | SeedSearch::Exhausted { nodes } | SeedSearch::BudgetExceeded { nodes } => {
                *nodes
            }
        }
    }
}

/// Searches for a Golay pair of the given 1-D or 2-D shape.
///
/// An `Err` here means the searcher produced something the oracle rejected,
/// which is a bug rather than an outcome.
pub fn search_golay_pair(alphabet: Alphabet, shape: &Shape, budget: u64) -> Result<SeedSearch> {
    if !matches!(alphabet, Alphabet::Binary | Alphabet::Quaternary) {
        return Err(Error::Parse(format!("pair search supports binary or quaternary, not {alphabet}")));
    }
    let problem = SearchProblem {
        shapes: vec![shape.clone(), shape.clone()],
        alphabet,
        normalize: true,
    };
    let outcome = search::search(&problem, budget);
    SeedSearch::from_outcome(outcome, |tensors, nodes| {
        SeedRecord::new(
            SeedKind::GolayPair,
            alphabet,
            tensors,
            format!("exhaustive search, {nodes} nodes"),
        )
    })
}

/// Searches for binary base sequences BS(m+1, m).
pub fn search_base_sequences(m: usize, budget: u64) -> Result<SeedSearch> {
    if m == 0 {
        return Err(Error::InvalidShape(vec![0]));
    }
    let long = Shape::new(vec![m + 1])?;
    let short = Shape::new(vec![m])?;
    let problem = SearchProblem {
        shapes: vec![long.clone(), long, short.clone(), short],
        alphabet: Alphabet::Binary,
        normalize: true,
    };
    let outcome = search::search(&problem, budget);
    SeedSearch::from_outcome(outcome, |tensors, nodes| {
        SeedRecord::new(
            SeedKind::BaseSequences,
            Alphabet::Binary,
            tensors,
            format!("exhaustive search, {nodes} nodes"),
        )
    })
}

#[cfg(test)]
mod tests;
