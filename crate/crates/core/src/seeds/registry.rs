use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use super::{SeedDoc, SeedKey, SeedKind, SeedRecord};
use crate::error::{Error, Result};
use crate::ring::{Alphabet, GaussInt, Shape, Tensor};

/// The seed table shipped with the crate.
pub const BUNDLED_SEEDS: &str = include_str!("../../data/seeds.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejected {
    pub index: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LoadReport {
    pub loaded: usize,
    pub rejected: Vec<Rejected>,
}

/// Read-only store of verified seeds. Records can only enter through
/// [`SeedRecord::new`], so every served record has passed the oracle.
#[derive(Clone, Debug, Default)]
pub struct SeedRegistry {
    records: BTreeMap<SeedKey, SeedRecord>,
}

impl SeedRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Registry over the bundled table. Panics if the bundled table has rejects.
    pub fn bundled() -> Self {
        let (reg, report) = Self::from_json(BUNDLED_SEEDS).expect("bundled seed table parses");
        assert!(report.rejected.is_empty(), "bundled seed table has rejects: {:?}", report.rejected);
        reg
    }

    pub fn load(path: impl AsRef<Path>) -> Result<(Self, LoadReport)> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Parses a `gca-seeds/1` list. A blank file yields an empty registry.
    /// Records that fail to decode or verify are skipped and reported.
    pub fn from_json(text: &str) -> Result<(Self, LoadReport)> {
        let mut reg = SeedRegistry::empty();
        let mut report = LoadReport::default();
        if text.trim().is_empty() {
            return Ok((reg, report));
        }
        let items = match serde_json::from_str::<Value>(text)? {
            Value::Array(items) => items,
            Value::Object(mut obj) => match obj.remove("records") {
                Some(Value::Array(items)) => items,
                _ => return Err(Error::Parse("seed file object lacks a \"records\" list".into())),
            },
            _ => return Err(Error::Parse("seed file must be a JSON list of records".into())),
        };
        for (index, item) in items.into_iter().enumerate() {
            let record = serde_json::from_value::<SeedDoc>(item)
                .map_err(Error::from)
                .and_then(|doc| doc.to_record());
            match record {
                Ok(r) => {
                    reg.insert(r);
                    report.loaded += 1;
                }
                Err(e) => report.rejected.push(Rejected {
                    index,
                    reason: e.to_string(),
                }),
            }
        }
        Ok((reg, report))
    }

    /// Adds (or replaces) a verified record.
    pub fn insert(&mut self, record: SeedRecord) {
        self.records.insert(record.key(), record);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> impl Iterator<Item = &SeedRecord> {
        self.records.values()
    }

    /// Looks up a key. The length-1 pair `{[1],[1]}` is always available.
    pub fn get(&self, key: &SeedKey) -> Option<SeedRecord> {
        if let Some(r) = self.records.get(key) {
            return Some(r.clone());
        }
        if key.kind == SeedKind::GolayPair {
            // A binary pair is also a valid pair in any wider alphabet.
            if key.alphabet != Alphabet::Binary {
                let narrower = SeedKey {
                    alphabet: Alphabet::Binary,
                    ..key.clone()
                };
                if let Some(r) = self.records.get(&narrower) {
                    return Some(r.clone());
                }
            }
            if key.size == "1" {
                return Some(trivial_pair());
            }
        }
        None
    }

    pub fn get_golay_pair(&self, alphabet: Alphabet, length: usize) -> Result<SeedRecord> {
        let shape = Shape::new(vec![length]).map_err(|_| Error::NotFound(format!("pair of length {length}")))?;
        let key = SeedKey::pair(alphabet, &shape);
        self.get(&key).ok_or_else(|| Error::NotFound(key.to_string()))
    }

    pub fn get_base_sequences(&self, m: usize) -> Result<SeedRecord> {
        let key = SeedKey::base_sequences(m);
        self.get(&key).ok_or_else(|| Error::NotFound(key.to_string()))
    }

    /// Serializes as a JSON list with one record per line.
    pub fn to_json(&self) -> String {
        let lines: Vec<String> = self
            .records
            .values()
            .map(|r| serde_json::to_string(&r.to_doc()).expect("documents always serialize"))
            .collect();
        if lines.is_empty() {
            return "[]\n".to_string();
        }
        format!("[\n{}\n]\n", lines.join(",\n"))
    }
}

fn trivial_pair() -> SeedRecord {
    let one = Tensor::from_vec(vec![GaussInt::ONE]);
    SeedRecord::new(SeedKind::GolayPair, Alphabet::Binary, vec![one.clone(), one], "built in")
        .expect("the length-1 pair is complementary")
}
