use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::golay::enumerate_golay_numbers;
use super::pairs::assign_dim;
use crate::error::{Error, Result};
use crate::ring::Alphabet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverageKind {
    QuadSumCoverage,
    GolayCount,
}

impl FromStr for CoverageKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quad-sum-coverage" => Ok(CoverageKind::QuadSumCoverage),
            "golay-count" => Ok(CoverageKind::GolayCount),
            other => Err(Error::Parse(format!("unknown coverage kind {other:?}"))),
        }
    }
}

/// A sum `s2 + s3` with a shared `s1` that makes both `s1×s2` and `s1×s3`
/// feasible quaternary pairs. `s3 = 0` means `s1×s2` alone is a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SumWitness {
    pub s1: u64,
    pub s2: u64,
    pub s3: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CoverageReport {
    QuadSumCoverage {
        limit: u64,
        covered: usize,
        uncovered: Vec<u64>,
    },
    GolayCount {
        alphabet: Alphabet,
        limit: u64,
        count: usize,
        numbers: Vec<u64>,
    },
}

/// Runs a scan. `alphabet` matters only for `golay-count`.
pub fn coverage_scan(kind: CoverageKind, alphabet: Alphabet, limit: u64) -> CoverageReport {
    match kind {
        CoverageKind::GolayCount => {
            let numbers = enumerate_golay_numbers(alphabet, limit);
            CoverageReport::GolayCount {
                alphabet,
                limit,
                count: numbers.len(),
                numbers,
            }
        }
        CoverageKind::QuadSumCoverage => {
            let table = DeficitTable::new(limit);
            let verdicts: Vec<bool> = (1..=limit).into_par_iter().map(|n| table.witness(n).is_some()).collect();
            let uncovered: Vec<u64> = (1..=limit).zip(&verdicts).filter(|(_, &c)| !c).map(|(n, _)| n).collect();
            CoverageReport::QuadSumCoverage {
                limit,
                covered: verdicts.len() - uncovered.len(),
                uncovered,
            }
        }
    }
}

/// For each extent s, how many binders a shared dimension must contribute
/// before `s1×s` becomes feasible; `None` when no s1 helps.
struct DeficitTable {
    deficit: Vec<Option<u32>>,
}

impl DeficitTable {
    fn new(limit: u64) -> Self {
        let deficit = (0..=limit)
            .map(|s| {
                if s == 0 {
                    return None;
                }
                let a = assign_dim(Alphabet::Quaternary, 1, s)?;
                Some((a.seeds.len() as u32).saturating_sub(a.binders.len() as u32 + 1))
            })
            .collect();
        DeficitTable { deficit }
    }

    /// A power of two is the cheapest shared s1: it adds binders and no
    /// quaternary seeds.
    fn witness(&self, n: u64) -> Option<SumWitness> {
        let d = |s: u64| self.deficit[s as usize];
        if let Some(k) = d(n) {
            return Some(SumWitness { s1: 1 << k, s2: n, s3: 0 });
        }
        (1..=n / 2).find_map(|s2| {
            let k = d(s2)?.max(d(n - s2)?);
            Some(SumWitness { s1: 1 << k, s2, s3: n - s2 })
        })
    }
}

/// The first sum decomposition of n found by the coverage scan.
pub fn quad_sum_witness(n: u64) -> Option<SumWitness> {
    DeficitTable::new(n).witness(n)
}
