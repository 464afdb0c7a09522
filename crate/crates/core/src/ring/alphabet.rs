use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{GaussInt, Tensor};
use crate::error::{Error, Result};

/// Entry alphabets, ordered from most to least restrictive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Alphabet {
    #[serde(rename = "binary")]
    Binary,
    #[serde(rename = "quaternary")]
    Quaternary,
    #[serde(rename = "polyphase4-with-zeros")]
    Polyphase4WithZeros,
    #[serde(rename = "general", alias = "general-gaussian")]
    General,
}

impl Alphabet {
    pub fn contains(self, g: GaussInt) -> bool {
        match self {
            Alphabet::Binary => g.im == 0 && g.re.abs() == 1,
            Alphabet::Quaternary => g.is_unit(),
            Alphabet::Polyphase4WithZeros => g.norm() <= 1,
            Alphabet::General => true,
        }
    }

    /// Smallest alphabet containing every entry of `tensor`.
    pub fn classify(tensor: &Tensor) -> Alphabet {
        Self::classify_all(std::slice::from_ref(tensor))
    }

    pub fn classify_all(tensors: &[Tensor]) -> Alphabet {
        [Alphabet::Binary, Alphabet::Quaternary, Alphabet::Polyphase4WithZeros]
            .into_iter()
            .find(|a| tensors.iter().all(|t| t.entries().iter().all(|&g| a.contains(g))))
            .unwrap_or(Alphabet::General)
    }

    pub fn check(self, tensor: &Tensor) -> Result<()> {
        if tensor.entries().iter().all(|&g| self.contains(g)) {
            Ok(())
        } else {
            Err(Error::AlphabetViolation {
                alphabet: self.name().to_string(),
            })
        }
    }

    /// Entry values a search may assign, in tie-break order.
    pub fn search_values(self) -> &'static [GaussInt] {
        match self {
            Alphabet::Binary => &GaussInt::UNITS[..2],
            _ => &GaussInt::UNITS,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Alphabet::Binary => "binary",
            Alphabet::Quaternary => "quaternary",
            Alphabet::Polyphase4WithZeros => "polyphase4-with-zeros",
            Alphabet::General => "general",
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binary" => Ok(Alphabet::Binary),
            "quaternary" => Ok(Alphabet::Quaternary),
            "polyphase4-with-zeros" => Ok(Alphabet::Polyphase4WithZeros),
            "general" | "general-gaussian" => Ok(Alphabet::General),
            other => Err(Error::Parse(format!("unknown alphabet {other:?}"))),
        }
    }
}
