use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Array extents `(s₁, …, s_r)`; rank at least 1 and every extent at least 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Shape(Vec<usize>);

impl Shape {
    pub fn new(dims: impl Into<Vec<usize>>) -> Result<Self> {
        let dims = dims.into();
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(Error::InvalidShape(dims));
        }
        Ok(Shape(dims))
    }

    /// Rank-`rank` shape of all ones.
    pub fn unit(rank: usize) -> Self {
        Shape(vec![1; rank.max(1)])
    }

    /// Rank-`rank` shape with `len` in `dim` and 1 elsewhere.
    pub fn along(rank: usize, dim: usize, len: usize) -> Result<Self> {
        if dim >= rank {
            return Err(Error::DimOutOfRange { dim, rank });
        }
        let mut dims = vec![1; rank];
        dims[dim] = len;
        Shape::new(dims)
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Number of entries (product of extents).
    pub fn len(&self) -> usize {
        self.0.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&d| d == 1)
    }

    /// Row-major strides, last dimension fastest.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.rank()];
        for k in (0..self.rank().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.0[k + 1];
        }
        strides
    }

    pub fn flat_index(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.rank());
        index
            .iter()
            .zip(&self.0)
            .fold(0, |acc, (&i, &d)| {
                debug_assert!(i < d);
                acc * d + i
            })
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut index = vec![0; self.rank()];
        for k in (0..self.rank()).rev() {
            index[k] = flat % self.0[k];
            flat /= self.0[k];
        }
        index
    }

    /// Parses `"AxBxC"`.
    pub fn parse(text: &str) -> Result<Self> {
        let dims = text
            .split(['x', 'X', '×'])
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad shape {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Shape::new(dims)
    }

    pub(crate) fn check_same(&self, other: &Shape) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                left: self.0.clone(),
                right: other.0.clone(),
            })
        }
    }

    pub(crate) fn check_rank(&self, other: &Shape) -> Result<()> {
        if self.rank() == other.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            })
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl<'de> Deserialize<'de> for Shape {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let dims = Vec::<usize>::deserialize(deserializer)?;
        Shape::new(dims).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_and_empty() {
        assert!(Shape::new(vec![]).is_err());
        assert!(Shape::new(vec![2, 0]).is_err());
        assert!(Shape::new(vec![1]).is_ok());
    }

    #[test]
    fn flat_round_trip() {
        let s = Shape::new(vec![2, 3, 4]).unwrap();
        assert_eq!(s.strides(), vec![12, 4, 1]);
        for flat in 0..s.len() {
            assert_eq!(s.flat_index(&s.multi_index(flat)), flat);
        }
        assert_eq!(s.flat_index(&[1, 2, 3]), 23);
    }

    #[test]
    fn parse_and_display() {
        let s = Shape::parse("9x10").unwrap();
        assert_eq!(s.dims(), &[9, 10]);
        assert_eq!(s.to_string(), "9x10");
        assert!(Shape::parse("3x").is_err());
        assert!(Shape::parse("0").is_err());
        assert!(Shape::parse("a").is_err());
    }
}
