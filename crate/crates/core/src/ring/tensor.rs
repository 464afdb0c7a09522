use std::fmt;

use rayon::prelude::*;

use super::{GaussInt, Shape};
use crate::error::{Error, Result};

/// Work size (multiply-adds) above which convolution splits across threads.
const PARALLEL_WORK: usize = 1 << 20;

/// Dense r-dimensional array of Gaussian integers, row-major with the last
/// dimension fastest.
///
/// Tensors are values: every operation returns a new tensor and leaves its
/// inputs untouched. Under `add` and `convolve` they form a commutative ring
/// (the polynomial ring in `z₁, …, z_r`), with `involute` as its involution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    shape: Shape,
    entries: Vec<GaussInt>,
}

/// Zero-support relations between two equally shaped tensors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StructureFlags {
    /// At every index at least one of the two entries is zero.
    pub disjoint: bool,
    /// Both tensors have zeros in exactly the same positions.
    pub conjoint: bool,
}

impl Tensor {
    pub fn new(shape: Shape, entries: Vec<GaussInt>) -> Result<Self> {
        if entries.len() != shape.len() {
            return Err(Error::EntryCount {
                shape: shape.dims().to_vec(),
                got: entries.len(),
            });
        }
        Ok(Tensor { shape, entries })
    }

    pub fn zeros(shape: Shape) -> Self {
        let entries = vec![GaussInt::ZERO; shape.len()];
        Tensor { shape, entries }
    }

    pub fn filled(shape: Shape, value: GaussInt) -> Self {
        let entries = vec![value; shape.len()];
        Tensor { shape, entries }
    }

    /// Rank-`rank` tensor holding the single entry `value`.
    pub fn scalar(rank: usize, value: GaussInt) -> Self {
        Tensor {
            shape: Shape::unit(rank),
            entries: vec![value],
        }
    }

    /// Rank-1 tensor from a non-empty list of entries.
    ///
    /// Panics on an empty list; use [`Tensor::new`] for fallible construction.
    pub fn from_vec(entries: Vec<GaussInt>) -> Self {
        let shape = Shape::new(vec![entries.len()]).expect("sequence must be non-empty");
        Tensor { shape, entries }
    }

    /// Rank-1 tensor from real integers.
    pub fn from_ints(values: &[i64]) -> Self {
        Self::from_vec(values.iter().map(|&v| GaussInt::real(v)).collect())
    }

    /// Rank-2 tensor from equally long rows.
    pub fn from_rows(rows: &[Vec<GaussInt>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("ragged rows".into()));
        }
        let shape = Shape::new(vec![rows.len(), cols])?;
        Ok(Tensor {
            shape,
            entries: rows.concat(),
        })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dims(&self) -> &[usize] {
        self.shape.dims()
    }

    pub fn rank(&self) -> usize {
        self.shape.rank()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[GaussInt] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<GaussInt> {
        self.entries
    }

    pub fn get(&self, index: &[usize]) -> GaussInt {
        self.entries[self.shape.flat_index(index)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|g| g.is_zero())
    }

    /// True when every entry is a unit (no zeros).
    pub fn is_polyphase(&self) -> bool {
        self.entries.iter().all(|g| g.is_unit())
    }

    pub fn support(&self) -> Vec<bool> {
        self.entries.iter().map(|g| !g.is_zero()).collect()
    }

    fn map(&self, f: impl Fn(GaussInt) -> GaussInt) -> Tensor {
        Tensor {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(|&g| f(g)).collect(),
        }
    }

    fn zip_with(&self, other: &Tensor, f: impl Fn(GaussInt, GaussInt) -> GaussInt) -> Result<Tensor> {
        self.shape.check_same(&other.shape)?;
        Ok(Tensor {
            shape: self.shape.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn negate(&self) -> Tensor {
        self.map(|g| -g)
    }

    pub fn scale(&self, factor: GaussInt) -> Tensor {
        self.map(|g| g * factor)
    }

    pub fn conj(&self) -> Tensor {
        self.map(GaussInt::conj)
    }

    /// Divides every entry by `divisor`, failing on the first inexact entry.
    pub fn div_exact(&self, divisor: i64) -> Result<Tensor> {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(position, g)| {
                g.div_exact(divisor)
                    .ok_or(Error::InexactDivision { divisor, position })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Tensor {
            shape: self.shape.clone(),
            entries,
        })
    }

    /// The involution `A*`: rotate 180° in every dimension and conjugate.
    ///
    /// Row-major flat index `f` maps to `len - 1 - f` under a full flip, so
    /// this is a reversal of the entry list.
    pub fn involute(&self) -> Tensor {
        Tensor {
            shape: self.shape.clone(),
            entries: self.entries.iter().rev().map(|g| g.conj()).collect(),
        }
    }

    /// Full linear convolution (polynomial product); output extent
    /// `s_k + t_k - 1` in each dimension.
    pub fn convolve(&self, other: &Tensor) -> Result<Tensor> {
        self.shape.check_rank(&other.shape)?;
        let out_dims: Vec<usize> = self
            .dims()
            .iter()
            .zip(other.dims())
            .map(|(s, t)| s + t - 1)
            .collect();
        let out_shape = Shape::new(out_dims)?;
        let out_strides = out_shape.strides();
        let offsets = |t: &Tensor| -> Vec<usize> {
            (0..t.len())
                .map(|flat| {
                    t.shape
                        .multi_index(flat)
                        .iter()
                        .zip(&out_strides)
                        .map(|(i, s)| i * s)
                        .sum()
                })
                .collect()
        };
        let left: Vec<(usize, GaussInt)> = offsets(self)
            .into_iter()
            .zip(self.entries.iter().copied())
            .filter(|(_, g)| !g.is_zero())
            .collect();
        let right: Vec<(usize, GaussInt)> = offsets(other)
            .into_iter()
            .zip(other.entries.iter().copied())
            .filter(|(_, g)| !g.is_zero())
            .collect();
        let out_len = out_shape.len();

        let accumulate = |chunk: &[(usize, GaussInt)]| {
            let mut acc = vec![GaussInt::ZERO; out_len];
            for &(base, a) in chunk {
                for &(off, b) in &right {
                    acc[base + off] += a * b;
                }
            }
            acc
        };

        let work = left.len() * right.len();
        let entries = if work < PARALLEL_WORK || left.len() < 2 {
            accumulate(&left)
        } else {
            // Integer sums are exact, so the reduction order cannot change the result.
            let chunk = left.len().div_ceil(rayon::current_num_threads().max(1) * 2);
            left.par_chunks(chunk.max(1))
                .map(accumulate)
                .reduce(
                    || vec![GaussInt::ZERO; out_len],
                    |mut a, b| {
                        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                        a
                    },
                )
        };
        Ok(Tensor {
            shape: out_shape,
            entries,
        })
    }

    /// Kronecker product: `G[k] = A[i]·B[j]` with `k_l = i_l·t_l + j_l`.
    pub fn kron(&self, other: &Tensor) -> Result<Tensor> {
        self.shape.check_rank(&other.shape)?;
        let out_dims: Vec<usize> = self
            .dims()
            .iter()
            .zip(other.dims())
            .map(|(s, t)| s * t)
            .collect();
        let out_shape = Shape::new(out_dims)?;
        let out_strides = out_shape.strides();
        let b_offsets: Vec<usize> = (0..other.len())
            .map(|flat| {
                other
                    .shape
                    .multi_index(flat)
                    .iter()
                    .zip(&out_strides)
                    .map(|(j, s)| j * s)
                    .sum()
            })
            .collect();
        let mut entries = vec![GaussInt::ZERO; out_shape.len()];
        for (flat, &a) in self.entries.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let base: usize = self
                .shape
                .multi_index(flat)
                .iter()
                .zip(other.dims())
                .zip(&out_strides)
                .map(|((i, t), s)| i * t * s)
                .sum();
            for (&off, &b) in b_offsets.iter().zip(&other.entries) {
                entries[base + off] = a * b;
            }
        }
        Ok(Tensor {
            shape: out_shape,
            entries,
        })
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if dim < self.rank() {
            Ok(())
        } else {
            Err(Error::DimOutOfRange {
                dim,
                rank: self.rank(),
            })
        }
    }

    /// (outer, extent, inner) decomposition around `dim`.
    fn split_at_dim(&self, dim: usize) -> (usize, usize, usize) {
        let dims = self.dims();
        let outer = dims[..dim].iter().product();
        let inner = dims[dim + 1..].iter().product();
        (outer, dims[dim], inner)
    }

    fn check_all_but(&self, other: &Tensor, dim: usize) -> Result<()> {
        self.shape.check_rank(&other.shape)?;
        self.check_dim(dim)?;
        let same = self
            .dims()
            .iter()
            .zip(other.dims())
            .enumerate()
            .all(|(k, (a, b))| k == dim || a == b);
        if same {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                left: self.dims().to_vec(),
                right: other.dims().to_vec(),
            })
        }
    }

    /// `self | other` along `dim`; `self` occupies the low indices.
    pub fn concat(&self, other: &Tensor, dim: usize) -> Result<Tensor> {
        self.check_all_but(other, dim)?;
        let (outer, sa, inner) = self.split_at_dim(dim);
        let sb = other.dims()[dim];
        let mut dims = self.dims().to_vec();
        dims[dim] = sa + sb;
        let mut entries = Vec::with_capacity(self.len() + other.len());
        for o in 0..outer {
            entries.extend_from_slice(&self.entries[o * sa * inner..(o + 1) * sa * inner]);
            entries.extend_from_slice(&other.entries[o * sb * inner..(o + 1) * sb * inner]);
        }
        Tensor::new(Shape::new(dims)?, entries)
    }

    /// Concatenates several tensors along `dim`.
    pub fn concat_all(parts: &[Tensor], dim: usize) -> Result<Tensor> {
        let (first, rest) = parts.split_first().ok_or(Error::EmptySet)?;
        rest.iter().try_fold(first.clone(), |acc, t| acc.concat(t, dim))
    }

    /// Alternates slices along `dim`: `[a₀, b₀, a₁, b₁, …, a_m]`.
    /// Requires `self` to be one longer than `other` in `dim`.
    pub fn interleave(&self, other: &Tensor, dim: usize) -> Result<Tensor> {
        self.check_all_but(other, dim)?;
        let (outer, sa, inner) = self.split_at_dim(dim);
        let sb = other.dims()[dim];
        if sa != sb + 1 {
            return Err(Error::ShapeMismatch {
                left: self.dims().to_vec(),
                right: other.dims().to_vec(),
            });
        }
        let mut dims = self.dims().to_vec();
        dims[dim] = sa + sb;
        let mut entries = Vec::with_capacity(self.len() + other.len());
        for o in 0..outer {
            for k in 0..sa + sb {
                let (src, extent, slot) = if k % 2 == 0 {
                    (self, sa, k / 2)
                } else {
                    (other, sb, k / 2)
                };
                let start = (o * extent + slot) * inner;
                entries.extend_from_slice(&src.entries[start..start + inner]);
            }
        }
        Tensor::new(Shape::new(dims)?, entries)
    }

    /// The `len` slices starting at `start` along `dim`.
    pub fn slice(&self, dim: usize, start: usize, len: usize) -> Result<Tensor> {
        self.check_dim(dim)?;
        let (outer, extent, inner) = self.split_at_dim(dim);
        if len == 0 || start + len > extent {
            return Err(Error::InvalidShape(vec![start, len, extent]));
        }
        let mut dims = self.dims().to_vec();
        dims[dim] = len;
        let mut entries = Vec::with_capacity(outer * len * inner);
        for o in 0..outer {
            let from = (o * extent + start) * inner;
            entries.extend_from_slice(&self.entries[from..from + len * inner]);
        }
        Tensor::new(Shape::new(dims)?, entries)
    }

    /// Embeds into a larger shape, occupying the low indices; new entries are zero.
    pub fn zero_pad(&self, target: &Shape) -> Result<Tensor> {
        self.shape.check_rank(target)?;
        if self.dims().iter().zip(target.dims()).any(|(s, t)| s > t) {
            return Err(Error::ShapeMismatch {
                left: self.dims().to_vec(),
                right: target.dims().to_vec(),
            });
        }
        let mut out = Tensor::zeros(target.clone());
        for (flat, &g) in self.entries.iter().enumerate() {
            let idx = self.shape.multi_index(flat);
            out.entries[target.flat_index(&idx)] = g;
        }
        Ok(out)
    }

    /// Same entries under a new shape with the same element count.
    pub fn reshape(&self, shape: Shape) -> Result<Tensor> {
        Tensor::new(shape, self.entries.clone())
    }

    /// Views a rank-1 tensor as rank `rank`, with its extent placed on `dim`.
    pub fn orient(&self, rank: usize, dim: usize) -> Result<Tensor> {
        if self.rank() != 1 {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: 1,
            });
        }
        self.reshape(Shape::along(rank, dim, self.len())?)
    }

    /// Inserts `t_k - 1` zeros between consecutive entries in dimension `k`,
    /// realizing the substitution `z_k -> z_k^{t_k}`. Output extent is
    /// `(s_k - 1)·t_k + 1`. Used as the oracle for [`Tensor::kron`].
    #[cfg(test)]
    pub(crate) fn upsample(&self, factors: &[usize]) -> Result<Tensor> {
        if factors.len() != self.rank() || factors.contains(&0) {
            return Err(Error::InvalidShape(factors.to_vec()));
        }
        let dims: Vec<usize> = self
            .dims()
            .iter()
            .zip(factors)
            .map(|(s, t)| (s - 1) * t + 1)
            .collect();
        let shape = Shape::new(dims)?;
        let mut out = Tensor::zeros(shape.clone());
        for (flat, &g) in self.entries.iter().enumerate() {
            let idx: Vec<usize> = self
                .shape
                .multi_index(flat)
                .iter()
                .zip(factors)
                .map(|(i, t)| i * t)
                .collect();
            out.entries[shape.flat_index(&idx)] = g;
        }
        Ok(out)
    }

    /// Sum of equally shaped terms, failing if two terms are nonzero at the
    /// same position.
    pub fn checked_superpose(terms: &[Tensor]) -> Result<Tensor> {
        let (first, rest) = terms.split_first().ok_or(Error::EmptySet)?;
        let mut out = first.clone();
        for term in rest {
            out.shape.check_same(&term.shape)?;
            for (position, (acc, &g)) in out.entries.iter_mut().zip(&term.entries).enumerate() {
                if g.is_zero() {
                    continue;
                }
                if !acc.is_zero() {
                    return Err(Error::Collision { position });
                }
                *acc = g;
            }
        }
        Ok(out)
    }

    pub fn structure(&self, other: &Tensor) -> Result<StructureFlags> {
        self.shape.check_same(&other.shape)?;
        let mut flags = StructureFlags {
            disjoint: true,
            conjoint: true,
        };
        for (a, b) in self.entries.iter().zip(&other.entries) {
            flags.disjoint &= a.is_zero() || b.is_zero();
            flags.conjoint &= a.is_zero() == b.is_zero();
        }
        Ok(flags)
    }

    /// The zero pattern is invariant under a full flip.
    pub fn quasi_symmetric(&self) -> bool {
        let n = self.entries.len();
        (0..n / 2).all(|k| self.entries[k].is_zero() == self.entries[n - 1 - k].is_zero())
    }

    /// Reads a rank-2 tensor out column by column, realizing `z₁ = z`,
    /// `z₂ = z^{s₁}`.
    pub fn reshape_to_sequence(&self) -> Result<Tensor> {
        if self.rank() != 2 {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: 2,
            });
        }
        let (rows, cols) = (self.dims()[0], self.dims()[1]);
        let entries = (0..cols)
            .flat_map(|c| (0..rows).map(move |r| (r, c)))
            .map(|(r, c)| self.entries[r * cols + c])
            .collect();
        Tensor::new(Shape::new(vec![rows * cols])?, entries)
    }

    /// Inverse of [`Tensor::reshape_to_sequence`] for a recorded `shape`.
    pub fn sequence_to_matrix(&self, shape: &Shape) -> Result<Tensor> {
        if self.rank() != 1 || shape.rank() != 2 || shape.len() != self.len() {
            return Err(Error::ShapeMismatch {
                left: self.dims().to_vec(),
                right: shape.dims().to_vec(),
            });
        }
        let (rows, cols) = (shape.dims()[0], shape.dims()[1]);
        let mut entries = vec![GaussInt::ZERO; self.len()];
        for (k, &g) in self.entries.iter().enumerate() {
            entries[(k % rows) * cols + k / rows] = g;
        }
        Tensor::new(shape.clone(), entries)
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = *self.dims().last().unwrap_or(&1);
        let rows: Vec<String> = self
            .entries
            .chunks(last)
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|g| g.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "{} {}", self.shape, rows.join(" "))
    }
}
