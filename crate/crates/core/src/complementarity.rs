//! Aperiodic autocorrelation and the GCA-set checks built on it.
//!
//! Three independent routes decide complementarity: the shift-by-shift
//! autocorrelation sum ([`is_gca_set`]), the polynomial identity
//! `Σ A_i A_i^* = w·z^{s-1}` ([`gca_check_polynomial`]), and a floating-point
//! power-spectrum scan ([`spectrum_flatness`]). Only the first two are exact.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{Alphabet, GaussInt, Shape, Tensor};

/// Below this many output shifts the autocorrelation runs on one thread.
const PARALLEL_SHIFTS: usize = 64;

/// Autocorrelation array of extent `2s_k - 1` per dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutocorrResult {
    pub tensor: Tensor,
    /// Index of the zero shift, `s_k - 1` in each dimension.
    pub center: Vec<usize>,
}

impl AutocorrResult {
    /// Value at shift `delta` (each component in `-(s_k-1)..=s_k-1`).
    pub fn at(&self, delta: &[isize]) -> GaussInt {
        let idx: Vec<usize> = delta
            .iter()
            .zip(&self.center)
            .map(|(&d, &c)| (c as isize + d) as usize)
            .collect();
        self.tensor.get(&idx)
    }

    pub fn center_value(&self) -> GaussInt {
        self.tensor.get(&self.center)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GcaVerdict {
    pub is_complementary: bool,
    pub total_weight: i64,
    /// Largest `|Σ R[δ]|²` over nonzero shifts.
    pub max_sidelobe_norm: i64,
}

/// `R_A[δ] = Σ_i A[i]·conj(A[i-δ])`, evaluated shift by shift over the
/// overlap box of each shift.
pub fn autocorrelation(a: &Tensor) -> AutocorrResult {
    let dims = a.dims();
    let rank = dims.len();
    let out_shape = Shape::new(dims.iter().map(|s| 2 * s - 1).collect::<Vec<_>>())
        .expect("extents are positive");
    let center: Vec<usize> = dims.iter().map(|s| s - 1).collect();
    let strides = a.shape().strides();
    let entries = a.entries();

    let shift_value = |flat_out: usize| -> GaussInt {
        let idx = out_shape.multi_index(flat_out);
        let delta: Vec<isize> = idx
            .iter()
            .zip(&center)
            .map(|(&i, &c)| i as isize - c as isize)
            .collect();
        let lo: Vec<usize> = delta.iter().map(|&d| d.max(0) as usize).collect();
        let hi: Vec<usize> = delta
            .iter()
            .zip(dims)
            .map(|(&d, &s)| (s as isize + d.min(0)) as usize)
            .collect();
        let back: isize = delta
            .iter()
            .zip(&strides)
            .map(|(&d, &st)| d * st as isize)
            .sum();
        let run = hi[rank - 1] - lo[rank - 1];

        let mut acc = GaussInt::ZERO;
        let mut cursor = lo.clone();
        loop {
            let start: usize = cursor.iter().zip(&strides).map(|(i, s)| i * s).sum();
            let partner = (start as isize - back) as usize;
            for t in 0..run {
                acc += entries[start + t] * entries[partner + t].conj();
            }
            // Odometer over every dimension but the last.
            let mut k = rank - 1;
            loop {
                if k == 0 {
                    return acc;
                }
                k -= 1;
                cursor[k] += 1;
                if cursor[k] < hi[k] {
                    break;
                }
                cursor[k] = lo[k];
            }
        }
    };

    let n = out_shape.len();
    let values: Vec<GaussInt> = if n < PARALLEL_SHIFTS {
        (0..n).map(shift_value).collect()
    } else {
        (0..n).into_par_iter().map(shift_value).collect()
    };
    AutocorrResult {
        tensor: Tensor::new(out_shape, values).expect("sized by construction"),
        center,
    }
}

/// `Σ |A[i]|²`.
pub fn weight(a: &Tensor) -> i64 {
    a.entries().iter().map(|g| g.norm()).sum()
}

fn common_shape(arrays: &[Tensor]) -> Result<&Shape> {
    let (first, rest) = arrays.split_first().ok_or(Error::EmptySet)?;
    for t in rest {
        if t.shape() != first.shape() {
            return Err(Error::ShapeMismatch {
                left: first.dims().to_vec(),
                right: t.dims().to_vec(),
            });
        }
    }
    Ok(first.shape())
}

/// Sums the autocorrelations and compares against `total_weight·Δ`.
pub fn is_gca_set(arrays: &[Tensor]) -> Result<GcaVerdict> {
    common_shape(arrays)?;
    let total_weight: i64 = arrays.iter().map(weight).sum();
    let mut sum: Option<AutocorrResult> = None;
    for a in arrays {
        let r = autocorrelation(a);
        sum = Some(match sum {
            None => r,
            Some(acc) => AutocorrResult {
                tensor: acc.tensor.add(&r.tensor)?,
                center: acc.center,
            },
        });
    }
    let sum = sum.ok_or(Error::EmptySet)?;
    let center_flat = sum.tensor.shape().flat_index(&sum.center);
    let max_sidelobe_norm = sum
        .tensor
        .entries()
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != center_flat)
        .map(|(_, g)| g.norm())
        .max()
        .unwrap_or(0);
    let is_complementary =
        max_sidelobe_norm == 0 && sum.center_value() == GaussInt::real(total_weight);
    Ok(GcaVerdict {
        is_complementary,
        total_weight,
        max_sidelobe_norm,
    })
}

/// Zero-pads every member to the common bounding shape and runs
/// [`is_gca_set`]. Trailing zeros leave each autocorrelation unchanged.
pub fn is_gca_set_padded(arrays: &[Tensor]) -> Result<GcaVerdict> {
    is_gca_set(&pad_to_common(arrays)?)
}

/// Pads every member with trailing zeros to the per-dimension maximum extent.
pub fn pad_to_common(arrays: &[Tensor]) -> Result<Vec<Tensor>> {
    let first = arrays.first().ok_or(Error::EmptySet)?;
    let rank = first.rank();
    for t in arrays {
        if t.rank() != rank {
            return Err(Error::RankMismatch { left: rank, right: t.rank() });
        }
    }
    let dims: Vec<usize> = (0..rank)
        .map(|k| arrays.iter().map(|t| t.dims()[k]).max().unwrap_or(1))
        .collect();
    let target = Shape::new(dims)?;
    arrays.iter().map(|t| t.zero_pad(&target)).collect()
}

/// Checks `Σ A_i·A_i^* = w·z₁^{s₁-1}⋯z_r^{s_r-1}` with `·` the convolution.
pub fn gca_check_polynomial(arrays: &[Tensor]) -> Result<bool> {
    let shape = common_shape(arrays)?;
    let mut total: Option<Tensor> = None;
    let mut total_weight = 0i64;
    for a in arrays {
        let p = a.convolve(&a.involute())?;
        total_weight += weight(a);
        total = Some(match total {
            None => p,
            Some(acc) => acc.add(&p)?,
        });
    }
    let total = total.ok_or(Error::EmptySet)?;
    let monomial: Vec<usize> = shape.dims().iter().map(|s| s - 1).collect();
    let mut expected = Tensor::zeros(total.shape().clone()).into_entries();
    expected[total.shape().flat_index(&monomial)] = GaussInt::real(total_weight);
    Ok(total.entries() == &expected[..])
}

/// Evaluates `Σ|A_i(z)|²` on the grid `z_k = exp(2πj·m/grid)` and returns
/// the largest deviation from the total weight, relative to it.
///
/// For an all-zero set the absolute deviation is returned.
pub fn spectrum_flatness(arrays: &[Tensor], grid: usize) -> Result<f64> {
    if grid < 2 {
        return Err(Error::InvalidShape(vec![grid]));
    }
    let shape = common_shape(arrays)?;
    let total_weight: i64 = arrays.iter().map(weight).sum();
    let twiddle: Vec<Complex64> = (0..grid)
        .map(|m| Complex64::from_polar(1.0, 2.0 * PI * m as f64 / grid as f64))
        .collect();

    let mut power: Vec<f64> = vec![0.0; grid.pow(shape.rank() as u32)];
    for a in arrays {
        let spectrum = evaluate_on_grid(a, &twiddle);
        power.iter_mut().zip(&spectrum).for_each(|(p, v)| *p += v.norm_sqr());
    }
    let scale = if total_weight == 0 { 1.0 } else { total_weight as f64 };
    Ok(power
        .iter()
        .map(|p| (p - total_weight as f64).abs() / scale)
        .fold(0.0, f64::max))
}

/// Separable polynomial evaluation, one dimension at a time.
fn evaluate_on_grid(a: &Tensor, twiddle: &[Complex64]) -> Vec<Complex64> {
    let grid = twiddle.len();
    let mut dims = a.dims().to_vec();
    let mut data: Vec<Complex64> = a.entries().iter().map(|g| g.to_complex()).collect();
    for k in 0..dims.len() {
        let outer: usize = dims[..k].iter().product();
        let extent = dims[k];
        let inner: usize = dims[k + 1..].iter().product();
        let mut next = vec![Complex64::new(0.0, 0.0); outer * grid * inner];
        for o in 0..outer {
            for m in 0..grid {
                for i in 0..extent {
                    // twiddle^(m·i) reduced mod grid keeps the phase exact-ish.
                    let w = twiddle[(m * i) % grid];
                    let src = (o * extent + i) * inner;
                    let dst = (o * grid + m) * inner;
                    for t in 0..inner {
                        next[dst + t] += w * data[src + t];
                    }
                }
            }
        }
        data = next;
        dims[k] = grid;
    }
    data
}

/// Checks `A[s-1-i]·A[i]·B[s-1-i]·B[i] = -1` at every index of a nontrivial
/// binary GCA pair.
pub fn binary_pair_symmetry(a: &Tensor, b: &Tensor) -> Result<bool> {
    a.shape().check_same(b.shape())?;
    if Alphabet::Binary.check(a).is_err() || Alphabet::Binary.check(b).is_err() {
        return Err(Error::NotBinary);
    }
    if a.shape().is_trivial() {
        return Err(Error::Trivial);
    }
    if !is_gca_set(&[a.clone(), b.clone()])?.is_complementary {
        return Err(Error::NotComplementary);
    }
    let (ea, eb) = (a.entries(), b.entries());
    let n = ea.len();
    // A full flip reverses the row-major flat order.
    Ok((0..n).all(|i| {
        let j = n - 1 - i;
        ea[j] * ea[i] * eb[j] * eb[i] == GaussInt::NEG_ONE
    }))
}
