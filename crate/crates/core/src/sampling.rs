//! Dyadic grid samples of functions on `[0,1]` and `[0,1]^2`.
//!
//! A grid with exponent `n` has `2^n + 1` samples per axis at the points
//! `i * 2^-n`.  Index convention, used everywhere in the crate: a surface
//! value `values[i][j]` is `f(i * 2^-n, j * 2^-n)` — `i` runs along the
//! x-axis (first coordinate), `j` along the y-axis.
//!
//! All types are immutable after construction and all operations are pure,
//! so samples can be shared freely across worker threads.

use crate::error::{Error, Result};
use crate::real::Real;

/// Number of samples per axis for grid exponent `n`.
pub fn axis_len(n: u32) -> usize {
    (1usize << n) + 1
}

/// Samples of a continuous function on `[0,1]`: `values[i] = f(i * 2^-n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve<T> {
    n: u32,
    values: Vec<T>,
}

/// Samples of a continuous function on `[0,1]^2`, stored row-major in `i`
/// (so the `2^n + 1` values with a common `i` are contiguous).
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSurface<T> {
    n: u32,
    values: Vec<T>,
}

/// A closed cell of the dyadic mesh at scale `delta = 2^-m`.
///
/// Cell corners land on sample points whenever `m <= n` of the sample the
/// cell is evaluated against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridCell {
    pub m: u32,
    pub index: [usize; 2],
    pub dims: usize,
}

impl GridCell {
    pub fn curve(m: u32, i: usize) -> Self {
        Self { m, index: [i, 0], dims: 1 }
    }
    pub fn surface(m: u32, i: usize, j: usize) -> Self {
        Self { m, index: [i, j], dims: 2 }
    }
}

fn check_finite<T: Real>(values: &[T], index_of: impl Fn(usize) -> Vec<usize>) -> Result<()> {
    for (flat, v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite { index: index_of(flat) });
        }
    }
    Ok(())
}

impl<T: Real> SampledCurve<T> {
    /// Wraps raw samples; rejects wrong lengths and non-finite values.
    pub fn from_values(n: u32, values: Vec<T>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("grid exponent n must be >= 1".into()));
        }
        if values.len() != axis_len(n) {
            return Err(Error::ShapeMismatch { expected: n, got: values.len() as u32 });
        }
        check_finite(&values, |i| vec![i])?;
        Ok(Self { n, values })
    }

    /// Samples `f` at every grid point; rejects non-finite evaluations with
    /// the offending grid index.
    pub fn from_fn(n: u32, mut f: impl FnMut(T) -> T) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("grid exponent n must be >= 1".into()));
        }
        let len = axis_len(n);
        let step = T::exp2_i32(-(n as i32));
        let mut values = Vec::with_capacity(len);
        for i in 0..len {
            let x = T::from_usize(i).unwrap() * step;
            let v = f(x);
            if !v.is_finite() {
                return Err(Error::NonFinite { index: vec![i] });
            }
            values.push(v);
        }
        Ok(Self { n, values })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, i: usize) -> T {
        self.values[i]
    }

    /// The grid coordinate of sample `i`.
    pub fn x(&self, i: usize) -> T {
        T::from_usize(i).unwrap() * T::exp2_i32(-(self.n as i32))
    }

    /// Pointwise `a*f + b*g`; both curves must share a grid.
    pub fn lin_comb(a: T, f: &Self, b: T, g: &Self) -> Result<Self> {
        if f.n != g.n {
            return Err(Error::ShapeMismatch { expected: f.n, got: g.n });
        }
        let values = f
            .values
            .iter()
            .zip(&g.values)
            .map(|(&x, &y)| a * x + b * y)
            .collect::<Vec<_>>();
        check_finite(&values, |i| vec![i])?;
        Ok(Self { n: f.n, values })
    }
}

impl<T: Real> SampledSurface<T> {
    pub fn from_values(n: u32, values: Vec<T>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("grid exponent n must be >= 1".into()));
        }
        let w = axis_len(n);
        if values.len() != w * w {
            return Err(Error::ShapeMismatch { expected: n, got: values.len() as u32 });
        }
        check_finite(&values, |flat| vec![flat / w, flat % w])?;
        Ok(Self { n, values })
    }

    pub fn from_fn(n: u32, mut f: impl FnMut(T, T) -> T) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("grid exponent n must be >= 1".into()));
        }
        let w = axis_len(n);
        let step = T::exp2_i32(-(n as i32));
        let mut values = Vec::with_capacity(w * w);
        for i in 0..w {
            let x = T::from_usize(i).unwrap() * step;
            for j in 0..w {
                let y = T::from_usize(j).unwrap() * step;
                let v = f(x, y);
                if !v.is_finite() {
                    return Err(Error::NonFinite { index: vec![i, j] });
                }
                values.push(v);
            }
        }
        Ok(Self { n, values })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Samples per axis.
    pub fn width(&self) -> usize {
        axis_len(self.n)
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize) -> T {
        self.values[i * self.width() + j]
    }

    /// All samples with x-index `i`, contiguous in memory.
    pub fn row(&self, i: usize) -> &[T] {
        let w = self.width();
        &self.values[i * w..(i + 1) * w]
    }

    pub fn lin_comb(a: T, f: &Self, b: T, g: &Self) -> Result<Self> {
        if f.n != g.n {
            return Err(Error::ShapeMismatch { expected: f.n, got: g.n });
        }
        let values = f
            .values
            .iter()
            .zip(&g.values)
            .map(|(&x, &y)| a * x + b * y)
            .collect::<Vec<_>>();
        let w = f.width();
        check_finite(&values, |flat| vec![flat / w, flat % w])?;
        Ok(Self { n: f.n, values })
    }
}

/// The y-independent surface `Psi(x, y) = psi(x)`.
pub fn extrude<T: Real>(psi: &SampledCurve<T>) -> SampledSurface<T> {
    let w = psi.len();
    let mut values = Vec::with_capacity(w * w);
    for i in 0..w {
        let v = psi.value(i);
        values.extend(std::iter::repeat(v).take(w));
    }
    SampledSurface { n: psi.n(), values }
}

/// The section `x -> f(x, y_j)` along the `j`-th grid line.
pub fn slice<T: Real>(f: &SampledSurface<T>, j: usize) -> Result<SampledCurve<T>> {
    let w = f.width();
    if j >= w {
        return Err(Error::IndexOutOfRange { index: j, max: w - 1 });
    }
    let values = (0..w).map(|i| f.value(i, j)).collect();
    Ok(SampledCurve { n: f.n(), values })
}
