//! Scale-normalized range-sum norms, the derived complete metric, and
//! Hölder-type Lipschitz constants, computed on sampled functions over
//! dyadic scales.
//!
//! The `V_alpha` norm of a sample is `sup_norm + sup_m range_sum(m) / delta^(1-alpha)`
//! with `delta = 2^-m`; the sup runs over `m = 0..=m_max` (`m = 0` meaning
//! `delta = 1`).  All comparisons the module asserts (monotonicity in the
//! norm index, triangle via range-sum subadditivity) hold scale-by-scale,
//! so restricting the continuous sup to dyadic scales keeps them exact.

use rayon::prelude::*;

use crate::boxdim::{cell_range_sum, GridSample};
use crate::error::{Error, Result};
use crate::real::Real;
use crate::sampling::SampledSurface;

/// Result of a `V_alpha` norm evaluation.
#[derive(Debug, Clone, Copy)]
pub struct NormReport<T> {
    pub sup_norm: T,
    /// `sup_m range_sum(m) / delta^(1-alpha)`
    pub v_alpha_sup: T,
    /// Scale at which the sup is attained (first attaining `m`).
    pub achieved_m: u32,
    pub alpha: f64,
}

impl<T: Real> NormReport<T> {
    /// The norm itself: `sup_norm + v_alpha_sup`.
    pub fn norm_value(&self) -> T {
        self.sup_norm + self.v_alpha_sup
    }
}

/// `max |values|`.
pub fn sup_norm<T: Real, S: GridSample<T>>(sample: &S) -> T {
    sample.sup_norm()
}

/// Weight `1 / delta^(1-alpha) = 2^(m (1-alpha))` applied to a range sum at
/// scale `m`.
fn scale_weight<T: Real>(m: u32, alpha: f64) -> T {
    T::from_f64_lossy((m as f64 * (1.0 - alpha)).exp2())
}

/// Evaluates the `V_alpha` norm over scales `m = 0..=m_max`.
pub fn v_alpha_norm<T: Real, S: GridSample<T>>(
    sample: &S,
    alpha: f64,
    m_max: u32,
) -> Result<NormReport<T>> {
    if alpha < S::DIM as f64 {
        return Err(Error::InvalidParameter(format!(
            "alpha={alpha} below domain dimension {}",
            S::DIM
        )));
    }
    if m_max > sample.grid_exponent() {
        return Err(Error::ScaleOutOfRange { m: m_max, n: sample.grid_exponent() });
    }
    let mut best = T::neg_infinity();
    let mut achieved_m = 0;
    for m in 0..=m_max {
        let quotient = cell_range_sum(sample, m)? * scale_weight::<T>(m, alpha);
        if quotient > best {
            best = quotient;
            achieved_m = m;
        }
    }
    Ok(NormReport { sup_norm: sample.sup_norm(), v_alpha_sup: best, achieved_m, alpha })
}

/// Truncated metric value with its tail bound.
#[derive(Debug, Clone, Copy)]
pub struct MetricReport<T> {
    /// `sum_{k=1..K} min(2^-k, ||f - g||_{alpha + 1/k})`
    pub value: T,
    /// The dropped tail is at most `2^-K`.
    pub tail_bound: T,
}

/// The metric `d(f,g) = sum_k min(2^-k, ||f-g||_{alpha+1/k})` truncated at
/// `K = terms`; the tail beyond `K` is bounded by `2^-K` and reported.
pub fn d_alpha_metric<T: Real, S: GridSample<T>>(
    f: &S,
    g: &S,
    alpha: f64,
    terms: u32,
    m_max: u32,
) -> Result<MetricReport<T>> {
    if terms < 1 {
        return Err(Error::InvalidParameter("metric needs at least one term".into()));
    }
    let diff = S::combine(T::one(), f, -T::one(), g)?;
    let mut value = T::zero();
    for k in 1..=terms {
        let norm = v_alpha_norm(&diff, alpha + 1.0 / k as f64, m_max)?.norm_value();
        let cap = T::exp2_i32(-(k as i32));
        value = value + norm.min(cap);
    }
    Ok(MetricReport { value, tail_bound: T::exp2_i32(-(terms as i32)) })
}

/// Hölder-quotient report for a surface.
#[derive(Debug, Clone, Copy)]
pub struct LipReport<T> {
    /// `max |f(p) - f(q)| / |p - q|^(3-alpha)` over the evaluated pairs.
    pub value: T,
    /// True when every grid pair was evaluated.
    pub exhaustive: bool,
    /// For the dyadic-offset ladder, the sup is preserved up to this factor.
    pub ladder_factor: Option<f64>,
}

/// Grid exponent up to which all pairs are evaluated; beyond it the pair
/// set is restricted to dyadic offsets (quadratic cost in the sample count
/// otherwise).
pub const LIP_ALL_PAIRS_MAX_N: u32 = 8;

/// The weight `|p - q|^(alpha - 3)` for a pair at offset `(di, dj)` on a
/// grid with exponent `n`.  Exposed so independent checks multiply by the
/// identical factor.
pub fn pair_weight<T: Real>(di: usize, dj: usize, n: u32, alpha: f64) -> T {
    let dist2 = (di * di + dj * dj) as f64;
    T::from_f64_lossy((dist2.sqrt() * 2f64.powi(-(n as i32))).powf(alpha - 3.0))
}

/// Largest `|f(p) - f(q)|` over pairs at offset `(di, dj)`, `di` possibly
/// negative.
fn offset_max_diff<T: Real>(f: &SampledSurface<T>, di: isize, dj: usize) -> T {
    let w = f.width();
    let mut best = T::zero();
    let (lo, hi) = if di >= 0 { (0, w - di as usize) } else { ((-di) as usize, w) };
    for i in lo..hi {
        let a = &f.row(i)[..w - dj];
        let b = &f.row((i as isize + di) as usize)[dj..];
        for (&x, &y) in a.iter().zip(b) {
            best = best.max((x - y).abs());
        }
    }
    best
}

/// Hölder constant with exponent `3 - alpha` over grid-point pairs:
/// all pairs for `n <= 8`, dyadic offsets above (sup preserved up to a
/// factor `2^(3-alpha)`, recorded in the report).
pub fn lip_alpha<T: Real>(f: &SampledSurface<T>, alpha: f64) -> Result<LipReport<T>> {
    if !(2.0..3.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!("lip alpha={alpha} outside [2, 3)")));
    }
    let n = f.n();
    let w = f.width();
    let exhaustive = n <= LIP_ALL_PAIRS_MAX_N;
    // Unordered pairs: dj >= 0, with di > 0 when dj == 0.
    let offsets: Vec<(isize, usize)> = if exhaustive {
        let mut v = Vec::new();
        for dj in 0..w {
            let di_lo = if dj == 0 { 1 } else { -(w as isize - 1) };
            for di in di_lo..w as isize {
                if di == 0 && dj == 0 {
                    continue;
                }
                v.push((di, dj));
            }
        }
        v
    } else {
        let mut steps = vec![0usize];
        let mut t = 1usize;
        while t < w {
            steps.push(t);
            t <<= 1;
        }
        let mut v = Vec::new();
        for &dj in &steps {
            for &da in &steps {
                if da == 0 && dj == 0 {
                    continue;
                }
                if dj == 0 {
                    v.push((da as isize, 0));
                } else {
                    v.push((da as isize, dj));
                    if da != 0 {
                        v.push((-(da as isize), dj));
                    }
                }
            }
        }
        v
    };
    let value = offsets
        .par_iter()
        .map(|&(di, dj)| {
            let diff = offset_max_diff(f, di, dj);
            diff * pair_weight::<T>(di.unsigned_abs(), dj, n, alpha)
        })
        .reduce(T::zero, |a, b| a.max(b));
    Ok(LipReport {
        value,
        exhaustive,
        ladder_factor: if exhaustive { None } else { Some((3.0 - alpha).exp2()) },
    })
}

/// Per-index norms `||f||_{alpha + 1/k}` for `k = 1..=k_max` and the exact
/// scale-by-scale comparisons behind their monotonicity.
#[derive(Debug, Clone)]
pub struct MonotonicityReport<T> {
    pub norms: Vec<T>,
    /// `||f||_{alpha+1/(k+1)} >= ||f||_{alpha+1/k}` for every consecutive pair.
    pub nondecreasing: bool,
    /// The per-scale quotient comparison holds for every `m` and `k`.
    pub per_scale_ok: bool,
}

/// Verifies that `k -> ||f||_{alpha + 1/k}` is nondecreasing, both for the
/// norm values and scale-by-scale (the quotient weights only grow as the
/// index drops toward `alpha`).
pub fn norm_monotonicity_check<T: Real, S: GridSample<T>>(
    sample: &S,
    alpha: f64,
    k_max: u32,
    m_max: u32,
) -> Result<MonotonicityReport<T>> {
    if k_max < 1 {
        return Err(Error::InvalidParameter("k_max must be >= 1".into()));
    }
    let range_sums: Vec<T> = (0..=m_max)
        .map(|m| cell_range_sum(sample, m))
        .collect::<Result<_>>()?;
    let mut norms = Vec::with_capacity(k_max as usize);
    let mut per_scale_ok = true;
    let mut prev_quotients: Option<Vec<T>> = None;
    for k in 1..=k_max {
        let a = alpha + 1.0 / k as f64;
        let quotients: Vec<T> = range_sums
            .iter()
            .enumerate()
            .map(|(m, &rs)| rs * scale_weight::<T>(m as u32, a))
            .collect();
        if let Some(prev) = &prev_quotients {
            // index k has a smaller norm exponent than k-1, hence larger
            // weights: every scale's quotient must be >= the previous one
            per_scale_ok &= prev.iter().zip(&quotients).all(|(&p, &q)| q >= p);
        }
        let sup = quotients
            .iter()
            .fold(T::neg_infinity(), |acc, &q| acc.max(q));
        norms.push(sample.sup_norm() + sup);
        prev_quotients = Some(quotients);
    }
    let nondecreasing = norms.windows(2).all(|w| w[0] <= w[1]);
    Ok(MonotonicityReport { norms, nondecreasing, per_scale_ok })
}
