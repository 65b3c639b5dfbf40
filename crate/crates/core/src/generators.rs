//! Reproducible synthesis of curves and surfaces with prescribed box
//! dimension.
//!
//! The families here realize "a curve/surface whose graph has box dimension
//! alpha" concretely: Weierstrass-type cosine series and midpoint
//! displacement, both with the standard amplitude-exponent / dimension
//! relation, plus Takagi and monotone staircases as dimension-1 fixtures.
//! Every stochastic family draws from [`crate::rng::SplitMix64`], so the
//! same spec and grid exponent reproduce samples bit-for-bit.

use crate::error::{Error, Result};
use crate::real::Real;
use crate::rng::SplitMix64;
use crate::sampling::{axis_len, extrude, SampledCurve, SampledSurface};

/// Seeded, parameterized recipe for curve/surface synthesis.  Together with
/// the grid exponent it fully determines the output.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    /// Cosine series with amplitude decay tied to the target dimension.
    Weierstrass { target_dim: f64, base: u32, seed: u64 },
    /// Random midpoint displacement (curves) / diamond-square (surfaces).
    Midpoint { target_dim: f64, seed: u64 },
    /// The Takagi (blancmange) curve, dimension 1.
    Takagi,
    /// Seeded nondecreasing staircase, dimension 1.
    MonotoneEnvelope { seed: u64 },
    /// Closed-form test functions.
    ClosedForm(ClosedForm),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ClosedForm {
    /// `f(x) = x`
    Identity,
    /// constant `c` (curve or surface)
    Constant(f64),
    /// `f(x) = cos(2 pi x)`
    Cosine,
    /// `f(x,y) = x + y`
    PlaneSum,
    /// `f(x,y) = x * y`
    Saddle,
    /// Smooth rim with a rough patch hidden inside a central depression;
    /// its skyline is smooth even though the surface is not.
    Depression { seed: u64 },
}

impl GeneratorSpec {
    /// `key=value` lines used for provenance in CSV headers and by the CLI.
    pub fn to_key_values(&self) -> Vec<(String, String)> {
        let kv = |k: &str, v: String| (k.to_string(), v);
        match self {
            GeneratorSpec::Weierstrass { target_dim, base, seed } => vec![
                kv("family", "weierstrass".into()),
                kv("target_dim", format!("{target_dim}")),
                kv("base", format!("{base}")),
                kv("seed", format!("{seed}")),
            ],
            GeneratorSpec::Midpoint { target_dim, seed } => vec![
                kv("family", "midpoint".into()),
                kv("target_dim", format!("{target_dim}")),
                kv("seed", format!("{seed}")),
            ],
            GeneratorSpec::Takagi => vec![
                kv("family", "takagi".into()),
                kv("target_dim", "1".into()),
            ],
            GeneratorSpec::MonotoneEnvelope { seed } => vec![
                kv("family", "monotone-envelope".into()),
                kv("target_dim", "1".into()),
                kv("seed", format!("{seed}")),
            ],
            GeneratorSpec::ClosedForm(form) => {
                let mut out = vec![kv("family", "closed-form".into())];
                match form {
                    ClosedForm::Identity => out.push(kv("form", "identity".into())),
                    ClosedForm::Constant(c) => {
                        out.push(kv("form", "constant".into()));
                        out.push(kv("value", format!("{c}")));
                    }
                    ClosedForm::Cosine => out.push(kv("form", "cosine".into())),
                    ClosedForm::PlaneSum => out.push(kv("form", "plane-sum".into())),
                    ClosedForm::Saddle => out.push(kv("form", "saddle".into())),
                    ClosedForm::Depression { seed } => {
                        out.push(kv("form", "depression".into()));
                        out.push(kv("seed", format!("{seed}")));
                    }
                }
                out
            }
        }
    }

    /// One `key=value` pair per line.
    pub fn to_block(&self) -> String {
        self.to_key_values()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Parses the `key=value` block emitted by [`Self::to_block`].
    pub fn parse_block(block: &str) -> Result<Self> {
        let mut map = std::collections::BTreeMap::new();
        for line in block.lines() {
            let line = line.trim().trim_start_matches('#').trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Format(format!("expected key=value, got `{line}`")))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        let get = |k: &str| -> Result<&String> {
            map.get(k)
                .ok_or_else(|| Error::Format(format!("missing key `{k}`")))
        };
        let parse_f64 = |k: &str| -> Result<f64> {
            get(k)?
                .parse()
                .map_err(|_| Error::Format(format!("bad number for `{k}`")))
        };
        let parse_u64 = |k: &str| -> Result<u64> {
            get(k)?
                .parse()
                .map_err(|_| Error::Format(format!("bad integer for `{k}`")))
        };
        match get("family")?.as_str() {
            "weierstrass" => Ok(GeneratorSpec::Weierstrass {
                target_dim: parse_f64("target_dim")?,
                base: parse_u64("base")? as u32,
                seed: parse_u64("seed")?,
            }),
            "midpoint" => Ok(GeneratorSpec::Midpoint {
                target_dim: parse_f64("target_dim")?,
                seed: parse_u64("seed")?,
            }),
            "takagi" => Ok(GeneratorSpec::Takagi),
            "monotone-envelope" => Ok(GeneratorSpec::MonotoneEnvelope { seed: parse_u64("seed")? }),
            "closed-form" => {
                let form = match get("form")?.as_str() {
                    "identity" => ClosedForm::Identity,
                    "constant" => ClosedForm::Constant(parse_f64("value")?),
                    "cosine" => ClosedForm::Cosine,
                    "plane-sum" => ClosedForm::PlaneSum,
                    "saddle" => ClosedForm::Saddle,
                    "depression" => ClosedForm::Depression { seed: parse_u64("seed")? },
                    other => {
                        return Err(Error::Format(format!("unknown closed form `{other}`")))
                    }
                };
                Ok(GeneratorSpec::ClosedForm(form))
            }
            other => Err(Error::Format(format!("unknown family `{other}`"))),
        }
    }
}

/// Evaluates a curve spec on the grid with exponent `n`.
pub fn sample_curve<T: Real>(spec: &GeneratorSpec, n: u32) -> Result<SampledCurve<T>> {
    match spec {
        GeneratorSpec::Weierstrass { target_dim, base, seed } => {
            weierstrass_curve(*target_dim, *base, *seed, n)
        }
        GeneratorSpec::Midpoint { target_dim, seed } => midpoint_curve(*target_dim, *seed, n),
        GeneratorSpec::Takagi => takagi_curve(n),
        GeneratorSpec::MonotoneEnvelope { seed } => monotone_curve(n, *seed),
        GeneratorSpec::ClosedForm(form) => match form {
            ClosedForm::Identity => SampledCurve::from_fn(n, |x| x),
            ClosedForm::Constant(c) => {
                let c = T::from_f64_lossy(*c);
                SampledCurve::from_fn(n, |_| c)
            }
            ClosedForm::Cosine => {
                let tau = T::PI() + T::PI();
                SampledCurve::from_fn(n, |x| (tau * x).cos())
            }
            other => Err(Error::InvalidParameter(format!(
                "closed form {other:?} is a surface recipe, not a curve"
            ))),
        },
    }
}

/// Evaluates a surface spec on the grid with exponent `n`.
pub fn sample_surface<T: Real>(spec: &GeneratorSpec, n: u32) -> Result<SampledSurface<T>> {
    match spec {
        GeneratorSpec::Midpoint { target_dim, seed } => midpoint_surface(*target_dim, *seed, n),
        GeneratorSpec::ClosedForm(form) => match form {
            ClosedForm::Constant(c) => {
                let c = T::from_f64_lossy(*c);
                SampledSurface::from_fn(n, |_, _| c)
            }
            ClosedForm::PlaneSum => SampledSurface::from_fn(n, |x, y| x + y),
            ClosedForm::Saddle => SampledSurface::from_fn(n, |x, y| x * y),
            ClosedForm::Depression { seed } => depression_surface(n, *seed),
            other => Err(Error::InvalidParameter(format!(
                "closed form {other:?} is a curve recipe, not a surface"
            ))),
        },
        other => Err(Error::InvalidParameter(format!(
            "family {other:?} does not synthesize surfaces"
        ))),
    }
}

/// Last series term worth evaluating: beyond it the remaining amplitude sum
/// `a^(K+1) / (1 - a)` drops below double-precision noise.
fn amplitude_cutoff(a: f64) -> u32 {
    debug_assert!(a > 0.0 && a < 1.0);
    (((1e-13) * (1.0 - a)).ln() / a.ln()).ceil().max(1.0) as u32
}

/// Weierstrass-type curve `W(x) = sum_k base^{(s-2)k} cos(2 pi base^k x + theta_k)`
/// with seeded phases, truncated at `base^K >= 2^n`.
///
/// `s` in `(1, 2]` is the target box dimension of the graph.  `s = 1` is
/// accepted as the rectifiable limit and emits the single `k = 0` term (a
/// smooth cosine).
///
/// The series runs until the remaining amplitude tail is below `1e-13`, not
/// merely to the grid Nyquist frequency: at the dyadic sample points the
/// above-Nyquist terms fold to genuine sample oscillation (for odd bases),
/// and dropping them visibly deflates fine-scale dimension estimates.
/// Arguments are reduced exactly — `frac(base^k x_i)` is computed as
/// `(base^k mod 2^n) * i mod 2^n` in integer arithmetic — so the samples are
/// those of the full series to double precision.
pub fn weierstrass_curve<T: Real>(s: f64, base: u32, seed: u64, n: u32) -> Result<SampledCurve<T>> {
    if base < 2 {
        return Err(Error::InvalidParameter(format!("weierstrass base {base} < 2")));
    }
    if !(1.0..=2.0).contains(&s) {
        return Err(Error::InvalidParameter(format!(
            "weierstrass target dimension s={s} outside [1, 2]"
        )));
    }
    let k_max = if s == 1.0 {
        0
    } else if s == 2.0 {
        // flat amplitudes never decay; stop at the grid Nyquist frequency
        let mut power = 1u128;
        let mut k = 0;
        while power < (1u128 << n) {
            power *= base as u128;
            k += 1;
        }
        k
    } else {
        amplitude_cutoff((base as f64).powf(s - 2.0)).min(2048)
    };
    weierstrass_curve_with_terms(s, base, seed, n, k_max)
}

/// As [`weierstrass_curve`] but with an explicit last series term `k_max`,
/// so tail-truncation effects can be measured directly.
pub fn weierstrass_curve_with_terms<T: Real>(
    s: f64,
    base: u32,
    seed: u64,
    n: u32,
    k_max: u32,
) -> Result<SampledCurve<T>> {
    if !(1.0..=2.0).contains(&s) {
        return Err(Error::InvalidParameter(format!(
            "weierstrass target dimension s={s} outside [1, 2]"
        )));
    }
    if base < 2 {
        return Err(Error::InvalidParameter(format!("weierstrass base {base} < 2")));
    }
    let mut rng = SplitMix64::new(seed);
    let modulus = 1u64 << n;
    let tau = T::PI() + T::PI();
    // (amplitude, base^k mod 2^n, phase) per term
    let terms: Vec<(T, u64, T)> = (0..=k_max)
        .map(|k| {
            let amp = T::from_f64_lossy((base as f64).powf((s - 2.0) * k as f64));
            let residue = (0..k).fold(1u64, |acc, _| (acc * base as u64) % modulus);
            let phase = T::from_f64_lossy(rng.next_f64() * std::f64::consts::TAU);
            (amp, residue, phase)
        })
        .collect();
    let scale = T::exp2_i32(-(n as i32));
    let len = axis_len(n);
    let mut values = Vec::with_capacity(len);
    for i in 0..len as u64 {
        let mut acc = T::zero();
        for &(amp, residue, phase) in &terms {
            let frac = T::from_u64((residue * i) & (modulus - 1)).unwrap() * scale;
            acc = acc + amp * (tau * frac + phase).cos();
        }
        values.push(acc);
    }
    SampledCurve::from_values(n, values)
}

/// Takagi curve `T(x) = sum_{k=0..n} 2^-k dist(2^k x, Z)` on the grid.
///
/// At dyadic grid points every term is a dyadic rational with lsb `2^-n`,
/// so the sum is exact in floating point.
pub fn takagi_curve<T: Real>(n: u32) -> Result<SampledCurve<T>> {
    let len = axis_len(n);
    let scale = T::exp2_i32(-(n as i32));
    let mask = (1u64 << n) - 1;
    let half = T::from_f64_lossy(0.5);
    let mut values = Vec::with_capacity(len);
    for i in 0..len as u64 {
        let mut acc = T::zero();
        for k in 0..n {
            // frac(2^k x) = ((i << k) mod 2^n) * 2^-n
            let frac = T::from_u64((i << k) & mask).unwrap() * scale;
            let dist = if frac > half { T::one() - frac } else { frac };
            acc = acc + T::exp2_i32(-(k as i32)) * dist;
        }
        values.push(acc);
    }
    SampledCurve::from_values(n, values)
}

fn level_amplitude<T: Real>(d: u32, s: f64, level: u32) -> T {
    T::from_f64_lossy(2f64.powf(-((d as f64 + 1.0 - s) * level as f64)))
}

/// Adds the displacement levels below grid resolution, folded into the
/// samples: per point, independent kicks of amplitude `2^{-(d+1-s) level}`
/// for `level > n`, summed until the amplitudes are negligible.  Without
/// this roll-up the finest analysis scales are visibly smoother than the
/// infinite-level process they stand in for.
fn subgrid_tail<T: Real>(values: &mut [T], d: u32, s: f64, n: u32, rng: &mut SplitMix64) {
    let h = d as f64 + 1.0 - s;
    let ratio = 2f64.powf(-h);
    if ratio >= 1.0 {
        return; // s at the top of its range: flat-amplitude tails do not converge
    }
    let levels = amplitude_cutoff(ratio).saturating_sub(n).max(1);
    for v in values.iter_mut() {
        let mut amp = 2f64.powf(-(h * (n + 1) as f64));
        let mut kick = 0.0;
        for _ in 0..levels {
            kick += amp * rng.next_symmetric();
            amp *= ratio;
        }
        *v = *v + T::from_f64_lossy(kick);
    }
}

/// Random midpoint displacement curve with per-level amplitude
/// `2^{-(2-s) level}`; `s` in `[1, 2]` is the target dimension.
///
/// Uses successive random additions: at each level, every lattice point
/// alive so far is jittered with the level amplitude, and levels continue
/// below grid resolution via [`subgrid_tail`].
pub fn midpoint_curve<T: Real>(s: f64, seed: u64, n: u32) -> Result<SampledCurve<T>> {
    if !(1.0..=2.0).contains(&s) {
        return Err(Error::InvalidParameter(format!(
            "midpoint curve target dimension s={s} outside [1, 2]"
        )));
    }
    let len = axis_len(n);
    let mut rng = SplitMix64::new(seed);
    let mut values = vec![T::zero(); len];
    values[0] = T::from_f64_lossy(rng.next_symmetric());
    values[len - 1] = T::from_f64_lossy(rng.next_symmetric());
    let half = T::from_f64_lossy(0.5);
    for level in 1..=n {
        let step = 1usize << (n - level);
        let amp = level_amplitude::<T>(1, s, level);
        let mut i = step;
        while i < len {
            let mid = (values[i - step] + values[i + step]) * half;
            values[i] = mid + amp * T::from_f64_lossy(rng.next_symmetric());
            i += 2 * step;
        }
        // successive random additions over the live lattice
        let mut i = 0;
        while i < len {
            values[i] = values[i] + amp * T::from_f64_lossy(rng.next_symmetric());
            i += step;
        }
    }
    subgrid_tail(&mut values, 1, s, n, &mut rng);
    SampledCurve::from_values(n, values)
}

/// Diamond-square surface with per-level amplitude `2^{-(3-s) level}`;
/// `s` in `[2, 3]` is the target dimension.  Displacements are drawn in a
/// fixed row-major order per level, so output depends only on `(s, seed, n)`.
/// Successive random additions and the sub-grid roll-up as in
/// [`midpoint_curve`].
pub fn midpoint_surface<T: Real>(s: f64, seed: u64, n: u32) -> Result<SampledSurface<T>> {
    if !(2.0..=3.0).contains(&s) {
        return Err(Error::InvalidParameter(format!(
            "midpoint surface target dimension s={s} outside [2, 3]"
        )));
    }
    let w = axis_len(n);
    let mut rng = SplitMix64::new(seed);
    let mut values = vec![T::zero(); w * w];
    let idx = |i: usize, j: usize| i * w + j;
    for &(i, j) in &[(0, 0), (0, w - 1), (w - 1, 0), (w - 1, w - 1)] {
        values[idx(i, j)] = T::from_f64_lossy(rng.next_symmetric());
    }
    let quarter = T::from_f64_lossy(0.25);
    for level in 1..=n {
        let step = 1usize << (n - level + 1);
        let half = step / 2;
        let amp = level_amplitude::<T>(2, s, level);
        // Diamond step: square centers.
        let mut i = half;
        while i < w {
            let mut j = half;
            while j < w {
                let avg = (values[idx(i - half, j - half)]
                    + values[idx(i - half, j + half)]
                    + values[idx(i + half, j - half)]
                    + values[idx(i + half, j + half)])
                    * quarter;
                values[idx(i, j)] = avg + amp * T::from_f64_lossy(rng.next_symmetric());
                j += step;
            }
            i += step;
        }
        // Square step: edge midpoints, axial neighbors at distance `half`.
        for i in (0..w).step_by(half) {
            let j0 = if (i / half) % 2 == 0 { half } else { 0 };
            for j in (j0..w).step_by(step) {
                let mut sum = T::zero();
                let mut count = 0;
                if i >= half {
                    sum = sum + values[idx(i - half, j)];
                    count += 1;
                }
                if i + half < w {
                    sum = sum + values[idx(i + half, j)];
                    count += 1;
                }
                if j >= half {
                    sum = sum + values[idx(i, j - half)];
                    count += 1;
                }
                if j + half < w {
                    sum = sum + values[idx(i, j + half)];
                    count += 1;
                }
                let avg = sum / T::from_usize(count).unwrap();
                values[idx(i, j)] = avg + amp * T::from_f64_lossy(rng.next_symmetric());
            }
        }
        // successive random additions over the live lattice
        for i in (0..w).step_by(half) {
            for j in (0..w).step_by(half) {
                values[idx(i, j)] = values[idx(i, j)] + amp * T::from_f64_lossy(rng.next_symmetric());
            }
        }
    }
    subgrid_tail(&mut values, 2, s, n, &mut rng);
    SampledSurface::from_values(n, values)
}

/// Seeded nondecreasing staircase used as a dimension-1 fixture.
///
/// Increments are 8-bit draws quantized to multiples of `2^{-(n+8)}`, so all
/// partial sums are exact dyadic rationals below 1 and per-cell ranges
/// telescope exactly.
pub fn monotone_curve<T: Real>(n: u32, seed: u64) -> Result<SampledCurve<T>> {
    let len = axis_len(n);
    let mut rng = SplitMix64::new(seed);
    let quantum = T::exp2_i32(-((n + 8) as i32));
    let mut values = Vec::with_capacity(len);
    let mut acc = T::zero();
    values.push(acc);
    for _ in 1..len {
        let byte = rng.next_u64() & 0xFF;
        acc = acc + T::from_u64(byte).unwrap() * quantum;
        values.push(acc);
    }
    SampledCurve::from_values(n, values)
}

/// How the probe's generating curve is realized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbeFamily {
    Weierstrass { base: u32 },
    Midpoint,
}

/// A y-independent probe surface together with its generating curve.
#[derive(Debug, Clone)]
pub struct ProbeSurface<T> {
    pub alpha: f64,
    pub curve: SampledCurve<T>,
    pub surface: SampledSurface<T>,
}

/// Builds the probe `Psi_alpha = extrude(psi)` where `psi` has target
/// dimension `alpha - 1`; `alpha` in `[2, 3]`.
pub fn probe_surface<T: Real>(
    alpha: f64,
    family: ProbeFamily,
    seed: u64,
    n: u32,
) -> Result<ProbeSurface<T>> {
    if !(2.0..=3.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!("probe alpha={alpha} outside [2, 3]")));
    }
    let curve = match family {
        ProbeFamily::Weierstrass { base } => weierstrass_curve(alpha - 1.0, base, seed, n)?,
        ProbeFamily::Midpoint => midpoint_curve(alpha - 1.0, seed, n)?,
    };
    let surface = extrude(&curve);
    Ok(ProbeSurface { alpha, curve, surface })
}

/// Smooth-rimmed surface hiding a rough patch inside a central depression.
///
/// `f(x,y) = (y - 1/2)^2 + 0.05 cos(2 pi x) + tent(y) (0.45 w(x) - 0.5)`
/// where `tent` is supported on `[1/4, 3/4]` and `w` is a normalized rough
/// curve.  The depressed values never reach the rim (the pit term stays
/// nonpositive and the parabola is at least 3/16 below the rim on the tent
/// support), so the skyline is the smooth profile `1/4 + 0.05 cos(2 pi x)`
/// while the surface itself carries the roughness.
pub fn depression_surface<T: Real>(n: u32, seed: u64) -> Result<SampledSurface<T>> {
    let rough: SampledCurve<T> = weierstrass_curve(1.9, 2, seed, n)?;
    let sup = rough
        .values()
        .iter()
        .fold(T::zero(), |acc, &v| acc.max(v.abs()));
    let w = axis_len(n);
    let step = T::exp2_i32(-(n as i32));
    let tau = T::PI() + T::PI();
    let half = T::from_f64_lossy(0.5);
    let c_rough = T::from_f64_lossy(0.45);
    let c_depth = half;
    let c_rim = T::from_f64_lossy(0.05);
    let four = T::from_f64_lossy(4.0);
    let mut values = Vec::with_capacity(w * w);
    for i in 0..w {
        let x = T::from_usize(i).unwrap() * step;
        let normalized = if sup > T::zero() { rough.value(i) / sup } else { T::zero() };
        let pit = c_rough * normalized - c_depth;
        let rim = c_rim * (tau * x).cos();
        for j in 0..w {
            let y = T::from_usize(j).unwrap() * step;
            let centered = y - half;
            let tent = (T::one() - four * centered.abs()).max(T::zero());
            values.push(centered * centered + rim + tent * pit);
        }
    }
    SampledSurface::from_values(n, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent Takagi oracle: evaluates the series with real-coordinate
    /// arithmetic (`x.fract()` based distance) instead of grid index bit
    /// tricks.  Both paths are exact at dyadic points, so they must agree
    /// bit-for-bit.
    fn takagi_reference(x: f64, terms: u32) -> f64 {
        let mut acc = 0.0;
        for k in 0..=terms {
            let scaled = 2f64.powi(k as i32) * x;
            let frac = scaled - scaled.floor();
            let dist = frac.min(1.0 - frac);
            acc += 2f64.powi(-(k as i32)) * dist;
        }
        acc
    }

    #[test]
    fn takagi_endpoint_and_midpoint_values() {
        let t: SampledCurve<f64> = takagi_curve(4).unwrap();
        assert_eq!(t.value(0), 0.0);
        assert_eq!(t.value(16), 0.0);
        // T(1/2) = 1/2: only the k=0 term survives at dyadic level 1.
        assert_eq!(t.value(8), 0.5);
    }

    #[test]
    fn takagi_matches_direct_series_oracle() {
        let n = 10;
        let t: SampledCurve<f64> = takagi_curve(n).unwrap();
        for i in 0..=(1usize << n) {
            let x = i as f64 / (1u64 << n) as f64;
            assert_eq!(t.value(i), takagi_reference(x, n), "grid index {i}");
        }
    }

    #[test]
    fn weierstrass_rejects_bad_dimension() {
        assert!(weierstrass_curve::<f64>(0.9, 2, 0, 8).is_err());
        assert!(weierstrass_curve::<f64>(2.1, 2, 0, 8).is_err());
        assert!(weierstrass_curve::<f64>(1.5, 1, 0, 8).is_err());
    }

    #[test]
    fn weierstrass_tail_term_is_bounded_by_its_amplitude() {
        let s = 1.5;
        let b = 2;
        let n = 10;
        let k = 12;
        let short: SampledCurve<f64> = weierstrass_curve_with_terms(s, b, 3, n, k).unwrap();
        let long: SampledCurve<f64> = weierstrass_curve_with_terms(s, b, 3, n, k + 1).unwrap();
        let bound = (b as f64).powf((s - 2.0) * (k + 1) as f64);
        for i in 0..short.len() {
            assert!((long.value(i) - short.value(i)).abs() <= bound);
        }
    }

    #[test]
    fn s_equal_one_is_a_single_cosine() {
        let w: SampledCurve<f64> = weierstrass_curve(1.0, 2, 5, 6).unwrap();
        let mut rng = SplitMix64::new(5);
        let phase = rng.next_f64() * std::f64::consts::TAU;
        for i in 0..w.len() {
            // the generator reduces arguments mod 1, so compare against the
            // wrapped coordinate
            let x = (i % 64) as f64 / 64.0;
            assert_eq!(w.value(i), (std::f64::consts::TAU * x + phase).cos());
        }
    }

    #[test]
    fn midpoint_is_deterministic_per_seed() {
        let a: SampledSurface<f64> = midpoint_surface(2.5, 7, 8).unwrap();
        let b: SampledSurface<f64> = midpoint_surface(2.5, 7, 8).unwrap();
        assert_eq!(a.values(), b.values());
        let c: SampledSurface<f64> = midpoint_surface(2.5, 8, 8).unwrap();
        assert_ne!(a.values(), c.values());

        let d: SampledCurve<f64> = midpoint_curve(1.5, 3, 10).unwrap();
        let e: SampledCurve<f64> = midpoint_curve(1.5, 3, 10).unwrap();
        assert_eq!(d.values(), e.values());
    }

    #[test]
    fn monotone_curve_is_nondecreasing_with_exact_dyadic_steps() {
        let c: SampledCurve<f64> = monotone_curve(12, 99).unwrap();
        let quantum = 2f64.powi(-20);
        for i in 1..c.len() {
            let d = c.value(i) - c.value(i - 1);
            assert!(d >= 0.0);
            // increments are multiples of the quantum, exactly
            assert_eq!((d / quantum).fract(), 0.0);
        }
        assert!(c.value(c.len() - 1) < 1.0);
    }

    #[test]
    fn probe_keeps_its_generating_curve() {
        let p: ProbeSurface<f64> =
            probe_surface(2.5, ProbeFamily::Weierstrass { base: 2 }, 1, 6).unwrap();
        for j in 0..p.surface.width() {
            let sl = crate::sampling::slice(&p.surface, j).unwrap();
            assert_eq!(sl.values(), p.curve.values());
        }
        assert!(probe_surface::<f64>(3.5, ProbeFamily::Midpoint, 0, 4).is_err());
    }

    #[test]
    fn spec_roundtrips_through_key_value_block() {
        let specs = [
            GeneratorSpec::Weierstrass { target_dim: 1.5, base: 3, seed: 42 },
            GeneratorSpec::Midpoint { target_dim: 2.5, seed: 7 },
            GeneratorSpec::Takagi,
            GeneratorSpec::MonotoneEnvelope { seed: 11 },
            GeneratorSpec::ClosedForm(ClosedForm::Constant(0.25)),
            GeneratorSpec::ClosedForm(ClosedForm::Depression { seed: 3 }),
        ];
        for spec in specs {
            let block = spec.to_block();
            let back = GeneratorSpec::parse_block(&block).unwrap();
            assert_eq!(back, spec);
        }
    }

    #[test]
    fn sample_curve_rejects_surface_only_forms() {
        let spec = GeneratorSpec::ClosedForm(ClosedForm::PlaneSum);
        assert!(sample_curve::<f64>(&spec, 4).is_err());
        assert!(sample_surface::<f64>(&spec, 4).is_ok());
        let takagi = GeneratorSpec::Takagi;
        assert!(sample_surface::<f64>(&takagi, 4).is_err());
    }
}
