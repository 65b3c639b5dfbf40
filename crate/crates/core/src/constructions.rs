//! Forcer and modifier surfaces.
//!
//! A *forcer* for a finite family `K` of surfaces and a line `y = y0` is a
//! y-only surface `-F(y)` such that adding it to any member of `K` pins
//! every column maximum to the `y0` line.  A *modifier* for a curve `g` is
//! a surface whose restriction to `y = y0` is exactly `g`, which never
//! exceeds that restriction, and whose graph dimension is as small as a
//! surface allows — its construction blends a ladder of slope-clamped
//! approximants of `g` across dyadic strips.
//!
//! The defining postconditions are asserted with zero tolerance, so the
//! numerics must deliver them in floating point, not just in exact
//! arithmetic.  Two devices make that possible: the forcer's difference
//! field is rounded *up* whenever a subtraction is inexact (the envelope
//! then dominates the exact differences, and monotone rounding carries the
//! comparison through every later addition), and the approximant ladder's
//! slope-limited erosion rounds its increments *down* (so rung slopes never
//! exceed the clamp even after rounding).

use crate::boxdim::{cell_range_sum, estimate_dims, scale_table, DimensionEstimate, GridSample};
use crate::error::{Error, Result};
use crate::real::{add_round_down, add_round_up, Real};
use crate::sampling::{axis_len, SampledCurve, SampledSurface};

/// Intermediate stages of a forcer construction.
#[derive(Debug, Clone)]
pub struct ForcerParts<T> {
    /// `phi(x, y) = max_{f in K} (f(x,y) - f(x,y0))`, rounded upward.
    pub phi_sup: SampledSurface<T>,
    /// `g*(y) = max_x phi(x, y)`, stored as samples over the y-axis.
    pub g_star: SampledCurve<T>,
    /// Monotone envelope `F(y)`: running max of `g*` moving away from `y0`.
    pub envelope: SampledCurve<T>,
    /// The forcer surface `-F(y)`, constant along x.
    pub forcer: SampledSurface<T>,
    pub y0_index: usize,
}

/// Exhaustive postcondition sweep for a forcer.
#[derive(Debug, Clone, Copy)]
pub struct ForcerReport<T> {
    /// `max over f in K, grid (x,y) of (f+forcer)(x,y) - (f+forcer)(x,y0)`;
    /// nonpositive iff every column maximum sits on the `y0` line.
    pub worst_excess: T,
    /// `forcer(x, y0) == 0` for every `x`.
    pub zero_on_line: bool,
    pub holds: bool,
}

/// Builds the forcer for a finite family `K` (all surfaces on one grid) and
/// a grid line `y0`.
///
/// Pipeline: difference field `phi` (upward-rounded), its x-sup `g*`, the
/// running-max envelope `F` on either side of `y0`, and the surface `-F(y)`.
pub fn forcer<T: Real>(family: &[SampledSurface<T>], y0_index: usize) -> Result<ForcerParts<T>> {
    let first = family.first().ok_or(Error::EmptyInput("forcer needs a nonempty family"))?;
    let n = first.n();
    let w = first.width();
    if y0_index >= w {
        return Err(Error::IndexOutOfRange { index: y0_index, max: w - 1 });
    }
    for f in family {
        if f.n() != n {
            return Err(Error::ShapeMismatch { expected: n, got: f.n() });
        }
    }

    let mut phi = vec![T::neg_infinity(); w * w];
    for f in family {
        for i in 0..w {
            let base = f.value(i, y0_index);
            let row = f.row(i);
            let out = &mut phi[i * w..(i + 1) * w];
            for (slot, &v) in out.iter_mut().zip(row) {
                // upward-rounded difference: phi dominates the exact v - base
                let diff = add_round_up(v, -base);
                *slot = slot.max(diff);
            }
        }
    }
    let phi_sup = SampledSurface::from_values(n, phi)?;

    let g_star_values: Vec<T> = (0..w)
        .map(|j| {
            (0..w).fold(T::neg_infinity(), |acc, i| acc.max(phi_sup.value(i, j)))
        })
        .collect();
    let g_star = SampledCurve::from_values(n, g_star_values)?;

    let mut envelope = g_star.values().to_vec();
    for j in (0..y0_index).rev() {
        envelope[j] = envelope[j].max(envelope[j + 1]);
    }
    for j in y0_index + 1..w {
        envelope[j] = envelope[j].max(envelope[j - 1]);
    }
    let envelope = SampledCurve::from_values(n, envelope)?;

    let mut forcer_values = Vec::with_capacity(w * w);
    for _ in 0..w {
        for j in 0..w {
            let fj = envelope.value(j);
            forcer_values.push(if fj == T::zero() { T::zero() } else { -fj });
        }
    }
    let forcer = SampledSurface::from_values(n, forcer_values)?;

    Ok(ForcerParts { phi_sup, g_star, envelope, forcer, y0_index })
}

impl<T: Real> ForcerParts<T> {
    /// Sweeps both postconditions over every member and grid point.
    pub fn check(&self, family: &[SampledSurface<T>]) -> Result<ForcerReport<T>> {
        let w = self.forcer.width();
        let mut worst = T::neg_infinity();
        for f in family {
            let sum = SampledSurface::lin_comb(T::one(), f, T::one(), &self.forcer)?;
            for i in 0..w {
                let pinned = sum.value(i, self.y0_index);
                for &v in sum.row(i) {
                    worst = worst.max(v - pinned);
                }
            }
        }
        let zero_on_line =
            (0..w).all(|i| self.forcer.value(i, self.y0_index) == T::zero());
        Ok(ForcerReport {
            worst_excess: worst,
            zero_on_line,
            holds: worst <= T::zero() && zero_on_line,
        })
    }
}

/// Ladder of slope-clamped approximants below a target curve.
#[derive(Debug, Clone)]
pub struct ApproximantLadder<T> {
    pub target: SampledCurve<T>,
    /// Rung `k` (index `k` in the vector) has slope at most `2^k` and sits
    /// at least `offsets[k]` below the target's envelope.
    pub rungs: Vec<SampledCurve<T>>,
    pub offsets: Vec<T>,
    /// Offset halving level per rung; repeated values record the schedule's
    /// holds.
    pub schedule: Vec<u32>,
}

/// Ladder invariant sweep.
#[derive(Debug, Clone, Copy)]
pub struct LadderReport {
    /// rungs are pointwise nondecreasing in `k`
    pub monotone_in_k: bool,
    /// every rung sits at or below the target and the sup-gap is nonincreasing
    pub below_target: bool,
    pub gap_nonincreasing: bool,
    /// rung `k` obeys `|p(x+h) - p(x)| <= 2^k h` on adjacent samples
    pub slope_clamped: bool,
}

impl LadderReport {
    pub fn all_hold(&self) -> bool {
        self.monotone_in_k && self.below_target && self.gap_nonincreasing && self.slope_clamped
    }
}

/// Largest function below `h` with per-interval slope at most `step`
/// (two-pass erosion).  Increments round downward so the slope bound holds
/// for the stored floats, not just the exact values.
fn slope_limited_envelope<T: Real>(h: &[T], step: T) -> Vec<T> {
    let mut c = h.to_vec();
    for i in 1..c.len() {
        c[i] = c[i].min(add_round_down(c[i - 1], step));
    }
    for i in (0..c.len() - 1).rev() {
        c[i] = c[i].min(add_round_down(c[i + 1], step));
    }
    c
}

/// Builds the approximant ladder `p_0 ..= p_k_max` for `g`.
///
/// Rung `k` is the slope-`2^k` envelope of `g - eps_k`, floored at
/// `-sup|g|`; the offsets `eps_k = sup|g| * 2^-r(k)` halve only when the
/// clamp has caught up (the envelope error at the current clamp is within
/// the next offset), repeating rungs otherwise.
pub fn monotone_approximants<T: Real>(
    g: &SampledCurve<T>,
    k_max: u32,
) -> Result<ApproximantLadder<T>> {
    if k_max < 1 {
        return Err(Error::InvalidParameter("ladder needs k_max >= 1".into()));
    }
    let n = g.n();
    let sup = g.sup_norm();
    let floor = -sup;
    let mut rungs = Vec::with_capacity(k_max as usize + 1);
    let mut offsets = Vec::with_capacity(k_max as usize + 1);
    let mut schedule = Vec::with_capacity(k_max as usize + 1);
    let mut level: u32 = 0;
    for k in 0..=k_max {
        if k > 0 {
            // halve the offset only when the clamped envelope of g itself
            // tracks g within the halved offset
            let step = T::exp2_i32(k as i32 - n as i32);
            let env = slope_limited_envelope(g.values(), step);
            let env_err = g
                .values()
                .iter()
                .zip(&env)
                .map(|(&a, &b)| a - b)
                .fold(T::zero(), |acc, d| acc.max(d));
            let candidate = sup * T::exp2_i32(-(level as i32 + 1));
            if env_err <= candidate {
                level += 1;
            }
        }
        let eps = sup * T::exp2_i32(-(level as i32));
        let shifted: Vec<T> = g.values().iter().map(|&v| v - eps).collect();
        let step = T::exp2_i32(k as i32 - n as i32);
        let mut env = slope_limited_envelope(&shifted, step);
        for v in env.iter_mut() {
            *v = v.max(floor);
        }
        rungs.push(SampledCurve::from_values(n, env)?);
        offsets.push(eps);
        schedule.push(level);
    }
    Ok(ApproximantLadder { target: g.clone(), rungs, offsets, schedule })
}

impl<T: Real> ApproximantLadder<T> {
    /// Exhaustive invariant sweep over the grid.
    pub fn check(&self) -> LadderReport {
        let g = &self.target;
        let n = g.n();
        let monotone_in_k = self.rungs.windows(2).all(|pair| {
            pair[0]
                .values()
                .iter()
                .zip(pair[1].values())
                .all(|(&lo, &hi)| lo <= hi)
        });
        let below_target = self.rungs.iter().all(|p| {
            p.values().iter().zip(g.values()).all(|(&pv, &gv)| pv <= gv)
        });
        let gaps: Vec<T> = self
            .rungs
            .iter()
            .map(|p| {
                g.values()
                    .iter()
                    .zip(p.values())
                    .map(|(&gv, &pv)| gv - pv)
                    .fold(T::zero(), |acc, d| acc.max(d))
            })
            .collect();
        let gap_nonincreasing = gaps.windows(2).all(|w| w[1] <= w[0]);
        let slope_clamped = self.rungs.iter().enumerate().all(|(k, p)| {
            let bound = T::exp2_i32(k as i32 - n as i32);
            p.values().windows(2).all(|w| (w[1] - w[0]).abs() <= bound)
        });
        LadderReport { monotone_in_k, below_target, gap_nonincreasing, slope_clamped }
    }
}

/// The strip blend weight: `q(t) = 2^k t - 1` for `t` in the `k`-th dyadic
/// strip `[2^-k, 2^-k+1)`, with `q(0) = 0` and `q(1) = 1`.
pub fn q_profile<T: Real>(t: T) -> T {
    if t <= T::zero() {
        return T::zero();
    }
    if t >= T::one() {
        return T::one();
    }
    let k = strip_index_of(t);
    q_on_strip(t, k)
}

/// `q` evaluated with an explicit strip index: `2^k t - 1`.
pub fn q_on_strip<T: Real>(t: T, k: u32) -> T {
    T::exp2_i32(k as i32) * t - T::one()
}

/// The `k` with `t` in `[2^-k, 2^-k+1)`, for `t` in `(0, 1)`.
fn strip_index_of<T: Real>(t: T) -> u32 {
    let mut k = (-t.to_f64_lossy().log2()).floor() as i32 + 1;
    if k < 1 {
        k = 1;
    }
    // float log can land one strip off at the boundary; nudge exactly
    let mut k = k as u32;
    loop {
        let lo = T::exp2_i32(-(k as i32));
        let hi = T::exp2_i32(-(k as i32) + 1);
        if t < lo {
            k += 1;
        } else if t >= hi {
            k -= 1;
        } else {
            return k;
        }
    }
}

/// Builds the modifier surface `M` for `g` at the grid line `y0`:
/// `M(x, y0) = g(x)` exactly, `M <= g` columnwise, and across the `k`-th
/// dyadic strip of `t = |y - y0|` the values blend rungs `k-1` and `k` of
/// the approximant ladder: `q(t) p_{k-1}(x) + (1 - q(t)) p_k(x)`.
///
/// Rows closer to `y0` than `2^-k_max` use the last rung unblended; with
/// `k_max = n` (the default choice in the CLI) no such rows exist.
pub fn modifier<T: Real>(
    g: &SampledCurve<T>,
    y0_index: usize,
    k_max: u32,
) -> Result<SampledSurface<T>> {
    let n = g.n();
    if k_max > n {
        return Err(Error::ScaleOutOfRange { m: k_max, n });
    }
    if k_max < 1 {
        return Err(Error::InvalidParameter("modifier needs k_max >= 1".into()));
    }
    let w = axis_len(n);
    if y0_index >= w {
        return Err(Error::IndexOutOfRange { index: y0_index, max: w - 1 });
    }
    let ladder = monotone_approximants(g, k_max)?;
    modifier_from_ladder(&ladder, y0_index)
}

/// As [`modifier`] but reusing an existing ladder.
pub fn modifier_from_ladder<T: Real>(
    ladder: &ApproximantLadder<T>,
    y0_index: usize,
) -> Result<SampledSurface<T>> {
    let g = &ladder.target;
    let n = g.n();
    let w = axis_len(n);
    let k_max = (ladder.rungs.len() - 1) as u32;
    let scale = T::exp2_i32(-(n as i32));

    // Precompute each distinct row (one per y index), then assemble.
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(w);
    for j in 0..w {
        if j == y0_index {
            rows.push(g.values().to_vec());
            continue;
        }
        let dj = j.abs_diff(y0_index);
        let t = T::from_usize(dj).unwrap() * scale;
        let row = if dj == 1usize << n {
            // t = 1: q = 1, pure rung 0
            ladder.rungs[0].values().to_vec()
        } else {
            let k = n - (dj as u64).ilog2();
            if k > k_max {
                ladder.rungs[k_max as usize].values().to_vec()
            } else {
                let q = q_on_strip(t, k);
                let one_minus_q = T::one() - q;
                let upper = ladder.rungs[(k - 1) as usize].values();
                let lower = ladder.rungs[k as usize].values();
                upper
                    .iter()
                    .zip(lower)
                    .map(|(&a, &b)| q * a + one_minus_q * b)
                    .collect()
            }
        };
        rows.push(row);
    }

    let mut values = Vec::with_capacity(w * w);
    for i in 0..w {
        for row in rows.iter() {
            values.push(row[i]);
        }
    }
    SampledSurface::from_values(n, values)
}

/// Zero-tolerance modifier postconditions plus the per-scale range-sum
/// budget.
#[derive(Debug, Clone)]
pub struct ModifierReport<T> {
    /// `M(x, y0) == g(x)` bit-exactly.
    pub restriction_exact: bool,
    /// `M(x, y) <= g(x)` everywhere.
    pub dominated: bool,
    /// Per scale `m`: `(range_sum, budget)` with
    /// `budget = sides * c * m * 2^m + 2 (2^m + 1) * 2 sup|M|`,
    /// `c = 3/2 + 2 sup|g|`.
    pub range_rows: Vec<(u32, T, T)>,
    pub range_bound_holds: bool,
}

impl<T> ModifierReport<T> {
    pub fn all_hold(&self) -> bool {
        self.restriction_exact && self.dominated && self.range_bound_holds
    }
}

/// The strip-count constant `c = 3/2 + 2 sup|g|` from the modifier's
/// dimension budget.
pub fn modifier_constant<T: Real>(g: &SampledCurve<T>) -> T {
    T::from_f64_lossy(1.5) + (T::one() + T::one()) * g.sup_norm()
}

/// Checks the modifier postconditions and the per-scale range-sum budget
/// for every `m = 1..=m_max`.
pub fn modifier_check<T: Real>(
    m_surface: &SampledSurface<T>,
    g: &SampledCurve<T>,
    y0_index: usize,
    m_max: u32,
) -> Result<ModifierReport<T>> {
    let w = m_surface.width();
    let restriction_exact = (0..w).all(|i| m_surface.value(i, y0_index) == g.value(i));
    let dominated = (0..w).all(|i| {
        let gi = g.value(i);
        m_surface.row(i).iter().all(|&v| v <= gi)
    });

    let c = modifier_constant(g);
    let sup_m = m_surface.sup_norm();
    let two = T::one() + T::one();
    let sides = if y0_index == 0 || y0_index == w - 1 { T::one() } else { two };
    let mut range_rows = Vec::new();
    let mut range_bound_holds = true;
    for m in 1..=m_max {
        let sum = cell_range_sum(m_surface, m)?;
        let pow = T::exp2_i32(m as i32);
        let budget =
            sides * c * T::from_u32(m).unwrap() * pow + two * (pow + T::one()) * two * sup_m;
        range_bound_holds &= sum <= budget;
        range_rows.push((m, sum, budget));
    }
    Ok(ModifierReport { restriction_exact, dominated, range_rows, range_bound_holds })
}

/// Dimension check for a modifier: the estimate plus the slack implied by a
/// `c n 4^n` box budget.
#[derive(Debug, Clone)]
pub struct ModifierDimReport<T> {
    pub estimate: DimensionEstimate<T>,
    /// `log2(c n) / n`: the estimator headroom the budget allows above 2.
    pub slack: T,
    pub upper_within_slack: bool,
}

/// Estimates the modifier's dimension and checks
/// `upper_est <= 2 + log2(c n)/n`.
pub fn modifier_dim_check<T: Real>(
    m_surface: &SampledSurface<T>,
    g: &SampledCurve<T>,
    m_min: u32,
    m_max: u32,
    window: usize,
) -> Result<ModifierDimReport<T>> {
    let table = scale_table(m_surface, m_min, m_max, "modifier")?;
    let estimate = estimate_dims(&table, window)?;
    let n = m_surface.n();
    let c = modifier_constant(g).to_f64_lossy();
    let slack = T::from_f64_lossy((c * n as f64).log2() / n as f64);
    let two = T::one() + T::one();
    let upper_within_slack = estimate.upper_est <= two + slack;
    Ok(ModifierDimReport { estimate, slack, upper_within_slack })
}

/// Composite scenario: two modifiers riding one forcer, with the horizon
/// identities checked bit-exactly and the horizon dimensions estimated.
#[derive(Debug, Clone)]
pub struct TightScenarioReport<T> {
    /// `H(f0 + F + M_i) == f0(.,y0) + f_i` bit-exactly, per modifier.
    pub identity_exact: [bool; 2],
    pub horizon_estimates: [DimensionEstimate<T>; 2],
    pub base_slice_estimate: DimensionEstimate<T>,
}

/// Builds `f0 + forcer(K, y0) + modifier(f_i, y0)` for two prescribed
/// curves and reports whether each composite's horizon is exactly the `y0`
/// slice of `f0` plus the curve, together with the horizon dimension
/// estimates.
pub fn theorem_tight_scenario<T: Real>(
    family: &[SampledSurface<T>],
    curve_rough: &SampledCurve<T>,
    curve_tame: &SampledCurve<T>,
    y0_index: usize,
    m_min: u32,
    m_max: u32,
    window: usize,
) -> Result<TightScenarioReport<T>> {
    let parts = forcer(family, y0_index)?;
    let f0 = &family[0];
    let base = SampledSurface::lin_comb(T::one(), f0, T::one(), &parts.forcer)?;
    let f0_slice = crate::sampling::slice(f0, y0_index)?;

    let mut identity_exact = [false; 2];
    let mut estimates = Vec::with_capacity(2);
    for (slot, curve) in [curve_rough, curve_tame].into_iter().enumerate() {
        let k_max = curve.n();
        let m_surface = modifier(curve, y0_index, k_max)?;
        let composite = SampledSurface::lin_comb(T::one(), &base, T::one(), &m_surface)?;
        let h = crate::horizon::horizon(&composite);
        let expected = SampledCurve::lin_comb(T::one(), &f0_slice, T::one(), curve)?;
        identity_exact[slot] = h == expected;
        let table = scale_table(&h, m_min, m_max, "composite horizon")?;
        estimates.push(estimate_dims(&table, window)?);
    }
    let slice_table = scale_table(&f0_slice, m_min, m_max, "f0 slice")?;
    let base_slice_estimate = estimate_dims(&slice_table, window)?;
    Ok(TightScenarioReport {
        identity_exact,
        horizon_estimates: [estimates[0], estimates[1]],
        base_slice_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{midpoint_surface, takagi_curve, weierstrass_curve};
    use crate::horizon::horizon;
    use crate::sampling::extrude;

    #[test]
    fn forcer_of_plane_y_is_minus_y() {
        // K = {f(x,y) = y}, y0 = 0: g*(y) = y, F(y) = y, forcer = -y.
        let f = SampledSurface::from_fn(4, |_: f64, y: f64| y).unwrap();
        let parts = forcer(&[f.clone()], 0).unwrap();
        for j in 0..parts.envelope.len() {
            assert_eq!(parts.envelope.value(j), j as f64 / 16.0);
            assert_eq!(parts.forcer.value(3, j), -(j as f64) / 16.0);
        }
        assert_eq!(parts.forcer.value(0, 0), 0.0);
        // f + forcer is identically f(x, 0) = 0
        let sum = SampledSurface::lin_comb(1.0, &f, 1.0, &parts.forcer).unwrap();
        assert!(sum.values().iter().all(|&v| v == 0.0));
        assert!(parts.check(&[f]).unwrap().holds);
    }

    #[test]
    fn forcer_of_extrusion_is_zero() {
        let psi: SampledCurve<f64> = takagi_curve(5).unwrap();
        let f = extrude(&psi);
        let parts = forcer(&[f.clone()], 7).unwrap();
        assert!(parts.forcer.values().iter().all(|&v| v == 0.0));
        assert!(parts.check(&[f]).unwrap().holds);
    }

    #[test]
    fn forcer_pins_midpoint_family_exhaustively() {
        let family: Vec<SampledSurface<f64>> = (0..3)
            .map(|seed| midpoint_surface(2.4, seed, 7).unwrap())
            .collect();
        let y0 = (1 << 6) + 3; // off-center grid line
        let parts = forcer(&family, y0).unwrap();
        let report = parts.check(&family).unwrap();
        assert!(report.zero_on_line);
        assert!(report.worst_excess <= 0.0);
        assert!(report.holds);
        // envelope dominates g* and is monotone on both sides of y0
        for j in 0..parts.g_star.len() {
            assert!(parts.envelope.value(j) >= parts.g_star.value(j));
        }
        for j in 1..=y0 {
            assert!(parts.envelope.value(j - 1) >= parts.envelope.value(j));
        }
        for j in y0 + 1..parts.envelope.len() {
            assert!(parts.envelope.value(j) >= parts.envelope.value(j - 1));
        }
        assert_eq!(parts.envelope.value(y0), 0.0);
    }

    #[test]
    fn forcer_envelope_reads_dimension_one() {
        let family: Vec<SampledSurface<f64>> = (10..13)
            .map(|seed| midpoint_surface(2.5, seed, 9).unwrap())
            .collect();
        let parts = forcer(&family, 1 << 8).unwrap();
        let table = scale_table(&parts.envelope, 2, 8, "envelope").unwrap();
        let est = estimate_dims(&table, 4).unwrap();
        assert!((est.ols_slope - 1.0).abs() <= 0.1);
    }

    #[test]
    fn empty_family_and_bad_line_rejected() {
        let fam: Vec<SampledSurface<f64>> = vec![];
        assert!(forcer(&fam, 0).is_err());
        let f = SampledSurface::from_fn(3, |x: f64, _: f64| x).unwrap();
        assert!(forcer(&[f], 99).is_err());
    }

    #[test]
    fn ladder_of_constant_is_shifted_constant() {
        let g = SampledCurve::from_fn(6, |_: f64| 2.0).unwrap();
        let ladder = monotone_approximants(&g, 6).unwrap();
        assert!(ladder.check().all_hold());
        for (k, p) in ladder.rungs.iter().enumerate() {
            let eps = ladder.offsets[k];
            assert!(p.values().iter().all(|&v| v == 2.0 - eps));
        }
        // offsets decrease toward zero
        assert!(ladder.offsets.windows(2).all(|w| w[1] <= w[0]));
        assert!(*ladder.offsets.last().unwrap() < 0.5);
    }

    #[test]
    fn ladder_of_identity_keeps_unit_slope() {
        let g = SampledCurve::from_fn(6, |x: f64| x).unwrap();
        let ladder = monotone_approximants(&g, 4).unwrap();
        assert!(ladder.check().all_hold());
        // slope 1 <= 2^k for every rung: each rung is just g - eps_k
        for (k, p) in ladder.rungs.iter().enumerate().skip(1) {
            let eps = ladder.offsets[k];
            for i in 0..p.len() {
                assert_eq!(p.value(i), g.value(i) - eps);
            }
        }
    }

    #[test]
    fn takagi_ladder_invariants_exhaustive() {
        let g: SampledCurve<f64> = takagi_curve(10).unwrap();
        let ladder = monotone_approximants(&g, 10).unwrap();
        let report = ladder.check();
        assert!(report.monotone_in_k, "rungs must rise with k");
        assert!(report.below_target);
        assert!(report.gap_nonincreasing);
        assert!(report.slope_clamped);
    }

    #[test]
    fn q_profile_matches_strip_formula() {
        assert_eq!(q_profile(0.75f64), 0.5); // k=1 strip: 2*(3/4) - 1
        assert_eq!(q_profile(0.0f64), 0.0);
        assert_eq!(q_profile(1.0f64), 1.0);
        for k in 1..=10u32 {
            let t = 2f64.powi(-(k as i32));
            assert_eq!(q_profile(t), 0.0, "left endpoint of strip {k}");
        }
        // continuity across strip boundaries: q -> 1 at the top of strip k+1
        for k in 1..=8u32 {
            let boundary = 2f64.powi(-(k as i32));
            let just_below = boundary - 2f64.powi(-20);
            let q = q_profile(just_below);
            assert!((q - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn modifier_of_zero_curve_is_nonpositive() {
        let g = SampledCurve::from_fn(6, |_: f64| 0.0).unwrap();
        let m = modifier(&g, 0, 6).unwrap();
        assert!(m.values().iter().all(|&v| v <= 0.0));
        for i in 0..m.width() {
            assert_eq!(m.value(i, 0), 0.0);
        }
        let report = modifier_check(&m, &g, 0, 6).unwrap();
        assert!(report.all_hold());
    }

    #[test]
    fn modifier_of_takagi_postconditions_and_horizon() {
        let g: SampledCurve<f64> = takagi_curve(10).unwrap();
        let m = modifier(&g, 0, 10).unwrap();
        let report = modifier_check(&m, &g, 0, 10).unwrap();
        assert!(report.restriction_exact);
        assert!(report.dominated);
        assert!(report.range_bound_holds, "rows: {:?}", report.range_rows);
        // column maxima land on the y0 line, so the skyline is g itself
        assert_eq!(horizon(&m), g);
    }

    #[test]
    fn modifier_centered_line_both_sides() {
        let g: SampledCurve<f64> = takagi_curve(8).unwrap();
        let y0 = 1 << 7; // y = 1/2
        let m = modifier(&g, y0, 8).unwrap();
        let report = modifier_check(&m, &g, y0, 8).unwrap();
        assert!(report.all_hold());
        assert_eq!(horizon(&m), g);
    }

    #[test]
    fn modifier_dimension_stays_near_two() {
        // rough skyline, minimal surface dimension
        let g: SampledCurve<f64> = weierstrass_curve(1.9, 2, 5, 10).unwrap();
        let m = modifier(&g, 0, 10).unwrap();
        let rep = modifier_check(&m, &g, 0, 10).unwrap();
        assert!(rep.all_hold());
        let dim = modifier_dim_check(&m, &g, 2, 9, 4).unwrap();
        assert!(dim.upper_within_slack, "upper {} slack {}", dim.estimate.upper_est, dim.slack);
        assert_eq!(horizon(&m), g);
    }

    #[test]
    fn modifier_blend_continuous_across_strips() {
        let g: SampledCurve<f64> = takagi_curve(8).unwrap();
        let m = modifier(&g, 0, 8).unwrap();
        // shared grid lines at strip boundaries t = 2^-k belong to strip k
        // with q = 0, i.e. pure rung k; the strip above approaches the same
        // rung as q -> 1 from below.  Adjacent rows across the boundary
        // stay within the per-row blend increment.
        let ladder = monotone_approximants(&g, 8).unwrap();
        for k in 1..=7u32 {
            let j = 1usize << (8 - k); // t = 2^-k
            for i in 0..m.width() {
                assert_eq!(m.value(i, j), ladder.rungs[k as usize].value(i));
            }
        }
    }

    #[test]
    fn tight_scenario_identities_hold() {
        let family: Vec<SampledSurface<f64>> =
            vec![midpoint_surface(2.3, 11, 9).unwrap()];
        let rough: SampledCurve<f64> = weierstrass_curve(1.9, 2, 3, 9).unwrap();
        let tame: SampledCurve<f64> = crate::generators::monotone_curve(9, 5).unwrap();
        let rep = theorem_tight_scenario(&family, &rough, &tame, 0, 2, 8, 4).unwrap();
        assert!(rep.identity_exact[0]);
        assert!(rep.identity_exact[1]);
        // rough horizon reads high, tame horizon reads near the base slice
        assert!(rep.horizon_estimates[0].upper_est > 1.6);
    }

    #[test]
    fn lip_alpha_finite_on_modifier() {
        let g: SampledCurve<f64> = takagi_curve(6).unwrap();
        let m = modifier(&g, 0, 6).unwrap();
        let r = crate::spaces::lip_alpha(&m, 2.0).unwrap();
        assert!(r.exhaustive);
        assert!(r.value.is_finite() && r.value > 0.0);
    }
}
