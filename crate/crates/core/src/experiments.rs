//! Seeded Monte Carlo sweeps over scalar mixes `f + lambda g`.
//!
//! "Almost every lambda" statements are operationalized as sweeps over a
//! seeded sample of lambdas from `uniform[-L, L]` minus a dead zone around
//! zero; nonconforming draws are reported as exceptional candidates rather
//! than silently dropped, since a measure-zero exceptional set is unhittable
//! by continuous sampling and any observed violation means either estimator
//! noise or a structured exception (such as a cancellation lambda).

use rayon::prelude::*;

use crate::boxdim::{estimate_dims, scale_table, DimensionEstimate, GridSample};
use crate::error::{Error, Result};
use crate::generators::{probe_surface, ProbeFamily, ProbeSurface};
use crate::horizon::{horizon, horizon_gap, HorizonGapReport};
use crate::real::Real;
use crate::rng::SplitMix64;
use crate::sampling::SampledSurface;

/// Lambdas stay clear of zero by at least this radius.
pub const LAMBDA_DEAD_ZONE: f64 = 1e-6;
/// Default half-width of the lambda range.
pub const DEFAULT_LAMBDA_RANGE: f64 = 2.0;
/// Default number of lambda draws.
pub const DEFAULT_LAMBDA_COUNT: usize = 16;

/// Draws `count` distinct nonzero lambdas from `uniform[-range, range]`,
/// rejecting the dead zone around zero.
pub fn sample_lambdas(range: f64, count: usize, seed: u64) -> Vec<f64> {
    let mut rng = SplitMix64::new(seed);
    let mut out: Vec<f64> = Vec::with_capacity(count);
    while out.len() < count {
        let lambda = rng.next_symmetric() * range;
        if lambda.abs() <= LAMBDA_DEAD_ZONE || out.contains(&lambda) {
            continue;
        }
        out.push(lambda);
    }
    out
}

/// Per-lambda record of a sweep.
#[derive(Debug, Clone)]
pub struct LambdaRecord<T> {
    pub lambda: f64,
    pub sum_estimate: DimensionEstimate<T>,
    /// Horizon estimate of the mix, for surface sweeps.
    pub horizon_estimate: Option<DimensionEstimate<T>>,
    pub conforming: bool,
}

/// A completed sweep: one record per lambda plus the conformance summary.
#[derive(Debug, Clone)]
pub struct LambdaSweep<T> {
    pub records: Vec<LambdaRecord<T>>,
    pub conforming: usize,
    /// Lambdas whose estimates broke the expected bounds.
    pub exceptional: Vec<f64>,
    pub tolerance: T,
}

impl<T> LambdaSweep<T> {
    pub fn total(&self) -> usize {
        self.records.len()
    }
    pub fn conforming_fraction(&self) -> f64 {
        self.conforming as f64 / self.records.len() as f64
    }
}

/// Scale range and window used by every estimate of a sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepScales {
    pub m_min: u32,
    pub m_max: u32,
    pub window: usize,
}

/// Sweeps `f + lambda g` over seeded lambdas and checks each mix's
/// estimates against the baseline maxima: conforming means
/// `|upper - max(upper_f, upper_g)| <= tolerance` and
/// `lower >= max(lower_f, lower_g) - tolerance`.
pub fn sum_experiment<T: Real, S: GridSample<T>>(
    f: &S,
    g: &S,
    lambda_range: f64,
    lambda_count: usize,
    seed: u64,
    scales: SweepScales,
    tolerance: T,
) -> Result<LambdaSweep<T>> {
    let f_est = estimate_dims(&scale_table(f, scales.m_min, scales.m_max, "f")?, scales.window)?;
    let g_est = estimate_dims(&scale_table(g, scales.m_min, scales.m_max, "g")?, scales.window)?;
    let upper_target = f_est.upper_est.max(g_est.upper_est);
    let lower_target = f_est.lower_est.max(g_est.lower_est);

    let lambdas = sample_lambdas(lambda_range, lambda_count, seed);
    let records: Vec<LambdaRecord<T>> = lambdas
        .par_iter()
        .map(|&lambda| -> Result<LambdaRecord<T>> {
            let mix = S::combine(T::one(), f, T::from_f64_lossy(lambda), g)?;
            let table = scale_table(&mix, scales.m_min, scales.m_max, "f+lambda g")?;
            let est = estimate_dims(&table, scales.window)?;
            let conforming = (est.upper_est - upper_target).abs() <= tolerance
                && est.lower_est >= lower_target - tolerance;
            Ok(LambdaRecord { lambda, sum_estimate: est, horizon_estimate: None, conforming })
        })
        .collect::<Result<_>>()?;

    let conforming = records.iter().filter(|r| r.conforming).count();
    let exceptional = records
        .iter()
        .filter(|r| !r.conforming)
        .map(|r| r.lambda)
        .collect();
    Ok(LambdaSweep { records, conforming, exceptional, tolerance })
}

/// Probe sweep outcome: the sweep plus the probe that drove it.
#[derive(Debug, Clone)]
pub struct ProbeSweep<T> {
    pub probe: ProbeSurface<T>,
    pub sweep: LambdaSweep<T>,
    /// `alpha - 1`, the horizon's expected lower bound before tolerance.
    pub horizon_floor: f64,
}

/// Sweeps `f + lambda Psi_alpha` and checks, per lambda, that the mix's
/// dimension tracks `alpha` and its horizon obeys
/// `alpha - 1 - tol <= lower` and `raw upper <= 2 + upper_tol`.
#[allow(clippy::too_many_arguments)]
pub fn probe_experiment<T: Real>(
    f: &SampledSurface<T>,
    alpha: f64,
    probe_family: ProbeFamily,
    probe_seed: u64,
    lambda_range: f64,
    lambda_count: usize,
    seed: u64,
    scales: SweepScales,
    tolerance: T,
    upper_tolerance: T,
) -> Result<ProbeSweep<T>> {
    if !(2.0..=3.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!("probe alpha={alpha} outside [2, 3]")));
    }
    let probe = probe_surface::<T>(alpha, probe_family, probe_seed, f.n())?;
    let lambdas = sample_lambdas(lambda_range, lambda_count, seed);
    let alpha_t = T::from_f64_lossy(alpha);
    let two = T::one() + T::one();
    let records: Vec<LambdaRecord<T>> = lambdas
        .par_iter()
        .map(|&lambda| -> Result<LambdaRecord<T>> {
            let mix =
                SampledSurface::lin_comb(T::one(), f, T::from_f64_lossy(lambda), &probe.surface)?;
            let table = scale_table(&mix, scales.m_min, scales.m_max, "f+lambda psi")?;
            let est = estimate_dims(&table, scales.window)?;
            let h = horizon(&mix);
            let h_table = scale_table(&h, scales.m_min, scales.m_max, "horizon")?;
            let h_est = estimate_dims(&h_table, scales.window)?;
            let conforming = (est.ols_slope - alpha_t).abs() <= tolerance
                && h_est.lower_est >= alpha_t - T::one() - tolerance
                && h_est.raw_upper <= two + upper_tolerance;
            Ok(LambdaRecord {
                lambda,
                sum_estimate: est,
                horizon_estimate: Some(h_est),
                conforming,
            })
        })
        .collect::<Result<_>>()?;
    let conforming = records.iter().filter(|r| r.conforming).count();
    let exceptional = records
        .iter()
        .filter(|r| !r.conforming)
        .map(|r| r.lambda)
        .collect();
    Ok(ProbeSweep {
        probe,
        sweep: LambdaSweep { records, conforming, exceptional, tolerance },
        horizon_floor: alpha - 1.0,
    })
}

/// One row of the horizon-property census.
#[derive(Debug, Clone)]
pub struct CensusRow<T> {
    pub name: String,
    pub report: HorizonGapReport<T>,
}

/// The standard fixture zoo for the census: probes across an alpha grid,
/// midpoint surfaces, a modifier composite, the hidden-depression
/// counterexample, and a smooth plane.
pub fn census_fixtures<T: Real>(n: u32, seed: u64) -> Result<Vec<(String, SampledSurface<T>)>> {
    use crate::generators;
    let mut fixtures = Vec::new();
    fixtures.push((
        "plane".to_string(),
        SampledSurface::from_fn(n, |x, y| x + y)?,
    ));
    for (idx, alpha) in [2.2, 2.5, 2.8].into_iter().enumerate() {
        let probe = probe_surface::<T>(
            alpha,
            ProbeFamily::Weierstrass { base: 63 },
            seed.wrapping_add(idx as u64),
            n,
        )?;
        fixtures.push((format!("probe alpha={alpha}"), probe.surface));
    }
    for (idx, s) in [2.3, 2.5, 2.7].into_iter().enumerate() {
        fixtures.push((
            format!("midpoint s={s}"),
            generators::midpoint_surface(s, seed.wrapping_add(100 + idx as u64), n)?,
        ));
    }
    let takagi = generators::takagi_curve::<T>(n)?;
    fixtures.push((
        "modifier of takagi".to_string(),
        crate::constructions::modifier(&takagi, 0, n)?,
    ));
    fixtures.push((
        "hidden depression".to_string(),
        generators::depression_surface(n, seed.wrapping_add(200))?,
    ));
    Ok(fixtures)
}

/// Batch-runs the horizon gap diagnostic over named fixtures.
pub fn horizon_property_census<T: Real>(
    fixtures: &[(String, SampledSurface<T>)],
    scales: SweepScales,
    tolerance: T,
) -> Result<Vec<CensusRow<T>>> {
    fixtures
        .iter()
        .map(|(name, f)| {
            let report = horizon_gap(f, scales.m_min, scales.m_max, scales.window, tolerance)?;
            Ok(CensusRow { name: name.clone(), report })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{takagi_curve, weierstrass_curve};
    use crate::sampling::SampledCurve;

    const SCALES: SweepScales = SweepScales { m_min: 2, m_max: 9, window: 4 };

    #[test]
    fn lambdas_are_distinct_nonzero_and_reproducible() {
        let a = sample_lambdas(2.0, 32, 9);
        let b = sample_lambdas(2.0, 32, 9);
        assert_eq!(a, b);
        assert_eq!(a.len(), 32);
        for (i, &x) in a.iter().enumerate() {
            assert!(x.abs() > LAMBDA_DEAD_ZONE && x.abs() <= 2.0);
            assert!(!a[..i].contains(&x));
        }
    }

    #[test]
    fn sum_with_zero_g_reproduces_f() {
        let f: SampledCurve<f64> = takagi_curve(10).unwrap();
        let zero = SampledCurve::from_fn(10, |_: f64| 0.0).unwrap();
        let sweep = sum_experiment(&f, &zero, 2.0, 8, 3, SCALES, 0.05).unwrap();
        // every mix is f itself, so estimates match the baseline exactly
        assert_eq!(sweep.conforming, 8);
        let f_est = estimate_dims(&scale_table(&f, 2, 9, "f").unwrap(), 4).unwrap();
        for r in &sweep.records {
            assert_eq!(r.sum_estimate.upper_est, f_est.upper_est);
        }
    }

    #[test]
    fn cancellation_lambda_is_flagged() {
        // f = -g: lambda = 1 annihilates the mix.  Force it into the sweep
        // by checking that a sweep over a tiny interval around 1 reports
        // exceptional candidates.
        let g: SampledCurve<f64> = weierstrass_curve(1.6, 2, 4, 10).unwrap();
        let f = SampledCurve::lin_comb(-1.0, &g, 0.0, &g).unwrap();
        let mix = SampledCurve::lin_comb(1.0, &f, 1.0, &g).unwrap();
        // the exact cancellation collapses to the zero curve
        assert!(mix.values().iter().all(|&v| v == 0.0));
        let table = scale_table(&mix, 2, 9, "cancel").unwrap();
        let est = estimate_dims(&table, 4).unwrap();
        assert!(est.degenerate);
        // and a sweep drawing lambda = 1 exactly would mark it exceptional:
        // emulate by scoring the degenerate estimate against the baselines
        let g_est = estimate_dims(&scale_table(&g, 2, 9, "g").unwrap(), 4).unwrap();
        assert!(est.upper_est < g_est.upper_est - 0.05);
    }

    #[test]
    fn probe_experiment_on_zero_surface() {
        let zero = SampledSurface::from_fn(9, |_: f64, _: f64| 0.0).unwrap();
        let sweep = probe_experiment(
            &zero,
            2.5,
            ProbeFamily::Weierstrass { base: 63 },
            1,
            2.0,
            4,
            7,
            SweepScales { m_min: 1, m_max: 7, window: 3 },
            0.2,
            0.1,
        )
        .unwrap();
        // f = 0: the mix is lambda Psi, horizon lambda psi
        assert_eq!(sweep.sweep.conforming, 4, "exceptional: {:?}", sweep.sweep.exceptional);
    }

    #[test]
    fn census_runs_over_the_zoo() {
        let fixtures = census_fixtures::<f64>(9, 5).unwrap();
        assert!(fixtures.len() >= 8);
        let rows = horizon_property_census(
            &fixtures,
            SweepScales { m_min: 2, m_max: 8, window: 4 },
            0.1,
        )
        .unwrap();
        assert_eq!(rows.len(), fixtures.len());
        let depression = rows.iter().find(|r| r.name.contains("depression")).unwrap();
        assert!(!depression.report.verdict(), "hidden roughness must break the bounds");
        let plane = rows.iter().find(|r| r.name == "plane").unwrap();
        assert!(plane.report.verdict());
        for r in &rows {
            if r.name.starts_with("probe") {
                assert!((r.report.gap_low - 1.0).abs() <= 0.25, "{}: {:?}", r.name, r.report.gap_low);
            }
        }
    }
}
