//! The horizon (skyline) operator `H(f)(x) = max_y f(x, y)` and the
//! surface-vs-horizon dimension gap diagnostic.
//!
//! On the grid the sup along a column is the column maximum of the samples;
//! the continuous sup of the multilinear interpolant along a column equals
//! that maximum, so no correction term is needed.  Because additions of
//! column-constant values commute with the maximum even in floating point,
//! the algebraic identities `H(f + extrude(g)) = H(f) + g` and
//! `H(f + c) = H(f) + c` hold bit-exactly, and the tests assert them so.

use crate::boxdim::{estimate_dims, scale_table, DimensionEstimate};
use crate::error::Result;
use crate::real::Real;
use crate::sampling::{extrude, SampledCurve, SampledSurface};

/// Column maxima: `H(f)(x_i) = max_j f(x_i, y_j)`.
pub fn horizon<T: Real>(f: &SampledSurface<T>) -> SampledCurve<T> {
    let w = f.width();
    let values: Vec<T> = (0..w)
        .map(|i| {
            f.row(i)
                .iter()
                .fold(T::neg_infinity(), |acc, &v| acc.max(v))
        })
        .collect();
    SampledCurve::from_values(f.n(), values).expect("column maxima of finite samples are finite")
}

/// Dimension estimates for a surface and its horizon, with the verdict
/// against the bounds `alpha - 1 <= dim H(f)` and `dim H(f) <= 2`.
#[derive(Debug, Clone)]
pub struct HorizonGapReport<T> {
    pub surface_estimate: DimensionEstimate<T>,
    pub horizon_estimate: DimensionEstimate<T>,
    /// `surface.lower_est - horizon.upper_est` (conservative gap reading).
    pub gap_low: T,
    /// `surface.upper_est - horizon.lower_est` (generous gap reading).
    pub gap_high: T,
    /// `horizon.lower_est >= surface.lower_est - 1 - tolerance`
    pub lower_bound_holds: bool,
    /// `horizon.upper_est <= 2 + tolerance` (on the pre-clamp value)
    pub upper_bound_holds: bool,
    pub tolerance: T,
}

impl<T: Real> HorizonGapReport<T> {
    /// The surface satisfies the skyline dimension bounds at this tolerance.
    pub fn verdict(&self) -> bool {
        self.lower_bound_holds && self.upper_bound_holds
    }
}

/// Estimates the dimensions of a surface and of its horizon over scales
/// `m_min..=m_max` and checks `alpha - 1 <= horizon dims <= 2` with
/// `alpha` read from the surface estimate (lower estimate for the lower
/// bound, raw upper estimate for the upper bound).
pub fn horizon_gap<T: Real>(
    f: &SampledSurface<T>,
    m_min: u32,
    m_max: u32,
    window: usize,
    tolerance: T,
) -> Result<HorizonGapReport<T>> {
    let surface_table = scale_table(f, m_min, m_max, "surface")?;
    let surface_estimate = estimate_dims(&surface_table, window)?;
    let h = horizon(f);
    let horizon_table = scale_table(&h, m_min, m_max, "horizon")?;
    let horizon_estimate = estimate_dims(&horizon_table, window)?;
    let one = T::one();
    let two = one + one;
    let lower_bound_holds =
        horizon_estimate.lower_est >= surface_estimate.lower_est - one - tolerance;
    let upper_bound_holds = horizon_estimate.raw_upper <= two + tolerance;
    Ok(HorizonGapReport {
        gap_low: surface_estimate.lower_est - horizon_estimate.upper_est,
        gap_high: surface_estimate.upper_est - horizon_estimate.lower_est,
        surface_estimate,
        horizon_estimate,
        lower_bound_holds,
        upper_bound_holds,
        tolerance,
    })
}

/// Outcome of the exact horizon algebra checks.
#[derive(Debug, Clone, Copy)]
pub struct HorizonAlgebraReport {
    /// `H(f + extrude(g)) == H(f) + g` bit-exactly.
    pub extrusion_identity: bool,
    /// `H(f + c) == H(f) + c` bit-exactly.
    pub constant_identity: bool,
}

impl HorizonAlgebraReport {
    pub fn all_hold(&self) -> bool {
        self.extrusion_identity && self.constant_identity
    }
}

/// Asserts the translation identities of the horizon operator, bit-exactly.
pub fn horizon_algebra_check<T: Real>(
    f: &SampledSurface<T>,
    g: &SampledCurve<T>,
    c: T,
) -> Result<HorizonAlgebraReport> {
    let h_f = horizon(f);

    let shifted = SampledSurface::lin_comb(T::one(), f, T::one(), &extrude(g))?;
    let lhs = horizon(&shifted);
    let rhs = SampledCurve::lin_comb(T::one(), &h_f, T::one(), g)?;
    let extrusion_identity = lhs == rhs;

    let constant = SampledCurve::from_values(g.n(), vec![c; g.len()])?;
    let shifted_c = SampledSurface::lin_comb(T::one(), f, T::one(), &extrude(&constant))?;
    let lhs_c = horizon(&shifted_c);
    let rhs_c = SampledCurve::lin_comb(T::one(), &h_f, T::one(), &constant)?;
    let constant_identity = lhs_c == rhs_c;

    Ok(HorizonAlgebraReport { extrusion_identity, constant_identity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{
        depression_surface, midpoint_surface, takagi_curve, weierstrass_curve,
    };
    use crate::rng::SplitMix64;
    use crate::sampling::slice;

    #[test]
    fn horizon_of_saddle_is_identity() {
        // f(x,y) = x*y: the maximum over y sits at y = 1.
        let f = SampledSurface::from_fn(4, |x: f64, y: f64| x * y).unwrap();
        let h = horizon(&f);
        for i in 0..h.len() {
            assert_eq!(h.value(i), f.value(i, f.width() - 1));
            assert_eq!(h.value(i), i as f64 / 16.0);
        }
    }

    #[test]
    fn horizon_of_extrusion_is_the_curve() {
        let psi: SampledCurve<f64> = takagi_curve(8).unwrap();
        let f = extrude(&psi);
        assert_eq!(horizon(&f), psi);
    }

    #[test]
    fn depression_hides_its_roughness() {
        let f: SampledSurface<f64> = depression_surface(10, 3).unwrap();
        let h = horizon(&f);
        // skyline is the smooth rim profile 1/4 + 0.05 cos(2 pi x)
        for i in 0..h.len() {
            let x = i as f64 / 1024.0;
            let rim = 0.25 + 0.05 * (std::f64::consts::TAU * x).cos();
            assert_eq!(h.value(i), rim);
        }
        let table = scale_table(&h, 2, 9, "rim").unwrap();
        let est = estimate_dims(&table, 4).unwrap();
        assert!((est.ols_slope - 1.0).abs() <= 0.1);
    }

    #[test]
    fn gap_of_plane_is_one() {
        let f = SampledSurface::from_fn(9, |x: f64, y: f64| x + y).unwrap();
        let rep = horizon_gap(&f, 2, 8, 4, 0.1).unwrap();
        assert!((rep.surface_estimate.ols_slope - 2.0).abs() <= 0.05);
        assert!((rep.horizon_estimate.ols_slope - 1.0).abs() <= 0.05);
        assert!(rep.verdict());
        assert!((rep.gap_low - 1.0).abs() <= 0.1);
    }

    #[test]
    fn depression_counterexample_fails_lower_bound() {
        let f: SampledSurface<f64> = depression_surface(9, 3).unwrap();
        let rep = horizon_gap(&f, 2, 8, 4, 0.1).unwrap();
        // the surface is rough but its skyline is smooth: the horizon
        // estimate collapses to 1 while the surface reads well above 2
        assert!(rep.surface_estimate.lower_est > 2.3);
        assert!(rep.horizon_estimate.upper_est < 1.2);
        assert!(!rep.lower_bound_holds);
        assert!(rep.gap_low > 1.2);
    }

    #[test]
    fn algebra_identities_bit_exact() {
        let f: SampledSurface<f64> = midpoint_surface(2.4, 3, 9).unwrap();
        let g: SampledCurve<f64> = takagi_curve(9).unwrap();
        let rep = horizon_algebra_check(&f, &g, -1.25).unwrap();
        assert!(rep.all_hold());

        // and with the zero curve the identity is trivial
        let zero = SampledCurve::from_fn(9, |_: f64| 0.0).unwrap();
        let rep = horizon_algebra_check(&f, &zero, 0.0).unwrap();
        assert!(rep.all_hold());
    }

    #[test]
    fn monotone_and_nonexpansive_on_random_pairs() {
        let mut rng = SplitMix64::new(42);
        for trial in 0..20 {
            let f: SampledSurface<f64> = midpoint_surface(2.5, rng.next_u64(), 5).unwrap();
            let g: SampledSurface<f64> = midpoint_surface(2.7, rng.next_u64(), 5).unwrap();
            let h_f = horizon(&f);
            let h_g = horizon(&g);
            // nonexpansive: ||H(f)-H(g)||_inf <= ||f-g||_inf
            let sup_h = h_f
                .values()
                .iter()
                .zip(h_g.values())
                .map(|(&a, &b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            let sup_fg = f
                .values()
                .iter()
                .zip(g.values())
                .map(|(&a, &b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            assert!(sup_h <= sup_fg, "trial {trial}");

            // monotone: f <= f + |g| pointwise implies H(f) <= H(f + |g|)
            let abs_g = SampledSurface::from_values(
                5,
                g.values().iter().map(|&v| v.abs()).collect(),
            )
            .unwrap();
            let bigger = SampledSurface::lin_comb(1.0, &f, 1.0, &abs_g).unwrap();
            let h_bigger = horizon(&bigger);
            for i in 0..h_f.len() {
                assert!(h_f.value(i) <= h_bigger.value(i));
            }
        }
    }

    #[test]
    fn probe_horizon_recovers_generating_curve() {
        let psi: SampledCurve<f64> = weierstrass_curve(1.5, 2, 8, 8).unwrap();
        let surf = extrude(&psi);
        let h = horizon(&surf);
        assert_eq!(h, psi);
        // slices are the curve as well
        for j in [0, 17, 256] {
            assert_eq!(slice(&surf, j).unwrap(), psi);
        }
    }
}
