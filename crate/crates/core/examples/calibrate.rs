//! Scratch calibration sweep (not part of the deliverable test suite).
use frh_core::experiments::*;
use frh_core::horizon::horizon_gap;
use frh_core::generators::depression_surface;

fn main() {
    let f7: frh_core::Surface = depression_surface(7, 5u64.wrapping_add(200)).unwrap();
    let rep = horizon_gap(&f7, 1, 6, 3, 0.2).unwrap();
    println!("depression n=7: surf lo={:.3} hor lo={:.3} verdict={}", rep.surface_estimate.lower_est, rep.horizon_estimate.lower_est, rep.verdict());
    let fixtures = census_fixtures::<f64>(7, 5).unwrap();
    let rows = horizon_property_census(&fixtures, SweepScales { m_min: 1, m_max: 6, window: 3 }, 0.2).unwrap();
    for r in &rows {
        println!(
            "{:24} surf({:.2},{:.2},{:.2}) hor({:.2},{:.2}) gaps({:.2},{:.2}) verdict={}",
            r.name,
            r.report.surface_estimate.lower_est, r.report.surface_estimate.ols_slope, r.report.surface_estimate.upper_est,
            r.report.horizon_estimate.lower_est, r.report.horizon_estimate.upper_est,
            r.report.gap_low, r.report.gap_high, r.report.verdict()
        );
    }
}
