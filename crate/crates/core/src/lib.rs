//! Numerical laboratory for box-counting dimension of fractal curves,
//! surfaces, and their horizons.
//!
//! Functions on `[0,1]` and `[0,1]^2` are represented by their samples on a
//! uniform dyadic grid with `2^n + 1` points per axis, so that every dyadic
//! mesh cell boundary lands on a sample point and per-cell oscillations are
//! exactly computable.  On top of that sit:
//!
//! * [`boxdim`] — per-scale range sums, mesh box counts, the range-sum
//!   sandwich, and upper/lower box-dimension estimation;
//! * [`generators`] — seeded synthesis of curves and surfaces with a
//!   prescribed target dimension (Weierstrass-type, midpoint displacement,
//!   Takagi, monotone staircases);
//! * [`horizon`] — the skyline operator `H(f)(x) = max_y f(x,y)` and the
//!   surface-vs-horizon dimension gap diagnostic;
//! * [`spaces`] — scale-normalized range-sum norms, the associated complete
//!   metric, and Hölder-type Lipschitz constants;
//! * [`constructions`] — forcer and modifier surfaces: envelopes that pin
//!   column maxima to a chosen line, and minimal-dimension surfaces with a
//!   prescribed (possibly rough) skyline;
//! * [`experiments`] — seeded Monte Carlo sweeps over scalar mixes `f + λg`.
//!
//! All numerical kernels are generic over the scalar type via [`Real`];
//! the `f64` instantiations are exported as type aliases at the crate root.

pub mod boxdim;
pub mod constructions;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod horizon;
pub mod io;
pub mod real;
pub mod rng;
pub mod sampling;
pub mod spaces;

pub use error::{Error, Result};
pub use real::Real;

/// `f64` curve samples; the default precision used by the CLI and tests.
pub type Curve = sampling::SampledCurve<f64>;
/// `f64` surface samples.
pub type Surface = sampling::SampledSurface<f64>;
/// `f64` per-scale table.
pub type ScaleTable = boxdim::ScaleTable<f64>;
/// `f64` dimension estimate.
pub type DimensionEstimate = boxdim::DimensionEstimate<f64>;
