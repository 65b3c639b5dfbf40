//! Scalar abstraction for the numerical kernels.

use std::fmt::{Debug, Display};
use std::ops::AddAssign;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the library is generic over: `f32` or `f64`.
///
/// Extends the `num_traits` float stack with exact neighbor stepping, which
/// the forcer/approximant constructions use to round intermediate values
/// toward the safe side of an inequality.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + AddAssign + Display + Debug + Send + Sync + 'static
{
    /// Smallest value strictly greater than `self` (finite inputs).
    fn next_up(self) -> Self;
    /// Largest value strictly less than `self` (finite inputs).
    fn next_down(self) -> Self;

    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("f64 converts to every Real")
    }
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("every Real converts to f64")
    }
    /// Exact for every `Real`: `2^e` with `e` well inside the exponent range.
    fn exp2_i32(e: i32) -> Self {
        Self::from_f64_lossy(f64::powi(2.0, e))
    }
}

macro_rules! impl_real {
    ($t:ty, $bits:ty) => {
        impl Real for $t {
            fn next_up(self) -> Self {
                debug_assert!(self.is_finite());
                let bits = self.to_bits();
                let next = if self == 0.0 {
                    1 // smallest positive subnormal
                } else if bits >> (<$bits>::BITS - 1) == 0 {
                    bits + 1 // positive: move away from zero
                } else {
                    bits - 1 // negative: move toward zero
                };
                <$t>::from_bits(next)
            }
            fn next_down(self) -> Self {
                -(-self).next_up()
            }
        }
    };
}

impl_real!(f32, u32);
impl_real!(f64, u64);

/// Exact balanced reduction of a power-of-two-length slice.
///
/// The reduction tree is fixed (recursive halving), so the result is
/// independent of chunking or thread scheduling, and subtrees over
/// power-of-two-aligned blocks are themselves fixed trees.  Error grows
/// like `O(eps * log len)`, and for blocks of equal values the block sum is
/// bit-exactly `count * value`.
pub fn pairwise_sum<T: Real>(v: &[T]) -> T {
    debug_assert!(v.len().is_power_of_two());
    match v.len() {
        1 => v[0],
        2 => v[0] + v[1],
        4 => (v[0] + v[1]) + (v[2] + v[3]),
        len => {
            let (lo, hi) = v.split_at(len / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}

/// Knuth two-sum: returns `(s, e)` with `s = fl(a + b)` and `a + b = s + e`
/// exactly.
pub fn two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let ap = s - b;
    let bp = s - ap;
    let e = (a - ap) + (b - bp);
    (s, e)
}

/// `a + b` rounded so the result is `>=` the exact sum.
pub fn add_round_up<T: Real>(a: T, b: T) -> T {
    let (s, e) = two_sum(a, b);
    if e > T::zero() {
        s.next_up()
    } else {
        s
    }
}

/// `a + b` rounded so the result is `<=` the exact sum.
pub fn add_round_down<T: Real>(a: T, b: T) -> T {
    let (s, e) = two_sum(a, b);
    if e < T::zero() {
        s.next_down()
    } else {
        s
    }
}
