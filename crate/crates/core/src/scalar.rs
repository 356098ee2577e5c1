//! Numeric abstraction for density thresholds and measurements.
//!
//! Densities are ratios of integer edge counts, so every algorithm in this
//! crate can run with floating point thresholds (`f32`, `f64`) or with exact
//! rationals, where `density >= delta` is decided without rounding.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{Num, ToPrimitive};

/// A scalar able to hold a density or an average degree.
pub trait Scalar: Num + Copy + PartialOrd + Debug + Send + Sync + 'static {
    /// `num / den` in this scalar type. `den` must be non-zero.
    fn ratio(num: u64, den: u64) -> Self;

    /// Lossy conversion used for reporting and rounding decisions.
    fn to_f64(self) -> f64;

    /// Nearest representable value. Exact types may approximate.
    fn from_f64(x: f64) -> Option<Self>;

    fn from_count(n: u64) -> Self {
        Self::ratio(n, 1)
    }
}

impl Scalar for f64 {
    #[inline]
    fn ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self
    }

    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }
}

impl Scalar for f32 {
    #[inline]
    fn ratio(num: u64, den: u64) -> Self {
        (num as f64 / den as f64) as f32
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }

    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then_some(x as f32)
    }
}

macro_rules! impl_scalar_ratio {
    ($($int:ty),*) => {$(
        impl Scalar for Ratio<$int> {
            #[inline]
            fn ratio(num: u64, den: u64) -> Self {
                Ratio::new(num as $int, den as $int)
            }

            fn to_f64(self) -> f64 {
                ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
            }

            fn from_f64(x: f64) -> Option<Self> {
                Ratio::<$int>::approximate_float(x)
            }
        }
    )*};
}

impl_scalar_ratio!(i64, i128);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_is_exact_for_rationals() {
        let a = <Ratio<i64>>::ratio(18, 20);
        assert_eq!(a, Ratio::new(9, 10));
        assert!((Scalar::to_f64(a) - 0.9).abs() < 1e-15);
    }

    #[test]
    fn float_ratio_matches_literal() {
        assert_eq!(f64::ratio(18, 20), 0.9);
        assert_eq!(f64::ratio(4, 6), 2.0 / 3.0);
        assert_eq!(<f32 as Scalar>::from_count(7), 7.0);
    }

    #[test]
    fn from_f64_rejects_non_finite() {
        assert!(<f64 as Scalar>::from_f64(f64::NAN).is_none());
        assert_eq!(<Ratio<i64> as Scalar>::from_f64(0.5), Some(Ratio::new(1, 2)));
    }
}
