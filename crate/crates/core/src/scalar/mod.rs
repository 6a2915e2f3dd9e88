//! Scalar arithmetic backends.
//!
//! Two backends share one operation vocabulary: [`Rat`] wraps exact
//! arbitrary-precision rationals (no rounding anywhere), and [`BigFloat`] is
//! an arbitrary-precision binary float whose every operation rounds to a
//! mantissa width fixed per engine run. Both convert to an exact
//! `BigRational` losslessly, which is what class comparisons, tolerance
//! grids and trace rendering are defined on.

mod bigfloat;
mod decimal;

pub use bigfloat::BigFloat;
pub use decimal::{decimal_fixed, decimal_significant, parse_decimal};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Context a backend needs to build values: nothing for rationals, the
/// mantissa width for floats.
pub trait ScalarOps: Clone + PartialEq + PartialOrd + std::fmt::Debug + Send + Sync {
    type Ctx: Clone + Send + Sync;

    fn from_u64(v: u64, ctx: &Self::Ctx) -> Self;
    fn from_rational(r: &BigRational, ctx: &Self::Ctx) -> Self;
    fn zero(ctx: &Self::Ctx) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs(&self) -> Self;
    fn is_zero(&self) -> bool;

    /// The value 1 with the same context (precision) as `self`.
    fn one_like(&self) -> Self;

    /// Exact value of this scalar. Lossless for both backends.
    fn to_rational(&self) -> BigRational;

    fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }
}

/// Exact rational scalar: arithmetic is exact, comparisons are equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn from_ratio(num: i64, den: u64) -> Self {
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn as_ref(&self) -> &BigRational {
        &self.0
    }
}

impl ScalarOps for Rat {
    type Ctx = ();

    fn from_u64(v: u64, _ctx: &()) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }

    fn from_rational(r: &BigRational, _ctx: &()) -> Self {
        Rat(r.clone())
    }

    fn zero(_ctx: &()) -> Self {
        Rat(BigRational::zero())
    }

    fn add(&self, rhs: &Self) -> Self {
        Rat(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rat(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rat(&self.0 * &rhs.0)
    }

    fn div(&self, rhs: &Self) -> Self {
        Rat(&self.0 / &rhs.0)
    }

    fn neg(&self) -> Self {
        Rat(-&self.0)
    }

    fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn one_like(&self) -> Self {
        Rat(BigRational::one())
    }

    fn to_rational(&self) -> BigRational {
        self.0.clone()
    }
}

impl std::fmt::Display for Rat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", decimal_significant(&self.0, 12))
    }
}

/// Nearest integer to `x / step`, exact over rationals. Used as the
/// quantization grid index for tolerance-banded comparisons.
pub fn grid_index(x: &BigRational, step: &BigRational) -> BigInt {
    use num_integer::Integer;
    // round(x/step) = floor((2x + step) / (2 step))
    let t = (x * BigInt::from(2) + step) / (step * BigInt::from(2));
    t.numer().div_floor(t.denom())
}

/// `base^exp` over rationals with a non-negative integer exponent.
pub fn rational_pow(base: &BigRational, exp: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn grid_index_rounds_to_nearest() {
        let step = r(1, 10);
        assert_eq!(grid_index(&r(26, 100), &step), BigInt::from(3));
        assert_eq!(grid_index(&r(24, 100), &step), BigInt::from(2));
        assert_eq!(grid_index(&r(-26, 100), &step), BigInt::from(-3));
        // Exact half rounds up (floor of x/step + 1/2).
        assert_eq!(grid_index(&r(25, 100), &step), BigInt::from(3));
        assert_eq!(grid_index(&r(0, 1), &step), BigInt::from(0));
    }

    #[test]
    fn rat_ops_are_exact() {
        let a = Rat(r(1, 3));
        let b = Rat(r(1, 6));
        assert_eq!(a.add(&b).0, r(1, 2));
        assert_eq!(a.sub(&b).0, r(1, 6));
        assert_eq!(a.mul(&b).0, r(1, 18));
        assert_eq!(a.div(&b).0, r(2, 1));
    }
}
