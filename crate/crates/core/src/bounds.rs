//! The numerical guarantees of the method as callable formulas: the
//! guaranteed diagonal separation created by a perturbation, the
//! localization of every other diagonal entry, the Gauss-Seidel sweep
//! budget needed to resolve the separation, and the mantissa width to run
//! at.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("perturbation must lie strictly inside (0, 1), got {0}")]
    EpsOutOfRange(String),
    #[error("need at least two vertices, got {0}")]
    TooFewVertices(u32),
    #[error("maximum degree must be at least 1")]
    DegreeZero,
}

/// Guaranteed minimum diagonal gap created when a perturbation of size
/// `eps` separates a vertex from its class:
/// `1 / (3^n * d^2 * (3d/eps + 1))`, exact.
pub fn separation_bound(n: u32, d: u32, eps: &BigRational) -> Result<BigRational, BoundsError> {
    if n < 2 {
        return Err(BoundsError::TooFewVertices(n));
    }
    if d < 1 {
        return Err(BoundsError::DegreeZero);
    }
    if !eps.is_positive() || *eps >= BigRational::one() {
        return Err(BoundsError::EpsOutOfRange(eps.to_string()));
    }
    let three_n = BigRational::from_integer(BigInt::from(3u32).pow(n));
    let d_sq = BigRational::from_integer(BigInt::from(d) * BigInt::from(d));
    let inner = BigRational::from_integer(BigInt::from(3 * d as u64)) / eps + BigRational::one();
    Ok((three_n * d_sq * inner).recip())
}

/// Upper bound on how far any diagonal entry of the inverse moves under a
/// single perturbation of size `1/n^p`: `4 / (d^2 * n^(p-1))`, exact.
pub fn localization_bound(n: u32, d: u32, p: u32) -> BigRational {
    let num = BigInt::from(4u32);
    let den = BigInt::from(d) * BigInt::from(d) * BigInt::from(n).pow(p.saturating_sub(1));
    BigRational::new(num, den)
}

/// Sweep plan for the iterative backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepBudget {
    /// Smallest sweep count that resolves a `1/n^p` perturbation's
    /// separation at mantissa width `n` digits:
    /// `ceil(n log2(3) + p log2(n) + 3 log2(d) + log2(delta0) + 3)`.
    pub required: u32,
    /// Worst-case cap `ceil((n+3) log2(n))`, reached when the class
    /// structure forces `p` up to `n - 1`.
    pub cap: u32,
}

/// Computes the sweep budget for `n` vertices, perturbation exponent `p`
/// (i.e. `eps = 1/n^p`), maximum degree `d` and initial error `delta0`.
pub fn sweep_budget(n: u32, p: u32, d: u32, delta0: f64) -> SweepBudget {
    assert!(n >= 2 && p >= 1 && d >= 1 && delta0 > 0.0);
    let nf = n as f64;
    let raw = nf * 3f64.log2()
        + p as f64 * nf.log2()
        + 3.0 * (d as f64).log2()
        + delta0.log2()
        + 3.0;
    let required = raw.ceil().max(1.0) as u32;
    let cap = ((nf + 3.0) * nf.log2()).ceil() as u32;
    SweepBudget { required, cap }
}

/// Effective perturbation exponent for an arbitrary `eps`: the smallest
/// `p >= 1` with `1/n^p <= eps`, so budgets sized for `1/n^p` cover `eps`.
pub fn effective_exponent(n: u32, eps: &BigRational) -> u32 {
    let mut p = 1u32;
    let mut npow = BigRational::from_integer(BigInt::from(n));
    while npow.recip() > *eps && p < 512 {
        p += 1;
        npow *= BigInt::from(n);
    }
    p
}

/// Arithmetic plan for a run: mantissa width and the comparison tolerance,
/// the latter evaluated lazily once the degree and the smallest scheduled
/// perturbation are known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPlan {
    pub n: u32,
    /// `max(64, ceil(n log2 10))`: at least `n` decimal digits.
    pub mantissa_bits: u32,
}

pub fn precision_plan(n: u32) -> PrecisionPlan {
    assert!(n >= 2);
    let digits_bits = (n as f64 * 10f64.log2()).ceil() as u32;
    PrecisionPlan {
        n,
        mantissa_bits: digits_bits.max(64),
    }
}

impl PrecisionPlan {
    /// Half the guaranteed separation at the smallest scheduled
    /// perturbation: values closer than this are treated as equal.
    pub fn compare_tolerance(
        &self,
        d: u32,
        eps_min: &BigRational,
    ) -> Result<BigRational, BoundsError> {
        Ok(separation_bound(self.n, d, eps_min)? / BigRational::from_integer(BigInt::from(2)))
    }
}
