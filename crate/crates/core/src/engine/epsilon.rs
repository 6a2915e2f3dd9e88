//! Perturbation size selection.

use super::EngineError;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

/// How the per-iteration perturbation size is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum EpsMode {
    /// `eps = 1/n^p`, with `p` the smallest integer making the
    /// perturbation shift every diagonal by less than `delta/n`. Falls
    /// back to `1/n` while there is only one class.
    #[default]
    Adaptive,
    /// The fixed demonstration schedule 0.1, 0.2, 0.3, ... (iteration/10).
    /// Only valid while the values stay below 1.
    TenthStep,
}

/// Chooses the perturbation for iteration `j` (1-based). `delta` is the
/// current smallest class distance, absent while the partition has a
/// single class.
pub fn choose_epsilon(
    n: u32,
    d: u32,
    delta: Option<&BigRational>,
    mode: EpsMode,
    j: u32,
) -> Result<BigRational, EngineError> {
    match mode {
        EpsMode::TenthStep => {
            if j >= 10 {
                return Err(EngineError::ScheduleExhausted { iteration: j });
            }
            Ok(BigRational::new(BigInt::from(j), BigInt::from(10)))
        }
        EpsMode::Adaptive => {
            let p = match delta {
                None => 1,
                Some(delta) => {
                    if !delta.is_positive() {
                        return Err(EngineError::NonPositiveDelta(delta.to_string()));
                    }
                    adaptive_exponent(n, d, delta)
                }
            };
            Ok(BigRational::new(
                BigInt::from(1),
                BigInt::from(n).pow(p),
            ))
        }
    }
}

/// Smallest integer `p >= 1` with `n^p * d^2 * delta > 4n`, i.e. the
/// smallest `p` strictly exceeding `log_n(4 / (d^2 delta)) + 1`.
fn adaptive_exponent(n: u32, d: u32, delta: &BigRational) -> u32 {
    let d_sq_delta = delta * BigInt::from(d as u64 * d as u64);
    let threshold = BigRational::from_integer(BigInt::from(4 * n as u64));
    let mut p = 1u32;
    let mut npow = BigRational::from_integer(BigInt::from(n));
    while &npow * &d_sq_delta <= threshold {
        p += 1;
        npow *= BigInt::from(n);
    }
    p
}
