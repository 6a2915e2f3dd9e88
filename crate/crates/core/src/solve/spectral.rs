//! Power-iteration estimate of the extreme eigenvalue ratio.
//!
//! Test support: the conditioning bound `eta/chi <= 4` is cross-checked
//! against a direct `lambda_max / lambda_min` estimate. Power iteration on
//! `A` underestimates `lambda_max` and on `A^{-1}` underestimates
//! `1/lambda_min`, so the estimated ratio never exceeds the true one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn matvec(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Rayleigh-quotient power iteration for the dominant eigenvalue of a
/// symmetric positive-definite matrix.
fn dominant_eigenvalue(m: &[Vec<f64>], iters: u32, seed: u64) -> f64 {
    let n = m.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() + 0.1).collect();
    let mut rayleigh = 0.0;
    for _ in 0..iters {
        let y = matvec(m, &x);
        let ny = norm(&y);
        if ny == 0.0 {
            return 0.0;
        }
        let next: Vec<f64> = y.iter().map(|v| v / ny).collect();
        let ay = matvec(m, &next);
        let new_rayleigh: f64 = next.iter().zip(&ay).map(|(a, b)| a * b).sum();
        if (new_rayleigh - rayleigh).abs() <= 1e-13 * new_rayleigh.abs() {
            return new_rayleigh;
        }
        rayleigh = new_rayleigh;
        x = next;
    }
    rayleigh
}

/// Estimates `(lambda_max, lambda_min, ratio)` for a symmetric
/// positive-definite matrix given the matrix and its inverse as dense f64.
pub fn eigenvalue_ratio_estimate(
    a: &[Vec<f64>],
    a_inv: &[Vec<f64>],
    iters: u32,
    seed: u64,
) -> (f64, f64, f64) {
    let lambda_max = dominant_eigenvalue(a, iters, seed);
    let inv_lambda_min = dominant_eigenvalue(a_inv, iters, seed ^ 0x5bd1_e995);
    let lambda_min = 1.0 / inv_lambda_min;
    (lambda_max, lambda_min, lambda_max / lambda_min)
}
