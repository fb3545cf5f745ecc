use serde::Serialize;

use crate::error::{Error, Result};

/// Indistinguishability estimate of the two-mode noise model, where each
/// source emits into its main mode with weight `1-ε` and into one noise
/// mode with weight `ε`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NoiseEstimate {
    pub purity: f64,
    pub photons: f64,
    pub epsilon: f64,
    pub mean_pairs: f64,
    /// `(1-ε)^{n̄}`
    pub q_approx: f64,
    /// Exact `q_{2n}` at `⌊n̄⌋`, `⌈n̄⌉` and linearly interpolated at `n̄`.
    pub q_exact_floor: f64,
    pub q_exact_ceil: f64,
    pub q_exact: f64,
}

/// Smaller root of `2ε² - 2ε + (1-P) = 0`.
pub fn noise_amplitude(purity: f64) -> Result<f64> {
    if !(purity > 0.5 && purity <= 1.0) {
        return Err(Error::Domain(format!(
            "two-mode noise model needs 1/2 < P ≤ 1, got {purity}"
        )));
    }
    Ok((1.0 - (2.0 * purity - 1.0).sqrt()) / 2.0)
}

/// `C(2n,n)⁻¹ Σ_{s=0}^{n} C(2s,s) C(2n-2s,n-s) (1-ε)^{n-s} ε^s`
pub fn two_mode_q2n(epsilon: f64, n: usize) -> f64 {
    let mut c = vec![1.0f64; n + 1];
    for s in 0..n {
        c[s + 1] = c[s] * 2.0 * (2 * s + 1) as f64 / (s + 1) as f64;
    }
    let sum: f64 = (0..=n)
        .map(|s| c[s] * c[n - s] * (1.0 - epsilon).powi((n - s) as i32) * epsilon.powi(s as i32))
        .sum();
    sum / c[n]
}

/// Terminating Gauss series `₂F₁(a, -n; c; z)`.
pub fn hypergeometric_terminating(a: f64, n: usize, c: f64, z: f64) -> f64 {
    let b = -(n as f64);
    let mut term = 1.0;
    let mut sum = 1.0;
    for s in 0..n {
        let s = s as f64;
        term *= (a + s) * (b + s) / ((c + s) * (s + 1.0)) * z;
        sum += term;
    }
    sum
}

/// The same `q_{2n}` as `(1-ε)^n ₂F₁(1/2, -n; 1/2 - n; ε/(1-ε))`.
pub fn two_mode_q2n_hypergeometric(epsilon: f64, n: usize) -> f64 {
    let z = epsilon / (1.0 - epsilon);
    (1.0 - epsilon).powi(n as i32) * hypergeometric_terminating(0.5, n, 0.5 - n as f64, z)
}

/// Estimate for a measured purity and an average detected photon number.
pub fn two_mode_noise_estimate(purity: f64, photons: f64) -> Result<NoiseEstimate> {
    if !(photons > 0.0 && photons.is_finite()) {
        return Err(Error::Domain(format!(
            "photon number {photons} must be positive"
        )));
    }
    let epsilon = noise_amplitude(purity)?;
    let mean_pairs = photons / 2.0;
    let lo = mean_pairs.floor() as usize;
    let hi = mean_pairs.ceil() as usize;
    let q_lo = two_mode_q2n(epsilon, lo);
    let q_hi = two_mode_q2n(epsilon, hi);
    let frac = mean_pairs - lo as f64;
    Ok(NoiseEstimate {
        purity,
        photons,
        epsilon,
        mean_pairs,
        q_approx: (1.0 - epsilon).powf(mean_pairs),
        q_exact_floor: q_lo,
        q_exact_ceil: q_hi,
        q_exact: q_lo + frac * (q_hi - q_lo),
    })
}
