use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matchings::CycleType;
use crate::model::SchmidtSpectrum;

/// Agreement required between the two evaluation routes.
pub const ROUTE_AGREEMENT_TOL: f64 = 1e-12;

/// Partial products below this are dropped from the composition sum.
pub const UNDERFLOW_CUTOFF: f64 = 1e-300;

/// Largest number of compositions the direct sum will visit.
pub const MAX_COMPOSITIONS: f64 = 5e7;

/// Largest `n` for the cycle-type sum (number of partitions grows as
/// `exp(π √(2n/3))`).
pub const MAX_CYCLE_ROUTE_PAIRS: usize = 30;

fn central_binomials(n: usize) -> Vec<f64> {
    let mut c = vec![1.0; n + 1];
    for s in 0..n {
        c[s + 1] = c[s] * 2.0 * (2 * s + 1) as f64 / (s + 1) as f64;
    }
    c
}

/// `C(J + n - 1, n)`, the number of compositions visited.
pub fn composition_count(modes: usize, n: usize) -> f64 {
    (1..=n).map(|i| (modes - 1 + i) as f64 / i as f64).product()
}

/// `C(2n, n)⁻¹ Σ_{|s| = n} Π_j C(2s_j, s_j) p_j^{s_j}`
pub fn q2n_by_compositions(spectrum: &SchmidtSpectrum, n: usize) -> Result<f64> {
    if n == 0 {
        return Ok(1.0);
    }
    let count = composition_count(spectrum.len(), n);
    if count > MAX_COMPOSITIONS {
        return Err(Error::ResourceGuard {
            what: "compositions in the q2n sum",
            value: count.min(usize::MAX as f64) as usize,
            limit: MAX_COMPOSITIONS as usize,
        });
    }
    let binom = central_binomials(n);
    let p = spectrum.weights();

    fn rec(j: usize, left: usize, partial: f64, p: &[f64], binom: &[f64]) -> f64 {
        if left == 0 {
            return partial;
        }
        if j + 1 == p.len() {
            return partial * binom[left] * p[j].powi(left as i32);
        }
        let mut sum = 0.0;
        let mut term = partial;
        for s in 0..=left {
            if s > 0 {
                term *= p[j];
            }
            if term * binom[s] < UNDERFLOW_CUTOFF {
                break;
            }
            sum += rec(j + 1, left - s, term * binom[s], p, binom);
        }
        sum
    }

    let total: f64 = if p.len() == 1 {
        binom[n]
    } else {
        // parallel over the first part; partial sums are added in order
        let parts: Vec<f64> = (0..=n)
            .into_par_iter()
            .map(|s| {
                let head = binom[s] * p[0].powi(s as i32);
                if head < UNDERFLOW_CUTOFF {
                    0.0
                } else {
                    rec(1, n - s, head, p, &binom)
                }
            })
            .collect();
        parts.into_iter().sum()
    };
    Ok(total / binom[n])
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `Σ_types #(type) Π_{k≥2} M_k^{C_k} / (2n-1)!!`, with counts in log space.
pub fn q2n_by_cycle_types(spectrum: &SchmidtSpectrum, n: usize) -> Result<f64> {
    if n == 0 {
        return Ok(1.0);
    }
    if n > MAX_CYCLE_ROUTE_PAIRS {
        return Err(Error::ResourceGuard {
            what: "pairs in the cycle-type sum",
            value: n,
            limit: MAX_CYCLE_ROUTE_PAIRS,
        });
    }
    let moments = spectrum.moments(n);
    let ln_numerator = n as f64 * 2f64.ln() + ln_factorial(n);
    let ln_double_factorial: f64 = (1..=n).map(|i| ((2 * i - 1) as f64).ln()).sum();
    let mut total = 0.0;
    for ty in CycleType::all(n) {
        let mut ln_count = ln_numerator - ln_double_factorial;
        let mut weight = 1.0;
        for (i, &c) in ty.counts().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let k = i + 1;
            ln_count -= ln_factorial(c) + c as f64 * ((2 * k) as f64).ln();
            if k > 1 {
                weight *= moments[i].powi(c as i32);
            }
        }
        total += ln_count.exp() * weight;
    }
    Ok(total)
}

/// Probability that `n` pairs drawn from `spectrum` are in a fully
/// symmetric internal state. Both evaluation routes are run when feasible
/// and must agree.
pub fn q2n(spectrum: &SchmidtSpectrum, n: usize) -> Result<f64> {
    if n <= 1 {
        return Ok(1.0);
    }
    let by_comp = q2n_by_compositions(spectrum, n);
    let by_cycle = q2n_by_cycle_types(spectrum, n);
    match (by_comp, by_cycle) {
        (Ok(a), Ok(b)) => {
            if (a - b).abs() > ROUTE_AGREEMENT_TOL * a.abs().max(b.abs()) {
                return Err(Error::Tolerance(format!(
                    "q2n routes disagree at n = {n}: {a} vs {b}"
                )));
            }
            Ok(b)
        }
        (Ok(a), Err(_)) => Ok(a),
        (Err(_), Ok(b)) => Ok(b),
        (Err(e), Err(_)) => Err(e),
    }
}

/// `1 / (2n - 1)!!`, reached when every pair occupies its own mode.
pub fn q2n_floor(n: usize) -> f64 {
    1.0 / crate::matchings::double_factorial_odd(n)
}
