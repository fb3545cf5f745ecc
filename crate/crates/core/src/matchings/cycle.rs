use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matchings::matching::Matching;

/// Number of `k`-cycles for `k = 1..=n`; `counts[k - 1]` holds `C_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CycleType {
    counts: Vec<usize>,
}

impl CycleType {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        let n = counts.len();
        let weight: usize = counts.iter().enumerate().map(|(i, c)| (i + 1) * c).sum();
        if weight != n {
            return Err(Error::InvalidCycleType(format!(
                "Σ k·C_k = {weight} but the type has length {n}"
            )));
        }
        Ok(Self { counts })
    }

    /// All fixed points: the type of a matching relative to itself.
    pub fn trivial(n: usize) -> Self {
        let mut counts = vec![0; n];
        if n > 0 {
            counts[0] = n;
        }
        Self { counts }
    }

    pub fn pairs_count(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// `C_k` for `k ≥ 1`.
    pub fn count(&self, k: usize) -> usize {
        self.counts.get(k - 1).copied().unwrap_or(0)
    }

    /// `Π_k t_k^{C_k}` with `t[k - 1]` multiplying each `k`-cycle.
    pub fn monomial(&self, t: &[f64]) -> f64 {
        self.counts
            .iter()
            .zip(t)
            .map(|(&c, &x)| x.powi(c as i32))
            .product()
    }

    /// Every cycle type of size `n`, i.e. every partition of `n`.
    pub fn all(n: usize) -> Vec<Self> {
        fn rec(left: usize, max_part: usize, counts: &mut Vec<usize>, out: &mut Vec<CycleType>) {
            if left == 0 {
                out.push(CycleType {
                    counts: counts.clone(),
                });
                return;
            }
            for k in (1..=max_part.min(left)).rev() {
                counts[k - 1] += 1;
                rec(left - k, k, counts, out);
                counts[k - 1] -= 1;
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut vec![0; n], &mut out);
        out
    }
}

/// Cycle type of `β` relative to `α`: every alternating cycle of the union
/// of both edge sets with `2k` edges counts as one `k`-cycle.
pub fn relative_cycle_type(alpha: &Matching, beta: &Matching) -> Result<CycleType> {
    if alpha.pairs_count() != beta.pairs_count() {
        return Err(Error::InvalidMatching(format!(
            "matchings of {} and {} pairs",
            alpha.pairs_count(),
            beta.pairs_count()
        )));
    }
    Ok(cycle_type_from_partners(
        &alpha.partners(),
        &beta.partners(),
    ))
}

/// Same as [`relative_cycle_type`] on precomputed partner arrays.
pub fn cycle_type_from_partners(pa: &[usize], pb: &[usize]) -> CycleType {
    let n = pa.len() / 2;
    let mut counts = vec![0; n];
    let mut seen = vec![false; pa.len()];
    for start in 0..pa.len() {
        if seen[start] {
            continue;
        }
        let mut k = 0;
        let mut v = start;
        loop {
            seen[v] = true;
            let w = pa[v];
            seen[w] = true;
            k += 1;
            v = pb[w];
            if v == start {
                break;
            }
        }
        counts[k - 1] += 1;
    }
    CycleType { counts }
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// Number of matchings `β` with a given cycle type relative to a fixed `α`:
/// `2^n n! / Π_k C_k! (2k)^{C_k}`.
pub fn count_by_cycle_type(n: usize, ty: &CycleType) -> Result<u128> {
    if ty.pairs_count() != n {
        return Err(Error::InvalidCycleType(format!(
            "type of size {} used with n = {n}",
            ty.pairs_count()
        )));
    }
    let num = factorial(n) << n;
    let den = ty
        .counts
        .iter()
        .enumerate()
        .fold(BigUint::one(), |acc, (i, &c)| {
            acc * factorial(c) * BigUint::from(2 * (i + 1)).pow(c as u32)
        });
    (num / den)
        .to_u128()
        .ok_or_else(|| Error::Overflow(format!("cycle-type count for n = {n}")))
}

/// Cycle index over matchings: `Σ_α Π_k t_k^{C_k(α)}`, summed by type.
pub fn cycle_index_matchings(n: usize, t: &[f64]) -> Result<f64> {
    if t.len() < n {
        return Err(Error::Dimension(format!(
            "need {n} variables, got {}",
            t.len()
        )));
    }
    let mut total = 0.0;
    for ty in CycleType::all(n) {
        total += count_by_cycle_type(n, &ty)? as f64 * ty.monomial(t);
    }
    Ok(total)
}
