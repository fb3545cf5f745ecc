use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hafnian::{check_symmetric, matching_product};
use crate::matchings::{relative_cycle_type, CycleType, Matching, MatchingSet};
use crate::model::{
    a_matrix, vacuum_probability, ExperimentConfig, OutputPattern, SchmidtSpectrum,
};
use crate::reduce::chunked_sum;

/// Tolerance on the imaginary part of the double matching sum, relative to
/// the largest value the sum could take.
pub const IMAGINARY_RESIDUE_TOL: f64 = 1e-10;

/// Tolerance used to decide that two spectra are the same.
pub const SPECTRUM_MATCH_TOL: f64 = 1e-12;

/// Spectral moments `M_k = Σ_j p_j^k` weighting each `k`-cycle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistinguishabilityWeights {
    /// `M_2, ..., M_n`
    moments: Vec<f64>,
}

impl DistinguishabilityWeights {
    pub fn new(spectrum: &SchmidtSpectrum, n: usize) -> Self {
        Self {
            moments: (2..=n as u32).map(|k| spectrum.moment(k)).collect(),
        }
    }

    pub fn moments(&self) -> &[f64] {
        &self.moments
    }

    /// `M_k` for `k ≥ 1`; `M_1 = 1`.
    pub fn moment(&self, k: usize) -> f64 {
        if k <= 1 {
            1.0
        } else {
            self.moments[k - 2]
        }
    }

    /// `Π_{k ≥ 2} M_k^{C_k}`
    pub fn weight(&self, ty: &CycleType) -> f64 {
        ty.counts()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.moment(i + 1).powi(c as i32))
            .product()
    }

    /// Weight of `β` relative to `α` straight from partner arrays, without
    /// allocating. Supports up to 32 pairs.
    fn weight_from_partners(&self, pa: &[usize], pb: &[usize]) -> f64 {
        let mut seen: u64 = 0;
        let mut w = 1.0;
        for start in 0..pa.len() {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut k = 0;
            let mut v = start;
            loop {
                let u = pa[v];
                seen |= 1 << v | 1 << u;
                k += 1;
                v = pb[u];
                if v == start {
                    break;
                }
            }
            if k > 1 {
                w *= self.moments[k - 2];
            }
        }
        w
    }
}

/// Weight of a matching relative to the trivial one:
/// `J(α) = Π_{k ≥ 2} M_k^{C_k(α)}`.
pub fn j_function(alpha: &Matching, spectrum: &SchmidtSpectrum) -> f64 {
    let n = alpha.pairs_count();
    let ty = relative_cycle_type(&Matching::identity(n), alpha).expect("same size");
    DistinguishabilityWeights::new(spectrum, n).weight(&ty)
}

/// `Σ_{α,β} W(α,β) conj(h_α) h_β` with `h_α` the matching products of `a`.
/// Returns the real part after checking the imaginary residue.
pub fn weighted_matching_sum(
    a: &Array2<C64>,
    weights: &DistinguishabilityWeights,
    max_pairs: usize,
) -> Result<f64> {
    let n = check_symmetric(a)?;
    let set = MatchingSet::new(n, max_pairs)?;
    let matchings: Vec<Matching> = set.iter().collect();
    let partners: Vec<Vec<usize>> = matchings.iter().map(|m| m.partners()).collect();
    let h: Vec<C64> = matchings.iter().map(|m| matching_product(a, m)).collect();
    let len = matchings.len();
    let total = chunked_sum(len, C64::new(0.0, 0.0), |i| {
        let hi = h[i].conj();
        let pa = &partners[i];
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..len {
            acc += h[j] * weights.weight_from_partners(pa, &partners[j]);
        }
        hi * acc
    });
    let scale = h.iter().map(|z| z.norm()).sum::<f64>().powi(2);
    if total.im.abs() > IMAGINARY_RESIDUE_TOL * scale {
        return Err(Error::Tolerance(format!(
            "imaginary residue {:e} of the matching double sum exceeds {:e}",
            total.im,
            IMAGINARY_RESIDUE_TOL * scale
        )));
    }
    if total.re < -IMAGINARY_RESIDUE_TOL * scale {
        return Err(Error::Tolerance(format!(
            "negative matching double sum {:e}",
            total.re
        )));
    }
    Ok(total.re.max(0.0))
}

/// Output probability when every source emits pairs into the same set of
/// internal modes with the same weights.
pub fn probability_identical(
    config: &ExperimentConfig,
    pattern: &OutputPattern,
    spectrum: &SchmidtSpectrum,
) -> Result<f64> {
    let all_match = config.sources().iter().all(|s| {
        s.has_symmetric_pairs() && s.spectrum().coincides_with(spectrum, SPECTRUM_MATCH_TOL)
    });
    if !all_match {
        return Err(Error::Precondition(
            "sources do not share the given spectrum; use probability_general".into(),
        ));
    }
    if pattern.total() % 2 == 1 {
        return Ok(0.0);
    }
    let p0 = vacuum_probability(config);
    if pattern.is_vacuum() {
        return Ok(p0);
    }
    let n = pattern.pairs()?;
    let a = a_matrix(config, pattern)?;
    let weights = DistinguishabilityWeights::new(spectrum, n);
    let s = weighted_matching_sum(&a, &weights, config.options.max_matching_pairs)?;
    Ok(p0 / pattern.factorial() * s)
}
