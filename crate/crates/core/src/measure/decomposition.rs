use serde::Serialize;

use crate::distprob::probability_identical;
use crate::error::{Error, Result};
use crate::hafnian::hafnian_with_limit;
use crate::measure::q2n::q2n;
use crate::model::{
    a_matrix, vacuum_probability, ExperimentConfig, OutputPattern, SchmidtSpectrum,
};

/// `q₂ₙ` at or above this is treated as 1, leaving the residual undefined.
pub const PURE_Q_TOL: f64 = 1e-14;

/// Symmetric-part probability `(p₀/m!) |Haf A|²` with the multimode `p₀`.
pub fn symmetric_part_probability(
    config: &ExperimentConfig,
    pattern: &OutputPattern,
) -> Result<f64> {
    if pattern.total() % 2 == 1 {
        return Ok(0.0);
    }
    let p0 = vacuum_probability(config);
    if pattern.is_vacuum() {
        return Ok(p0);
    }
    let a = a_matrix(config, pattern)?;
    let h = hafnian_with_limit(&a, config.options.max_matching_pairs)?.value;
    Ok(p0 / pattern.factorial() * h.norm_sqr())
}

/// `p⊥_m = (p_m - q₂ₙ p^sym_m) / (1 - q₂ₙ)`, or `None` when `q₂ₙ = 1`.
pub fn orthogonal_residual(
    config: &ExperimentConfig,
    pattern: &OutputPattern,
    spectrum: &SchmidtSpectrum,
) -> Result<Option<f64>> {
    if pattern.total() % 2 == 1 {
        return Ok(Some(0.0));
    }
    let q = q2n(spectrum, pattern.total() / 2)?;
    if q >= 1.0 - PURE_Q_TOL {
        return Ok(None);
    }
    let p = probability_identical(config, pattern, spectrum)?;
    let sym = symmetric_part_probability(config, pattern)?;
    Ok(Some((p - q * sym) / (1.0 - q)))
}

/// Summary of the residual distribution over every pattern up to a pair
/// cutoff.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionCheck {
    pub max_pairs: usize,
    /// Smallest residual seen over all patterns.
    pub min_residual: f64,
    /// `Σ p⊥_m` over patterns where it is defined.
    pub residual_sum: f64,
    /// `Σ_{|m| = 2n} p⊥_m` for each `n` (absent where `q₂ₙ = 1`).
    pub sector_sums: Vec<Option<f64>>,
}

pub fn decomposition_check(
    config: &ExperimentConfig,
    spectrum: &SchmidtSpectrum,
    max_pairs: usize,
) -> Result<DecompositionCheck> {
    if config
        .common_spectrum(crate::distprob::SPECTRUM_MATCH_TOL)
        .is_none()
    {
        return Err(Error::Precondition(
            "decomposition needs a common spectrum".into(),
        ));
    }
    let mut min_residual = f64::INFINITY;
    let mut residual_sum = 0.0;
    let mut sector_sums = Vec::with_capacity(max_pairs + 1);
    for n in 0..=max_pairs {
        let mut sector = Some(0.0);
        for m in OutputPattern::all_with_total(config.ports(), 2 * n) {
            match orthogonal_residual(config, &m, spectrum)? {
                Some(r) => {
                    min_residual = min_residual.min(r);
                    residual_sum += r;
                    sector = sector.map(|s| s + r);
                }
                None => sector = None,
            }
        }
        sector_sums.push(sector);
    }
    Ok(DecompositionCheck {
        max_pairs,
        min_residual,
        residual_sum,
        sector_sums,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Interferometer, SqueezedSource};

    #[test]
    fn pure_spectrum_has_no_residual() {
        let s = SchmidtSpectrum::single_mode(0);
        let cfg = ExperimentConfig::new(
            Interferometer::balanced_beamsplitter(),
            vec![
                SqueezedSource::degenerate(0.4, 0, s.clone()).unwrap(),
                SqueezedSource::degenerate(0.4, 1, s.clone()).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(
            orthogonal_residual(&cfg, &OutputPattern::new(vec![2, 2]), &s).unwrap(),
            None
        );
    }

    #[test]
    fn single_source_residual_vanishes() {
        // one source on one port: every pair sits in the same spatial mode,
        // so the internal state never shows and the residual sector is empty
        let s = SchmidtSpectrum::from_weights(vec![0.5, 0.5]).unwrap();
        let cfg = ExperimentConfig::new(
            Interferometer::identity(1),
            vec![SqueezedSource::degenerate(0.5, 0, s.clone()).unwrap()],
        )
        .unwrap();
        let r = orthogonal_residual(&cfg, &OutputPattern::new(vec![4]), &s)
            .unwrap()
            .unwrap();
        assert!(r.abs() < 1e-15);
    }
}
