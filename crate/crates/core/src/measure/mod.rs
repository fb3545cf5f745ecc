//! Indistinguishability of photon pairs, the averaged measure over the
//! photon-number distribution, the total-variation bound it implies, and
//! the two-mode noise estimate.

mod decomposition;
mod estimate;
mod general;
mod photon;
mod q2n;

pub use decomposition::{
    decomposition_check, orthogonal_residual, symmetric_part_probability, DecompositionCheck,
    PURE_Q_TOL,
};
pub use estimate::{
    hypergeometric_terminating, noise_amplitude, two_mode_noise_estimate, two_mode_q2n,
    two_mode_q2n_hypergeometric, NoiseEstimate,
};
pub use general::{q2n_general, PairState};
pub use photon::{
    equal_sources_photon_number, ideal_photon_number_distribution, mean_pairs_and_dispersion,
    pair_statistics, photon_number_distribution,
};
pub use q2n::{
    composition_count, q2n, q2n_by_compositions, q2n_by_cycle_types, q2n_floor, MAX_COMPOSITIONS,
    ROUTE_AGREEMENT_TOL, UNDERFLOW_CUTOFF,
};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::model::{SchmidtSpectrum, SqueezedSource};

/// Tail mass above which the averaged measure carries a warning.
pub const TAIL_MASS_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TvdBound {
    pub qbar: f64,
    /// `1 - q̄`
    pub tvd_bound: f64,
    /// Ideal probability of more than `cutoff` pairs, left out of `q̄`.
    pub tail_mass: f64,
    pub warning: Option<String>,
}

/// `q̄ = Σ_n p̊(2n) q₂ₙ` up to `cutoff` pairs, and the bound `1 - q̄` on the
/// total variation distance to the ideal distribution.
pub fn qbar_and_tvd_bound(
    sources: &[SqueezedSource],
    spectrum: &SchmidtSpectrum,
    cutoff: usize,
) -> Result<TvdBound> {
    let dist = ideal_photon_number_distribution(sources, cutoff);
    let mut qbar = 0.0;
    for (n, p) in dist.iter().enumerate() {
        qbar += p * q2n(spectrum, n)?;
    }
    let tail_mass = (1.0 - dist.iter().sum::<f64>()).max(0.0);
    let warning = (tail_mass >= TAIL_MASS_TOL)
        .then(|| format!("tail mass {tail_mass:e} beyond {cutoff} pairs; raise the cutoff"));
    Ok(TvdBound {
        qbar,
        tvd_bound: (1.0 - qbar).clamp(0.0, 1.0),
        tail_mass,
        warning,
    })
}

/// Smallest pair cutoff whose ideal tail mass is below `tol`, capped at
/// `limit`.
pub fn pair_cutoff_for_tail(sources: &[SqueezedSource], tol: f64, limit: usize) -> usize {
    let dist = ideal_photon_number_distribution(sources, limit);
    let mut mass = 0.0;
    for (n, p) in dist.iter().enumerate() {
        mass += p;
        if 1.0 - mass < tol {
            return n;
        }
    }
    limit
}

/// Everything the measure module reports for one set of sources sharing a
/// spectrum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndistinguishabilityReport {
    pub q_by_pairs: BTreeMap<usize, f64>,
    pub qbar: f64,
    pub tvd_bound: f64,
    pub tail_mass: f64,
    pub photon_dist: BTreeMap<usize, f64>,
    pub mean_pairs: f64,
    pub relative_dispersion: f64,
    pub warning: Option<String>,
}

pub fn indistinguishability_report(
    sources: &[SqueezedSource],
    spectrum: &SchmidtSpectrum,
    cutoff: usize,
) -> Result<IndistinguishabilityReport> {
    let bound = qbar_and_tvd_bound(sources, spectrum, cutoff)?;
    let dist = ideal_photon_number_distribution(sources, cutoff);
    let q_by_pairs = (0..=cutoff)
        .map(|n| Ok((n, q2n(spectrum, n)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let (mean_pairs, relative_dispersion) = pair_statistics(sources);
    Ok(IndistinguishabilityReport {
        q_by_pairs,
        qbar: bound.qbar,
        tvd_bound: bound.tvd_bound,
        tail_mass: bound.tail_mass,
        photon_dist: dist.into_iter().enumerate().collect(),
        mean_pairs,
        relative_dispersion,
        warning: bound.warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn equal(n: usize, r: f64) -> Vec<SqueezedSource> {
        (0..n)
            .map(|k| SqueezedSource::single_mode(r, k).unwrap())
            .collect()
    }

    #[test]
    fn pure_spectrum_has_zero_bound() {
        let b = qbar_and_tvd_bound(&equal(2, 0.5), &SchmidtSpectrum::single_mode(0), 60).unwrap();
        assert!((b.qbar - 1.0).abs() < 1e-8);
        assert!(b.tvd_bound < 1e-8);
        assert!(b.warning.is_none());
    }

    #[test]
    fn geometric_average() {
        let r = 0.5f64.sqrt();
        let s = SchmidtSpectrum::from_weights(vec![0.5, 0.5]).unwrap();
        let b = qbar_and_tvd_bound(&equal(2, r), &s, 40).unwrap();
        let expect: f64 = (0..=40)
            .map(|n| 0.5f64.powi(n as i32 + 1) * q2n(&s, n).unwrap())
            .sum();
        assert!((b.qbar - expect).abs() < 1e-14);
        assert_eq!(b.tvd_bound, 1.0 - b.qbar);
        assert!(b.tail_mass < 1e-11);
    }

    #[test]
    fn automatic_cutoff_clears_tail() {
        let sources = equal(2, 0.6);
        let n = pair_cutoff_for_tail(&sources, TAIL_MASS_TOL, 500);
        let s = SchmidtSpectrum::from_weights(vec![0.5, 0.5]).unwrap();
        assert!(qbar_and_tvd_bound(&sources, &s, n)
            .unwrap()
            .warning
            .is_none());
        assert!(qbar_and_tvd_bound(&sources, &s, n - 1)
            .unwrap()
            .warning
            .is_some());
    }

    #[test]
    fn short_cutoff_warns() {
        let s = SchmidtSpectrum::from_weights(vec![0.5, 0.5]).unwrap();
        let b = qbar_and_tvd_bound(&equal(2, 0.9), &s, 3).unwrap();
        assert!(b.warning.is_some());
    }

    #[test]
    fn report_serializes() {
        let s = SchmidtSpectrum::from_weights(vec![0.7, 0.3]).unwrap();
        let r = indistinguishability_report(&equal(3, 0.4), &s, 10).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert!(v["q_by_pairs"]["2"].as_f64().is_some());
        assert!((r.q_by_pairs[&2] - (1.0 + 2.0 * s.purity()) / 3.0).abs() < 1e-14);
    }
}
