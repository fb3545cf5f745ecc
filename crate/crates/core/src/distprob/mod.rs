//! Output probabilities of partially distinguishable sources.
//!
//! Three routes are provided, from fastest to most general:
//! [`probability_identical`] when all sources share one spectrum,
//! [`probability_orthogonal`] when no internal mode is shared, and
//! [`probability_general`] for any overlap pattern over a common basis.
//! [`probability`] picks the cheapest applicable one.

mod four_photon;
mod general;
mod identical;
mod orthogonal;

pub use four_photon::{
    balanced_conditionals, beamsplitter_conditionals, beamsplitter_pair_matrix,
    beamsplitter_three_one, four_photon_probability, BeamsplitterConditionals,
};
pub use general::probability_general;
pub use identical::{
    j_function, probability_identical, weighted_matching_sum, DistinguishabilityWeights,
    IMAGINARY_RESIDUE_TOL, SPECTRUM_MATCH_TOL,
};
pub use orthogonal::probability_orthogonal;

use serde::Serialize;

use crate::error::Result;
use crate::model::{ExperimentConfig, OutputPattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Identical,
    Orthogonal,
    General,
}

/// The cheapest route that is exact for `config`.
pub fn route_for(config: &ExperimentConfig) -> Route {
    if config.common_spectrum(SPECTRUM_MATCH_TOL).is_some() {
        Route::Identical
    } else if config.spectra_disjoint() && config.sources().iter().all(|s| s.has_symmetric_pairs())
    {
        Route::Orthogonal
    } else {
        Route::General
    }
}

/// Output probability by the cheapest applicable route.
pub fn probability(config: &ExperimentConfig, pattern: &OutputPattern) -> Result<f64> {
    match route_for(config) {
        Route::Identical => {
            let spectrum = config
                .common_spectrum(SPECTRUM_MATCH_TOL)
                .expect("checked by route_for")
                .clone();
            probability_identical(config, pattern, &spectrum)
        }
        Route::Orthogonal => probability_orthogonal(config, pattern),
        Route::General => probability_general(config, pattern),
    }
}
