use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `Σ p_j = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Normalized Schmidt weights of a photon-pair state.
///
/// Each weight `p_j` is attached to a global internal-mode index. Two spectra
/// that share a basis index put photons into the same internal mode; distinct
/// indices are orthogonal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchmidtSpectrum {
    weights: Vec<f64>,
    basis: Vec<usize>,
}

impl SchmidtSpectrum {
    pub fn new(weights: Vec<f64>, basis: Vec<usize>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidSpectrum("no Schmidt modes".into()));
        }
        if weights.len() != basis.len() {
            return Err(Error::InvalidSpectrum(format!(
                "{} weights but {} basis indices",
                weights.len(),
                basis.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidSpectrum(format!(
                "negative or non-finite weight {w}"
            )));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidSpectrum(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        let mut sorted = basis.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSpectrum("repeated basis index".into()));
        }
        Ok(Self { weights, basis })
    }

    /// Weights `0..len` on basis indices `0..len`.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        let basis = (0..weights.len()).collect();
        Self::new(weights, basis)
    }

    /// Rescales arbitrary non-negative weights to unit sum.
    pub fn normalized(raw: Vec<f64>, basis: Vec<usize>) -> Result<Self> {
        let total: f64 = raw.iter().sum();
        if total.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::InvalidSpectrum("weights sum to zero".into()));
        }
        Self::new(raw.iter().map(|w| w / total).collect(), basis)
    }

    /// Single Schmidt mode on the given basis index.
    pub fn single_mode(basis_index: usize) -> Self {
        Self {
            weights: vec![1.0],
            basis: vec![basis_index],
        }
    }

    /// `J` equal weights on basis indices `offset..offset + J`.
    pub fn uniform(modes: usize, offset: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::InvalidSpectrum("no Schmidt modes".into()));
        }
        let w = 1.0 / modes as f64;
        Self::new(vec![w; modes], (offset..offset + modes).collect())
    }

    /// Two-mode noise model `(1 - ε, ε)`.
    pub fn two_mode(epsilon: f64, offset: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::Domain(format!(
                "noise amplitude {epsilon} not in [0, 1]"
            )));
        }
        Self::new(vec![1.0 - epsilon, epsilon], vec![offset, offset + 1])
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Iterates `(basis index, weight)`.
    pub fn modes(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.basis.iter().copied().zip(self.weights.iter().copied())
    }

    /// `M_k = Σ_j p_j^k`.
    pub fn moment(&self, k: u32) -> f64 {
        self.weights.iter().map(|p| p.powi(k as i32)).sum()
    }

    /// `[M_1, M_2, ..., M_n]` (index 0 holds `M_1`).
    pub fn moments(&self, n: usize) -> Vec<f64> {
        (1..=n as u32).map(|k| self.moment(k)).collect()
    }

    pub fn purity(&self) -> f64 {
        self.moment(2)
    }

    pub fn schmidt_number(&self) -> f64 {
        1.0 / self.purity()
    }

    /// Same weights and same basis assignment, mode order ignored.
    pub fn coincides_with(&self, other: &Self, tol: f64) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut a: Vec<_> = self.modes().collect();
        let mut b: Vec<_> = other.modes().collect();
        a.sort_by_key(|m| m.0);
        b.sort_by_key(|m| m.0);
        a.iter()
            .zip(&b)
            .all(|(x, y)| x.0 == y.0 && (x.1 - y.1).abs() <= tol)
    }

    /// True when the two spectra share no basis index.
    pub fn is_disjoint_from(&self, other: &Self) -> bool {
        self.basis.iter().all(|b| !other.basis.contains(b))
    }

    /// Copy with every basis index passed through `f`.
    pub fn relabeled(&self, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::new(
            self.weights.clone(),
            self.basis.iter().map(|&b| f(b)).collect(),
        )
    }
}
