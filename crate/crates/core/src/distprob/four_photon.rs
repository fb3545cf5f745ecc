use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hafnian::check_symmetric;
use crate::model::OutputPattern;

/// Closed-form four-photon probability for sources sharing a spectrum of
/// purity `purity`:
///
/// `(p₀/m!) (|A₁₂A₃₄|² + |A₁₃A₂₄|² + |A₁₄A₂₃|²
///   + 2P Re{(A₁₃*A₂₄* + A₁₄*A₂₃*) A₁₂A₃₄ + A₁₃*A₂₄* A₁₄A₂₃})`
pub fn four_photon_probability(
    a: &Array2<C64>,
    purity: f64,
    p0: f64,
    pattern: &OutputPattern,
) -> Result<f64> {
    if pattern.total() != 4 {
        return Err(Error::Precondition(format!(
            "four-photon formula used with {} photons",
            pattern.total()
        )));
    }
    if check_symmetric(a)? != 2 {
        return Err(Error::Dimension(
            "four-photon formula needs a 4x4 matrix".into(),
        ));
    }
    let h1 = a[[0, 1]] * a[[2, 3]];
    let h2 = a[[0, 2]] * a[[1, 3]];
    let h3 = a[[0, 3]] * a[[1, 2]];
    let diag = h1.norm_sqr() + h2.norm_sqr() + h3.norm_sqr();
    let cross = ((h2.conj() + h3.conj()) * h1 + h2.conj() * h3).re;
    Ok(p0 / pattern.factorial() * (diag + 2.0 * purity * cross))
}

/// Four-photon outcome probabilities of a two-port beamsplitter, each
/// divided by their sum `p(4) = p₄₀ + p₀₄ + p₂₂`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BeamsplitterConditionals {
    pub p40: f64,
    pub p04: f64,
    pub p22: f64,
}

/// Pair-amplitude matrix of two single-port sources behind the real
/// beamsplitter `[[u, v], [-v, u]]`, indexed by output port.
pub fn beamsplitter_pair_matrix(r1: f64, r2: f64, theta: f64) -> [[f64; 2]; 2] {
    let (v, u) = theta.sin_cos();
    let a11 = r1 * u * u + r2 * v * v;
    let a12 = (r1 - r2) * u * v;
    let a22 = r1 * v * v + r2 * u * u;
    [[a11, a12], [a12, a22]]
}

/// Lifts a port-indexed pair matrix to the photon-indexed `4 x 4` matrix of
/// a pattern.
fn lift(port_matrix: [[f64; 2]; 2], pattern: &OutputPattern) -> Array2<C64> {
    let ports = pattern.port_multiset();
    Array2::from_shape_fn((4, 4), |(i, j)| {
        C64::new(port_matrix[ports[i]][ports[j]], 0.0)
    })
}

/// Conditionals from the closed form for two single-port sources behind the
/// beamsplitter `theta`.
pub fn beamsplitter_conditionals(
    r1: f64,
    r2: f64,
    theta: f64,
    purity: f64,
) -> Result<BeamsplitterConditionals> {
    let am = beamsplitter_pair_matrix(r1, r2, theta);
    let p = |counts: Vec<usize>| {
        let m = OutputPattern::new(counts);
        four_photon_probability(&lift(am, &m), purity, 1.0, &m)
    };
    let (p40, p04, p22) = (p(vec![4, 0])?, p(vec![0, 4])?, p(vec![2, 2])?);
    let total = p40 + p04 + p22;
    Ok(BeamsplitterConditionals {
        p40: p40 / total,
        p04: p04 / total,
        p22: p22 / total,
    })
}

/// Analytic values for a balanced beamsplitter with equal sources:
/// `p₄₀ = p₀₄ = (1 + 2P)/(4 + 4P)`, `p₂₂ = 1/(2 + 2P)`.
pub fn balanced_conditionals(purity: f64) -> BeamsplitterConditionals {
    let edge = (1.0 + 2.0 * purity) / (4.0 + 4.0 * purity);
    BeamsplitterConditionals {
        p40: edge,
        p04: edge,
        p22: 1.0 / (2.0 + 2.0 * purity),
    }
}

/// `(p₀/2) A₁₁² A₁₂² (1 + 2P)`, the beamsplitter probability of `(3, 1)`.
pub fn beamsplitter_three_one(r1: f64, r2: f64, theta: f64, purity: f64, p0: f64) -> f64 {
    let am = beamsplitter_pair_matrix(r1, r2, theta);
    p0 / 2.0 * am[0][0].powi(2) * am[0][1].powi(2) * (1.0 + 2.0 * purity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn balanced_pure_values() {
        let c = beamsplitter_conditionals(0.4, 0.4, FRAC_PI_4, 1.0).unwrap();
        assert!((c.p40 - 0.375).abs() < 1e-14);
        assert!((c.p04 - 0.375).abs() < 1e-14);
        assert!((c.p22 - 0.25).abs() < 1e-14);
    }

    #[test]
    fn balanced_values_for_any_purity() {
        for &p in &[0.2, 0.5, 0.938, 1.0] {
            let c = beamsplitter_conditionals(0.3, 0.3, FRAC_PI_4, p).unwrap();
            let e = balanced_conditionals(p);
            assert!((c.p40 - e.p40).abs() < 1e-14);
            assert!((c.p22 - e.p22).abs() < 1e-14);
        }
        let e = balanced_conditionals(0.938);
        assert!((e.p40 - 0.371_0).abs() < 1e-4);
        assert!((e.p22 - 0.258_0).abs() < 1e-4);
    }

    #[test]
    fn three_one_matches_general_formula() {
        let (r1, r2, th, p) = (0.5, 0.3, 0.4, 0.7);
        let m = OutputPattern::new(vec![3, 1]);
        let a = lift(beamsplitter_pair_matrix(r1, r2, th), &m);
        let general = four_photon_probability(&a, p, 0.8, &m).unwrap();
        assert!((general - beamsplitter_three_one(r1, r2, th, p, 0.8)).abs() < 1e-15);
    }

    #[test]
    fn wrong_photon_number() {
        let m = OutputPattern::new(vec![2, 0]);
        let a = Array2::zeros((4, 4));
        assert!(four_photon_probability(&a, 1.0, 1.0, &m).is_err());
    }
}
