use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{SchmidtSpectrum, SqueezedSource};

/// Internal state of one photon pair, `Σ_j c_j |a_j⟩|b_j⟩`, over a shared
/// orthonormal basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PairState {
    terms: Vec<(f64, usize, usize)>,
}

impl PairState {
    /// `Σ_j √p_j |j⟩|j⟩`
    pub fn symmetric(spectrum: &SchmidtSpectrum) -> Self {
        Self {
            terms: spectrum.modes().map(|(b, p)| (p.sqrt(), b, b)).collect(),
        }
    }

    pub fn from_source(source: &SqueezedSource) -> Self {
        match source {
            SqueezedSource::Degenerate { spectrum, .. } => Self::symmetric(spectrum),
            SqueezedSource::NonDegenerate { signal, idler, .. } => Self {
                terms: signal
                    .modes()
                    .zip(idler.basis())
                    .map(|((a, p), &b)| (p.sqrt(), a, b))
                    .collect(),
            },
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// True when `σ` maps every slot pair `{2i, 2i+1}` onto a slot pair.
fn preserves_pairs(sigma: &[usize]) -> bool {
    sigma.chunks_exact(2).all(|p| p[0] / 2 == p[1] / 2)
}

/// Probability that the pairs, one in each listed state, are in a fully
/// symmetric internal state, normalized by the pair-symmetrized norm:
/// `⟨Φ|Ŝ₂ₙ|Φ⟩ / ⟨Φ|Ŝ_pairs|Φ⟩`. Brute force over all `(2n)!` permutations.
pub fn q2n_general(pairs: &[PairState], max_photons: usize) -> Result<f64> {
    let n = pairs.len();
    if n == 0 {
        return Err(Error::Domain("need at least one pair".into()));
    }
    if 2 * n > max_photons {
        return Err(Error::ResourceGuard {
            what: "photons for the symmetrizer sum",
            value: 2 * n,
            limit: max_photons,
        });
    }
    // product state as label sequence -> amplitude
    let mut state: BTreeMap<Vec<usize>, f64> = BTreeMap::from([(vec![], 1.0)]);
    for pair in pairs {
        let mut next = BTreeMap::new();
        for (labels, amp) in &state {
            for &(c, a, b) in &pair.terms {
                let mut l = labels.clone();
                l.extend([a, b]);
                *next.entry(l).or_insert(0.0) += amp * c;
            }
        }
        state = next;
    }
    let mut sigma: Vec<usize> = (0..2 * n).collect();
    let (mut full, mut paired) = (0.0, 0.0);
    let (mut full_count, mut paired_count) = (0usize, 0usize);
    loop {
        let overlap: f64 = state
            .iter()
            .map(|(labels, amp)| {
                let moved: Vec<usize> = sigma.iter().map(|&s| labels[s]).collect();
                amp * state.get(&moved).copied().unwrap_or(0.0)
            })
            .sum();
        full += overlap;
        full_count += 1;
        if preserves_pairs(&sigma) {
            paired += overlap;
            paired_count += 1;
        }
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    Ok((full / full_count as f64) / (paired / paired_count as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::q2n::q2n;

    #[test]
    fn identical_pairs_match_q2n() {
        let s = SchmidtSpectrum::from_weights(vec![0.5, 0.3, 0.2]).unwrap();
        for n in 1..=3 {
            let pairs = vec![PairState::symmetric(&s); n];
            let g = q2n_general(&pairs, 6).unwrap();
            assert!((g - q2n(&s, n).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn disjoint_pairs_reach_the_floor() {
        let a = PairState::symmetric(&SchmidtSpectrum::single_mode(0));
        let b = PairState::symmetric(&SchmidtSpectrum::single_mode(1));
        assert!((q2n_general(&[a.clone(), b.clone()], 6).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(q2n_general(&[a], 6).unwrap(), 1.0);
    }

    #[test]
    fn guard() {
        let a = PairState::symmetric(&SchmidtSpectrum::single_mode(0));
        assert!(q2n_general(&vec![a; 4], 6).is_err());
    }

    #[test]
    fn permutation_count() {
        let mut v: Vec<usize> = (0..5).collect();
        let mut c = 1;
        while next_permutation(&mut v) {
            c += 1;
        }
        assert_eq!(c, 120);
    }
}
