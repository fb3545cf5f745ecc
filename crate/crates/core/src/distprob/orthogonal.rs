use std::collections::HashMap;

use crate::distprob::identical::{weighted_matching_sum, DistinguishabilityWeights};
use crate::error::{Error, Result};
use crate::model::{source_a_matrix, ExperimentConfig, OutputPattern};

/// Output probability when no two sources share an internal mode: a
/// convolution of single-source probabilities over every split of the
/// pattern into even parts.
pub fn probability_orthogonal(config: &ExperimentConfig, pattern: &OutputPattern) -> Result<f64> {
    if !config.spectra_disjoint() {
        return Err(Error::Precondition(
            "sources share internal modes; use probability_identical or probability_general".into(),
        ));
    }
    if config.sources().iter().any(|s| !s.has_symmetric_pairs()) {
        return Err(Error::Precondition(
            "signal and idler modes differ; use probability_general".into(),
        ));
    }
    if pattern.total() % 2 == 1 {
        return Ok(0.0);
    }
    if pattern.ports() != config.ports() {
        return Err(Error::Dimension(format!(
            "pattern has {} ports, interferometer {}",
            pattern.ports(),
            config.ports()
        )));
    }
    let mut cache: HashMap<(usize, Vec<usize>), f64> = HashMap::new();
    let mut rest = pattern.counts().to_vec();
    convolve(config, 0, &mut rest, &mut cache)
}

fn single_source(
    config: &ExperimentConfig,
    k: usize,
    counts: &[usize],
    cache: &mut HashMap<(usize, Vec<usize>), f64>,
) -> Result<f64> {
    if let Some(&p) = cache.get(&(k, counts.to_vec())) {
        return Ok(p);
    }
    let source = &config.sources()[k];
    let pattern = OutputPattern::new(counts.to_vec());
    let p0 = source.vacuum_probability();
    let p = if pattern.is_vacuum() {
        p0
    } else {
        let n = pattern.pairs()?;
        let a = source_a_matrix(config, k, &pattern)?;
        let w = DistinguishabilityWeights::new(source.spectrum(), n);
        p0 / pattern.factorial() * weighted_matching_sum(&a, &w, config.options.max_matching_pairs)?
    };
    cache.insert((k, counts.to_vec()), p);
    Ok(p)
}

fn convolve(
    config: &ExperimentConfig,
    k: usize,
    rest: &mut Vec<usize>,
    cache: &mut HashMap<(usize, Vec<usize>), f64>,
) -> Result<f64> {
    let last = k + 1 == config.sources().len();
    if last {
        if rest.iter().sum::<usize>() % 2 == 1 {
            return Ok(0.0);
        }
        return single_source(config, k, rest, cache);
    }
    // every sub-pattern of `rest` with an even total goes to source k
    let mut total = 0.0;
    let mut part = vec![0; rest.len()];
    loop {
        if part.iter().sum::<usize>() % 2 == 0 {
            let pk = single_source(config, k, &part, cache)?;
            if pk > 0.0 {
                for (r, p) in rest.iter_mut().zip(&part) {
                    *r -= p;
                }
                total += pk * convolve(config, k + 1, rest, cache)?;
                for (r, p) in rest.iter_mut().zip(&part) {
                    *r += p;
                }
            }
        }
        // odometer over 0..=rest[l]
        let mut l = 0;
        loop {
            if l == part.len() {
                return Ok(total);
            }
            if part[l] < rest[l] {
                part[l] += 1;
                break;
            }
            part[l] = 0;
            l += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distprob::identical::probability_identical;
    use crate::model::{Interferometer, SchmidtSpectrum, SqueezedSource};

    #[test]
    fn one_source_equals_identical() {
        let schmidt = SchmidtSpectrum::from_weights(vec![0.7, 0.3]).unwrap();
        let cfg = ExperimentConfig::new(
            Interferometer::balanced_beamsplitter(),
            vec![SqueezedSource::degenerate(0.5, 0, schmidt.clone()).unwrap()],
        )
        .unwrap();
        for m in OutputPattern::all_with_total(2, 4) {
            let a = probability_orthogonal(&cfg, &m).unwrap();
            let b = probability_identical(&cfg, &m, &schmidt).unwrap();
            assert!((a - b).abs() < 1e-16);
        }
    }

    #[test]
    fn two_single_mode_sources_one_one() {
        let (r1, r2) = (0.5, 0.4);
        let cfg = ExperimentConfig::new(
            Interferometer::balanced_beamsplitter(),
            vec![
                SqueezedSource::degenerate(r1, 0, SchmidtSpectrum::single_mode(0)).unwrap(),
                SqueezedSource::degenerate(r2, 1, SchmidtSpectrum::single_mode(1)).unwrap(),
            ],
        )
        .unwrap();
        let p = probability_orthogonal(&cfg, &OutputPattern::new(vec![1, 1])).unwrap();
        // each source alone: p₀ᵏ r_k² |u v|² with u v = ±1/2
        let q1 = (1.0 - r1 * r1).sqrt();
        let q2 = (1.0 - r2 * r2).sqrt();
        let expect = q1 * r1 * r1 * 0.25 * q2 + q2 * r2 * r2 * 0.25 * q1;
        assert!((p - expect).abs() < 1e-15);
    }

    #[test]
    fn overlapping_rejected() {
        let s = SchmidtSpectrum::single_mode(0);
        let cfg = ExperimentConfig::new(
            Interferometer::identity(2),
            vec![
                SqueezedSource::degenerate(0.3, 0, s.clone()).unwrap(),
                SqueezedSource::degenerate(0.3, 1, s).unwrap(),
            ],
        )
        .unwrap();
        assert!(probability_orthogonal(&cfg, &OutputPattern::new(vec![1, 1])).is_err());
    }
}
