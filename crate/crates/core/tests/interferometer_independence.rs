use rand::SeedableRng;
use sqzint::distprob::probability;
use sqzint::measure::photon_number_distribution;
use sqzint::model::{
    ExperimentConfig, Interferometer, OutputPattern, SchmidtSpectrum, SqueezedSource,
};

fn sector_sums(cfg: &ExperimentConfig, max_pairs: usize) -> Vec<f64> {
    (0..=max_pairs)
        .map(|n| {
            OutputPattern::all_with_total(cfg.ports(), 2 * n)
                .iter()
                .map(|m| probability(cfg, m).unwrap())
                .sum()
        })
        .collect()
}

#[test]
fn photon_number_sectors_ignore_the_interferometer() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(77);
    let spectrum = SchmidtSpectrum::from_weights(vec![0.6, 0.3, 0.1]).unwrap();
    for m in 2..=4 {
        let sources: Vec<_> = (0..m.min(3))
            .map(|k| SqueezedSource::degenerate(0.3 + 0.1 * k as f64, k, spectrum.clone()).unwrap())
            .collect();
        let a =
            ExperimentConfig::new(Interferometer::random(m, &mut rng), sources.clone()).unwrap();
        let b = a
            .with_interferometer(Interferometer::random(m, &mut rng))
            .unwrap();
        let dist = photon_number_distribution(&sources, 3);
        for ((x, y), d) in sector_sums(&a, 3).iter().zip(sector_sums(&b, 3)).zip(dist) {
            assert!((x - y).abs() < 1e-10, "M = {m}: {x} vs {y}");
            assert!((x - d).abs() < 1e-10, "M = {m}: {x} vs {d}");
        }
    }
}

#[test]
fn output_relabeling_permutes_probabilities() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(5);
    let spectrum = SchmidtSpectrum::from_weights(vec![0.7, 0.3]).unwrap();
    let cfg = ExperimentConfig::new(
        Interferometer::random(3, &mut rng),
        vec![
            SqueezedSource::degenerate(0.4, 0, spectrum.clone()).unwrap(),
            SqueezedSource::degenerate(0.5, 2, spectrum).unwrap(),
        ],
    )
    .unwrap();
    let perm = [2, 0, 1];
    let moved = cfg
        .with_interferometer(cfg.interferometer().permute_outputs(&perm))
        .unwrap();
    for m in OutputPattern::all_with_total(3, 4) {
        let p = probability(&cfg, &m).unwrap();
        let q = probability(&moved, &m.permuted(&perm)).unwrap();
        assert!((p - q).abs() < 1e-13, "{m}: {p} vs {q}");
    }
}
