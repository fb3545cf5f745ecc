#![allow(dead_code)]

use rand::SeedableRng;
use sqzint::model::{ExperimentConfig, Interferometer, SchmidtSpectrum, SqueezedSource};

pub struct Case {
    pub name: &'static str,
    pub config: ExperimentConfig,
    pub pairs: usize,
}

fn schmidt(weights: &[f64], basis: &[usize]) -> SchmidtSpectrum {
    SchmidtSpectrum::new(weights.to_vec(), basis.to_vec()).unwrap()
}

fn deg(r: f64, port: usize, s: SchmidtSpectrum) -> SqueezedSource {
    SqueezedSource::degenerate(r, port, s).unwrap()
}

fn nondeg(
    r: f64,
    ports: (usize, usize),
    signal: SchmidtSpectrum,
    idler: SchmidtSpectrum,
) -> SqueezedSource {
    SqueezedSource::non_degenerate(r, ports, signal, idler).unwrap()
}

fn dft3() -> Interferometer {
    use ndarray::Array2;
    use num_complex::Complex64 as C64;
    let s = 1.0 / 3f64.sqrt();
    let u = Array2::from_shape_fn((3, 3), |(i, j)| {
        C64::from_polar(s, 2.0 * std::f64::consts::PI * (i * j) as f64 / 3.0)
    });
    Interferometer::new(u, 1e-12).unwrap()
}

/// Regression corpus: up to three ports, two sources, three Schmidt modes
/// per source, four photons, plus two six-photon cases.
pub fn corpus() -> Vec<Case> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    let mut random = |m: usize| Interferometer::random(m, &mut rng);
    let bs = Interferometer::balanced_beamsplitter;
    let case = |name, u, sources, pairs| Case {
        name,
        config: ExperimentConfig::new(u, sources).unwrap(),
        pairs,
    };
    vec![
        // shared spectrum
        case(
            "one port pure",
            Interferometer::identity(1),
            vec![deg(0.5, 0, schmidt(&[1.0], &[0]))],
            2,
        ),
        case(
            "one port two modes",
            Interferometer::identity(1),
            vec![deg(0.5, 0, schmidt(&[0.5, 0.5], &[0, 1]))],
            2,
        ),
        case(
            "bs equal modes",
            bs(),
            vec![
                deg(0.4, 0, schmidt(&[0.5, 0.5], &[0, 1])),
                deg(0.4, 1, schmidt(&[0.5, 0.5], &[0, 1])),
            ],
            2,
        ),
        case(
            "random2 three modes",
            random(2),
            vec![
                deg(0.5, 0, schmidt(&[0.6, 0.3, 0.1], &[0, 1, 2])),
                deg(0.3, 1, schmidt(&[0.6, 0.3, 0.1], &[0, 1, 2])),
            ],
            2,
        ),
        case(
            "random3 two modes",
            random(3),
            vec![
                deg(0.45, 0, schmidt(&[0.7, 0.3], &[0, 1])),
                deg(0.35, 2, schmidt(&[0.7, 0.3], &[0, 1])),
            ],
            2,
        ),
        case(
            "random3 one source",
            random(3),
            vec![deg(0.5, 1, schmidt(&[0.5, 0.3, 0.2], &[0, 1, 2]))],
            2,
        ),
        case(
            "random2 one source",
            random(2),
            vec![deg(0.6, 0, schmidt(&[0.9, 0.1], &[0, 1]))],
            2,
        ),
        case(
            "random3 pure",
            random(3),
            vec![
                deg(0.4, 0, schmidt(&[1.0], &[0])),
                deg(0.5, 1, schmidt(&[1.0], &[0])),
            ],
            2,
        ),
        case(
            "dft3 shared",
            dft3(),
            vec![
                deg(0.4, 0, schmidt(&[0.6, 0.4], &[0, 1])),
                deg(0.4, 1, schmidt(&[0.6, 0.4], &[0, 1])),
            ],
            2,
        ),
        // disjoint spectra
        case(
            "bs orthogonal pure",
            bs(),
            vec![
                deg(0.5, 0, schmidt(&[1.0], &[0])),
                deg(0.5, 1, schmidt(&[1.0], &[1])),
            ],
            2,
        ),
        case(
            "random3 orthogonal",
            random(3),
            vec![
                deg(0.4, 0, schmidt(&[0.6, 0.4], &[0, 1])),
                deg(0.5, 2, schmidt(&[1.0], &[2])),
            ],
            2,
        ),
        case(
            "random3 orthogonal two-two",
            random(3),
            vec![
                deg(0.4, 1, schmidt(&[0.5, 0.5], &[0, 1])),
                deg(0.3, 2, schmidt(&[0.3, 0.7], &[2, 3])),
            ],
            2,
        ),
        case(
            "random2 orthogonal two-three",
            random(2),
            vec![
                deg(0.45, 0, schmidt(&[0.8, 0.2], &[0, 1])),
                deg(0.4, 1, schmidt(&[0.5, 0.3, 0.2], &[2, 3, 4])),
            ],
            2,
        ),
        // partial overlap and non-degenerate sources
        case(
            "random2 partial overlap",
            random(2),
            vec![
                deg(0.5, 0, schmidt(&[0.6, 0.4], &[0, 1])),
                deg(0.4, 1, schmidt(&[0.5, 0.5], &[1, 2])),
            ],
            2,
        ),
        case(
            "random3 same basis other weights",
            random(3),
            vec![
                deg(0.4, 0, schmidt(&[0.7, 0.3], &[0, 1])),
                deg(0.4, 1, schmidt(&[0.2, 0.8], &[0, 1])),
            ],
            2,
        ),
        case(
            "random3 three-two overlap",
            random(3),
            vec![
                deg(0.35, 0, schmidt(&[0.5, 0.3, 0.2], &[0, 1, 2])),
                deg(0.45, 2, schmidt(&[0.4, 0.6], &[2, 3])),
            ],
            2,
        ),
        case(
            "bs nondegenerate pure",
            bs(),
            vec![nondeg(
                0.5,
                (0, 1),
                schmidt(&[1.0], &[0]),
                schmidt(&[1.0], &[1]),
            )],
            2,
        ),
        case(
            "random2 nondegenerate",
            random(2),
            vec![nondeg(
                0.4,
                (0, 1),
                schmidt(&[0.5, 0.5], &[0, 1]),
                schmidt(&[0.5, 0.5], &[2, 3]),
            )],
            2,
        ),
        case(
            "random3 nondegenerate mix",
            random(3),
            vec![
                nondeg(
                    0.35,
                    (1, 2),
                    schmidt(&[0.8, 0.2], &[0, 1]),
                    schmidt(&[0.8, 0.2], &[2, 3]),
                ),
                deg(0.3, 0, schmidt(&[0.6, 0.4], &[0, 2])),
            ],
            2,
        ),
        case(
            "random3 nondegenerate shared idler",
            random(3),
            vec![
                nondeg(0.4, (0, 2), schmidt(&[1.0], &[0]), schmidt(&[1.0], &[0])),
                deg(0.4, 1, schmidt(&[1.0], &[0])),
            ],
            2,
        ),
        // six photons
        case(
            "bs shared six photons",
            bs(),
            vec![
                deg(0.5, 0, schmidt(&[0.7, 0.3], &[0, 1])),
                deg(0.5, 1, schmidt(&[0.7, 0.3], &[0, 1])),
            ],
            3,
        ),
        case(
            "random2 overlap six photons",
            random(2),
            vec![
                deg(0.5, 0, schmidt(&[0.6, 0.4], &[0, 1])),
                deg(0.45, 1, schmidt(&[0.5, 0.5], &[1, 2])),
            ],
            3,
        ),
    ]
}
