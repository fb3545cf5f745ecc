//! Brute-force Fock-space evolution as an independent check of the
//! matching-based probabilities.

use rand::SeedableRng;
use sqzint::cli::oracle_check;
use sqzint::model::{ExperimentConfig, Interferometer, SchmidtSpectrum, SqueezedSource};
use sqzint::oracle::{apply_interferometer, build_input_state, detection_probability};

fn main() -> sqzint::Result<()> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    let spectrum = SchmidtSpectrum::from_weights(vec![0.6, 0.3, 0.1])?;
    let config = ExperimentConfig::new(
        Interferometer::random(3, &mut rng),
        vec![
            SqueezedSource::degenerate(0.4, 0, spectrum.clone())?,
            SqueezedSource::degenerate(0.3, 1, spectrum)?,
        ],
    )?;

    let input = build_input_state(&config, 2)?;
    let output = apply_interferometer(&input, config.interferometer());
    println!(
        "terms in: {}, out: {}",
        input.amplitudes().len(),
        output.amplitudes().len()
    );
    println!("truncation tail: {:.3e}", input.tail_mass());
    println!(
        "p(2,1,1) oracle: {:.12e}",
        detection_probability(&output, &"2,1,1".parse()?)
    );

    let report = oracle_check(&config, 2, 1e-9)?;
    println!(
        "{} patterns, max deviation {:.3e}, passed {}",
        report.document["patterns"],
        report.document["max_abs_deviation"]
            .as_f64()
            .unwrap_or(f64::NAN),
        report.document["passed"]
    );
    Ok(())
}
