//! Pair-number distributions: single-mode against multimode sources, and
//! the negative-binomial closed form for equal sources.

use sqzint::measure::{
    equal_sources_photon_number, ideal_photon_number_distribution, mean_pairs_and_dispersion,
    photon_number_distribution,
};
use sqzint::model::{SchmidtSpectrum, SqueezedSource};

fn main() -> sqzint::Result<()> {
    let (n_src, r) = (6, 0.6);
    let spectrum = SchmidtSpectrum::from_weights(vec![0.5, 0.3, 0.2])?;
    let sources = (0..n_src)
        .map(|k| SqueezedSource::degenerate(r, k, spectrum.clone()))
        .collect::<sqzint::Result<Vec<_>>>()?;

    let ideal = ideal_photon_number_distribution(&sources, 12);
    let multi = photon_number_distribution(&sources, 12);
    println!(
        "{:>4} {:>12} {:>12} {:>12}",
        "2n", "single-mode", "closed form", "multimode"
    );
    for n in 0..=12 {
        println!(
            "{:>4} {:>12.6e} {:>12.6e} {:>12.6e}",
            2 * n,
            ideal[n],
            equal_sources_photon_number(n_src, r, n)?,
            multi[n]
        );
    }
    let (mean, disp) = mean_pairs_and_dispersion(n_src, r)?;
    println!("\nmean pairs {mean:.4}, relative dispersion {disp:.4}");
    Ok(())
}
