//! q₂ₙ for a few spectra, and the averaged measure with its total-variation
//! bound for a set of equal sources.

use sqzint::measure::{
    indistinguishability_report, pair_cutoff_for_tail, q2n, q2n_floor, TAIL_MASS_TOL,
};
use sqzint::model::{SchmidtSpectrum, SqueezedSource};

fn main() -> sqzint::Result<()> {
    let spectra = [
        ("single mode", SchmidtSpectrum::single_mode(0)),
        ("two-mode ε=0.032", SchmidtSpectrum::two_mode(0.032, 0)?),
        ("0.5, 0.5", SchmidtSpectrum::from_weights(vec![0.5, 0.5])?),
        ("uniform J=20", SchmidtSpectrum::uniform(20, 0)?),
    ];
    print!("{:<18}", "n");
    for n in 1..=8 {
        print!("{n:>10}");
    }
    println!();
    for (name, s) in &spectra {
        print!("{name:<18}");
        for n in 1..=8 {
            print!("{:>10.5}", q2n(s, n)?);
        }
        println!();
    }
    print!("{:<18}", "floor 1/(2n-1)!!");
    for n in 1..=8 {
        print!("{:>10.5}", q2n_floor(n));
    }
    println!();

    let spectrum = SchmidtSpectrum::two_mode(0.032, 0)?;
    let sources = (0..8)
        .map(|k| SqueezedSource::degenerate(0.5, k, spectrum.clone()))
        .collect::<sqzint::Result<Vec<_>>>()?;
    let cutoff = pair_cutoff_for_tail(&sources, TAIL_MASS_TOL, 400);
    let report = indistinguishability_report(&sources, &spectrum, cutoff)?;
    println!("\n8 sources, r = 0.5, cutoff {cutoff} pairs");
    println!("mean pairs          {:.4}", report.mean_pairs);
    println!("relative dispersion {:.4}", report.relative_dispersion);
    println!("q̄                   {:.6}", report.qbar);
    println!("TVD bound           {:.6}", report.tvd_bound);
    println!("tail mass           {:.2e}", report.tail_mass);
    Ok(())
}
