//! Four-photon outcomes of two equal squeezers on a balanced beamsplitter
//! as the source purity drops: bunching (4,0)/(0,4) against (2,2).

use std::f64::consts::FRAC_PI_4;

use sqzint::distprob::{balanced_conditionals, beamsplitter_conditionals, probability};
use sqzint::model::{
    ExperimentConfig, Interferometer, OutputPattern, SchmidtSpectrum, SqueezedSource,
};

fn main() -> sqzint::Result<()> {
    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>12}",
        "P", "p40", "p22", "closed", "full model"
    );
    for purity in [1.0, 0.938, 0.8, 0.6, 0.51] {
        let c = beamsplitter_conditionals(0.3, 0.3, FRAC_PI_4, purity)?;
        let analytic = balanced_conditionals(purity);

        // the same ratio from a two-mode spectrum with that purity
        let eps = (1.0 - (2.0 * purity - 1.0).sqrt()) / 2.0;
        let spectrum = SchmidtSpectrum::two_mode(eps, 0)?;
        let config = ExperimentConfig::new(
            Interferometer::balanced_beamsplitter(),
            vec![
                SqueezedSource::degenerate(0.3, 0, spectrum.clone())?,
                SqueezedSource::degenerate(0.3, 1, spectrum)?,
            ],
        )?;
        let p = |c: Vec<usize>| probability(&config, &OutputPattern::new(c));
        let (p40, p04, p22) = (p(vec![4, 0])?, p(vec![0, 4])?, p(vec![2, 2])?);

        println!(
            "{purity:>6.3} {:>10.6} {:>10.6} {:>10.6} {:>12.6}",
            c.p40,
            c.p22,
            analytic.p22,
            p22 / (p40 + p04 + p22)
        );
    }
    Ok(())
}
