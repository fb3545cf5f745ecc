//! Sources that do not share a spectrum: fully orthogonal sources and a
//! partially overlapping mix with a non-degenerate source, loaded from the
//! sample configs.

use std::path::Path;

use sqzint::distprob::{probability, route_for};
use sqzint::model::{ExperimentConfig, OutputPattern};

fn main() -> sqzint::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    for name in ["tritter_orthogonal.json", "tritter_nondegenerate.json"] {
        let config = ExperimentConfig::from_path(&dir.join(name))?;
        println!("{name}: route {:?}", route_for(&config));
        for photons in [2, 4] {
            let mut total = 0.0;
            for m in OutputPattern::all_with_total(config.ports(), photons) {
                let p = probability(&config, &m)?;
                total += p;
                println!("  {:<8} {:.6e}", m.to_string(), p);
            }
            println!("  p({photons}) = {total:.6e}");
        }
    }
    Ok(())
}
