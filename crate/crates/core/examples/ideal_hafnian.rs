//! Ideal squeezers on a random interferometer: hafnians, the permanent of
//! a bipartite block, and the resulting pattern probabilities.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use rand::SeedableRng;
use sqzint::hafnian::{hafnian, ideal_probability, permanent};
use sqzint::model::{a_matrix, ExperimentConfig, Interferometer, OutputPattern, SqueezedSource};

fn main() -> sqzint::Result<()> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);

    // Haf [[0, B], [Bᵀ, 0]] = perm B
    let b = Array2::from_shape_fn((3, 3), |(i, j)| {
        C64::new((i + 2 * j) as f64, (i * j) as f64 * 0.5)
    });
    let mut block = Array2::zeros((6, 6));
    for i in 0..3 {
        for j in 0..3 {
            block[[i, 3 + j]] = b[[i, j]];
            block[[3 + j, i]] = b[[i, j]];
        }
    }
    println!("haf(block) = {:.6}", hafnian(&block)?);
    println!("perm(B)    = {:.6}", permanent(&b)?);

    let sources = (0..3)
        .map(|k| SqueezedSource::single_mode(0.45, k))
        .collect::<sqzint::Result<Vec<_>>>()?;
    let config = ExperimentConfig::new(Interferometer::random(4, &mut rng), sources)?;

    let pattern: OutputPattern = "1,1,1,1".parse()?;
    println!("\nA for {pattern}:\n{:.4}", a_matrix(&config, &pattern)?);

    println!("\n{:<10} {:>14}", "pattern", "probability");
    let mut total = 0.0;
    for m in OutputPattern::all_with_total(4, 4) {
        let p = ideal_probability(&config, &m)?;
        total += p;
        println!("{:<10} {:>14.6e}", m.to_string(), p);
    }
    println!("sum over 4-photon patterns: {total:.6e}");
    Ok(())
}
