//! Back-of-the-envelope indistinguishability for a large experiment from
//! the measured source purity and mean photon number.

use sqzint::measure::two_mode_noise_estimate;

fn main() -> sqzint::Result<()> {
    let e = two_mode_noise_estimate(0.938, 43.0)?;
    println!("purity 0.938, 43 photons");
    println!("  ε        = {:.5}", e.epsilon);
    println!("  q approx = {:.5}", e.q_approx);
    println!(
        "  q exact  = {:.5} (floor {:.5}, ceil {:.5})",
        e.q_exact, e.q_exact_floor, e.q_exact_ceil
    );

    println!("\n{:>8} {:>8} {:>8} {:>8}", "P", "2n=20", "2n=43", "2n=76");
    for purity in [0.99, 0.97, 0.938, 0.9, 0.8] {
        print!("{purity:>8.3}");
        for photons in [20.0, 43.0, 76.0] {
            print!(
                " {:>8.4}",
                two_mode_noise_estimate(purity, photons)?.q_exact
            );
        }
        println!();
    }
    Ok(())
}
