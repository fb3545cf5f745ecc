//! Perfect matchings, relative cycle types and the cycle index that turns
//! spectral moments into indistinguishability weights.

use sqzint::matchings::{
    count_by_cycle_type, cycle_index_matchings, is_canonical, matching_count, relative_cycle_type,
    CycleType, Matching, MatchingSet, Permutation,
};

fn main() -> sqzint::Result<()> {
    for n in 1..=8 {
        println!("|M_{}| = {}", 2 * n, matching_count(n));
    }

    let set = MatchingSet::new(3, 8)?;
    let base = Matching::identity(3);
    println!(
        "\nmatchings of 6 points, cycle type relative to {:?}:",
        base.to_one_based()
    );
    for m in set.iter() {
        let ty = relative_cycle_type(&base, &m)?;
        println!("  {:?}  {:?}", m.to_one_based(), ty.counts());
    }

    println!("\ncycle-type counts for n = 4:");
    let mut total = 0u128;
    for ty in CycleType::all(4) {
        let c = count_by_cycle_type(4, &ty)?;
        total += c;
        println!("  {:?} -> {c}", ty.counts());
    }
    println!("  total {total}");

    let t = [1.0, 0.5, 0.3, 0.2];
    println!(
        "\ncycle index at t = {t:?}: {:.6}",
        cycle_index_matchings(4, &t)?
    );

    // canonical matchings are not closed under inversion or composition
    let alpha = Permutation::from_one_based(&[1, 5, 2, 4, 3, 6])?;
    let inv = alpha.inverse();
    println!(
        "\nα = (1,5,2,4,3,6) canonical: {}, α⁻¹ canonical: {}, α² canonical: {}",
        is_canonical(alpha.image()),
        is_canonical(inv.image()),
        is_canonical(alpha.compose(&alpha).image())
    );
    Ok(())
}
