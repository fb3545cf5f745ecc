//! Pair partitions of `2n` points: enumeration in a fixed order, canonical
//! forms, projection of permutations and relative cycle structure.

mod cycle;
mod matching;
mod permutation;

pub use cycle::{
    count_by_cycle_type, cycle_index_matchings, cycle_type_from_partners, relative_cycle_type,
    CycleType,
};
pub use matching::{
    enumerate_matchings, enumerate_ordered_matchings, is_canonical, matching_count, Matching,
    MatchingSet, OrderedMatching, HARD_MAX_PAIRS,
};
pub use permutation::{project_permutation, Permutation};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Ways to split `μn` points into `n` unordered groups of `μ`:
/// `(μn)! / ((μ!)^n n!)`.
pub fn mu_matching_count(mu: usize, n: usize) -> Result<BigUint> {
    if mu < 2 || n < 1 {
        return Err(Error::Domain(format!(
            "need μ ≥ 2 and n ≥ 1, got μ = {mu}, n = {n}"
        )));
    }
    let fact = |k: usize| (1..=k as u64).fold(BigUint::one(), |acc, x| acc * x);
    Ok(fact(mu * n) / (fact(mu).pow(n as u32) * fact(n)))
}

/// `(2n - 1)!!` as a float, for normalizations.
pub fn double_factorial_odd(n: usize) -> f64 {
    (1..=n).map(|i| (2 * i - 1) as f64).product()
}
