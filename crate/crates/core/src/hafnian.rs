//! Hafnians by direct summation over matchings, a Ryser permanent, and the
//! output probabilities of fully indistinguishable sources.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matchings::{Matching, MatchingSet};
use crate::model::config::DEFAULT_MAX_MATCHING_PAIRS;
use crate::model::{a_matrix, ideal_vacuum_probability, ExperimentConfig, OutputPattern};
use crate::reduce::chunked_sum;

pub const SYMMETRY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HafnianResult {
    pub value: C64,
    /// `(2n - 1)!!`
    pub n_terms: usize,
}

pub(crate) fn check_symmetric(a: &Array2<C64>) -> Result<usize> {
    let (rows, cols) = a.dim();
    if rows != cols {
        return Err(Error::Dimension(format!(
            "{rows}x{cols} matrix is not square"
        )));
    }
    if rows % 2 == 1 {
        return Err(Error::Dimension(format!("hafnian of odd dimension {rows}")));
    }
    let scale = a.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    for i in 0..rows {
        for j in i + 1..rows {
            if (a[[i, j]] - a[[j, i]]).norm() > SYMMETRY_TOL * scale {
                return Err(Error::Precondition(format!(
                    "matrix is not symmetric at ({i}, {j})"
                )));
            }
        }
    }
    Ok(rows / 2)
}

/// `Π_i A[α_{2i}, α_{2i+1}]` for one matching.
pub fn matching_product(a: &Array2<C64>, m: &Matching) -> C64 {
    m.pairs()
        .fold(C64::new(1.0, 0.0), |acc, (i, j)| acc * a[[i, j]])
}

/// Hafnian with a bound on the number of pairs.
pub fn hafnian_with_limit(a: &Array2<C64>, max_pairs: usize) -> Result<HafnianResult> {
    let n = check_symmetric(a)?;
    let set = MatchingSet::new(n, max_pairs)?;
    let value = chunked_sum(set.len(), C64::new(0.0, 0.0), |i| {
        matching_product(a, &set.get(i))
    });
    Ok(HafnianResult {
        value,
        n_terms: set.len(),
    })
}

/// `Σ_{α} Π_i A[α_{2i}, α_{2i+1}]` over all perfect matchings. Diagonal
/// entries are never read.
pub fn hafnian(a: &Array2<C64>) -> Result<C64> {
    Ok(hafnian_with_limit(a, DEFAULT_MAX_MATCHING_PAIRS)?.value)
}

/// Permanent of a square matrix by Ryser's formula with Gray-code updates.
pub fn permanent(b: &Array2<C64>) -> Result<C64> {
    let (n, cols) = b.dim();
    if n != cols {
        return Err(Error::Dimension(format!("{n}x{cols} matrix is not square")));
    }
    if n == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    if n > 30 {
        return Err(Error::ResourceGuard {
            what: "permanent size",
            value: n,
            limit: 30,
        });
    }
    let mut row_sums = vec![C64::new(0.0, 0.0); n];
    let mut total = C64::new(0.0, 0.0);
    let mut gray: u64 = 0;
    for k in 1u64..(1 << n) {
        let next = k ^ (k >> 1);
        let col = (gray ^ next).trailing_zeros() as usize;
        let sign = if next & (1 << col) != 0 { 1.0 } else { -1.0 };
        for (r, s) in row_sums.iter_mut().enumerate() {
            *s += b[[r, col]] * sign;
        }
        gray = next;
        let prod = row_sums.iter().fold(C64::new(1.0, 0.0), |acc, z| acc * z);
        if next.count_ones() % 2 == n as u32 % 2 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(total)
}

/// Output probability when every source has a single Schmidt mode:
/// `(p₀ / m!) |Haf A|²`, where `p₀` is the single-mode vacuum probability.
pub fn ideal_probability(config: &ExperimentConfig, pattern: &OutputPattern) -> Result<f64> {
    if pattern.total() % 2 == 1 {
        return Ok(0.0);
    }
    let p0 = ideal_vacuum_probability(config);
    if pattern.is_vacuum() {
        return Ok(p0);
    }
    let a = a_matrix(config, pattern)?;
    let h = hafnian_with_limit(&a, config.options.max_matching_pairs)?.value;
    Ok(p0 / pattern.factorial() * h.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Interferometer, SqueezedSource};
    use ndarray::{arr2, s};
    use rand::{Rng, SeedableRng};

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn random_complex(rng: &mut impl Rng) -> C64 {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    }

    #[test]
    fn small_cases() {
        let a = arr2(&[[c(5.0), c(2.0)], [c(2.0), c(-1.0)]]);
        assert_eq!(hafnian(&a).unwrap(), c(2.0));
        assert_eq!(hafnian(&Array2::from_elem((4, 4), c(1.0))).unwrap(), c(3.0));
        assert_eq!(hafnian(&Array2::zeros((0, 0))).unwrap(), c(1.0));
    }

    #[test]
    fn four_by_four_structure() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let mut a = Array2::zeros((4, 4));
        for i in 0..4 {
            for j in i..4 {
                let z = random_complex(&mut rng);
                a[[i, j]] = z;
                a[[j, i]] = z;
            }
        }
        let expect = a[[0, 1]] * a[[2, 3]] + a[[0, 2]] * a[[1, 3]] + a[[0, 3]] * a[[1, 2]];
        assert!((hafnian(&a).unwrap() - expect).norm() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(hafnian(&Array2::zeros((3, 3))).is_err());
        let a = arr2(&[[c(0.0), c(1.0)], [c(2.0), c(0.0)]]);
        assert!(matches!(hafnian(&a), Err(Error::Precondition(_))));
    }

    fn naive_permanent(b: &Array2<C64>) -> C64 {
        let n = b.nrows();
        if n == 0 {
            return c(1.0);
        }
        (0..n)
            .map(|j| {
                let minor = ndarray::concatenate(
                    ndarray::Axis(1),
                    &[b.slice(s![1.., ..j]), b.slice(s![1.., j + 1..])],
                )
                .unwrap();
                b[[0, j]] * naive_permanent(&minor)
            })
            .sum()
    }

    #[test]
    fn ryser_matches_expansion() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for n in 1..=6 {
            let b = Array2::from_shape_fn((n, n), |_| random_complex(&mut rng));
            let d = (permanent(&b).unwrap() - naive_permanent(&b)).norm();
            assert!(d < 1e-12, "n = {n}, diff {d}");
        }
    }

    #[test]
    fn block_hafnian_is_permanent() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for n in 1..=5 {
            let b = Array2::from_shape_fn((n, n), |_| random_complex(&mut rng));
            let mut a = Array2::zeros((2 * n, 2 * n));
            a.slice_mut(s![..n, n..]).assign(&b);
            a.slice_mut(s![n.., ..n]).assign(&b.t());
            let h = hafnian(&a).unwrap();
            let p = permanent(&b).unwrap();
            assert!((h - p).norm() <= 1e-10 * p.norm().max(1.0));
        }
    }

    #[test]
    fn single_source_two_photons() {
        let r: f64 = 0.45;
        let cfg = ExperimentConfig::new(
            Interferometer::identity(2),
            vec![SqueezedSource::single_mode(r, 0).unwrap()],
        )
        .unwrap();
        let p = ideal_probability(&cfg, &OutputPattern::new(vec![2, 0])).unwrap();
        // single-mode pair distribution: √(1-r²) C(2,1) (r/2)²
        let expect = (1.0 - r * r).sqrt() * 2.0 * (r / 2.0).powi(2);
        assert!((p - expect).abs() < 1e-15);
        assert_eq!(
            ideal_probability(&cfg, &OutputPattern::new(vec![1, 0])).unwrap(),
            0.0
        );
        assert_eq!(
            ideal_probability(&cfg, &OutputPattern::vacuum(2)).unwrap(),
            (1.0 - r * r).sqrt()
        );
    }

    #[test]
    fn non_degenerate_pair_on_identity() {
        let r: f64 = 0.6;
        let s = crate::model::SchmidtSpectrum::single_mode(0);
        let cfg = ExperimentConfig::new(
            Interferometer::identity(2),
            vec![SqueezedSource::non_degenerate(r, (0, 1), s.clone(), s).unwrap()],
        )
        .unwrap();
        let p = ideal_probability(&cfg, &OutputPattern::new(vec![1, 1])).unwrap();
        assert!((p - (1.0 - r * r) * r * r).abs() < 1e-15);
        assert_eq!(
            ideal_probability(&cfg, &OutputPattern::new(vec![2, 0])).unwrap(),
            0.0
        );
    }

    #[test]
    fn balanced_beamsplitter_conditionals() {
        let cfg = ExperimentConfig::new(
            Interferometer::balanced_beamsplitter(),
            vec![
                SqueezedSource::single_mode(0.3, 0).unwrap(),
                SqueezedSource::single_mode(0.3, 1).unwrap(),
            ],
        )
        .unwrap();
        let p = |v: Vec<usize>| ideal_probability(&cfg, &OutputPattern::new(v)).unwrap();
        let (p40, p04, p22) = (p(vec![4, 0]), p(vec![0, 4]), p(vec![2, 2]));
        let tot = p40 + p04 + p22;
        assert!((p40 / tot - 0.375).abs() < 1e-12);
        assert!((p04 / tot - 0.375).abs() < 1e-12);
        assert!((p22 / tot - 0.25).abs() < 1e-12);
        assert!(p(vec![3, 1]) < 1e-30);
    }
}
