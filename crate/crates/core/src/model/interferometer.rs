use ndarray::Array2;
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_UNITARITY_TOL: f64 = 1e-10;

/// Outcome of a unitarity check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UnitarityReport {
    /// `max_{ij} |(U†U - I)_{ij}|`
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

pub fn validate_unitary(u: &Array2<C64>, tol: f64) -> Result<UnitarityReport> {
    let (rows, cols) = u.dim();
    if rows != cols {
        return Err(Error::Dimension(format!(
            "{rows}x{cols} matrix is not square"
        )));
    }
    let mut dev = 0.0f64;
    for i in 0..cols {
        for j in 0..cols {
            let mut s = C64::new(0.0, 0.0);
            for k in 0..rows {
                s += u[[k, i]].conj() * u[[k, j]];
            }
            if i == j {
                s -= 1.0;
            }
            dev = dev.max(s.norm());
        }
    }
    Ok(UnitarityReport {
        max_deviation: dev,
        tolerance: tol,
        passed: dev <= tol,
    })
}

/// An `M`-port lossless interferometer. Row index is the input port, column
/// index the output port: `a†_k = Σ_l U[k, l] b†_l`.
#[derive(Clone, Debug, PartialEq)]
pub struct Interferometer {
    u: Array2<C64>,
}

impl Interferometer {
    pub fn new(u: Array2<C64>, tol: f64) -> Result<Self> {
        let report = validate_unitary(&u, tol)?;
        if !report.passed {
            return Err(Error::Config(format!(
                "interferometer is not unitary: max |U†U - I| = {:e} > {:e}",
                report.max_deviation, tol
            )));
        }
        Ok(Self { u })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            u: Array2::eye(m).mapv(|x: f64| C64::new(x, 0.0)),
        }
    }

    /// Real beamsplitter `[[u, v], [-v, u]]` with `u = cos θ`, `v = sin θ`.
    pub fn beamsplitter(theta: f64) -> Self {
        let (v, u) = theta.sin_cos();
        let m = ndarray::arr2(&[[u, v], [-v, u]]).mapv(|x| C64::new(x, 0.0));
        Self { u: m }
    }

    pub fn balanced_beamsplitter() -> Self {
        Self::beamsplitter(std::f64::consts::FRAC_PI_4)
    }

    /// Haar-random unitary from Gram-Schmidt on a complex Gaussian matrix.
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(m);
        while cols.len() < m {
            let mut v: Vec<C64> = (0..m)
                .map(|_| {
                    C64::new(
                        rng.sample::<f64, _>(StandardNormal),
                        rng.sample::<f64, _>(StandardNormal),
                    )
                })
                .collect();
            // two passes of modified Gram-Schmidt
            for _ in 0..2 {
                for c in &cols {
                    let proj: C64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                    for (vi, ci) in v.iter_mut().zip(c) {
                        *vi -= proj * ci;
                    }
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                continue;
            }
            v.iter_mut().for_each(|z| *z /= norm);
            cols.push(v);
        }
        let u = Array2::from_shape_fn((m, m), |(i, j)| cols[j][i]);
        Self { u }
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.u
    }

    pub fn entry(&self, input: usize, output: usize) -> C64 {
        self.u[[input, output]]
    }

    /// Interferometer followed by a relabeling of output ports:
    /// output `l` of `self` becomes output `perm[l]`.
    pub fn permute_outputs(&self, perm: &[usize]) -> Self {
        let m = self.dim();
        let mut u = Array2::zeros((m, m));
        for k in 0..m {
            for l in 0..m {
                u[[k, perm[l]]] = self.u[[k, l]];
            }
        }
        Self { u }
    }
}
