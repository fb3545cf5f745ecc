//! Domain types and the small matrix constructions shared by every
//! probability routine.

pub mod config;
pub mod interferometer;
pub mod pattern;
pub mod source;
pub mod spectrum;

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
pub use config::{ExperimentConfig, Options};
pub use interferometer::{validate_unitary, Interferometer, UnitarityReport};
pub use pattern::OutputPattern;
pub use source::{PairMode, SourceKind, SqueezedSource};
pub use spectrum::SchmidtSpectrum;

/// Port multiset of `pattern`, checked against the interferometer size.
pub(crate) fn checked_ports(dim: usize, pattern: &OutputPattern) -> Result<Vec<usize>> {
    if pattern.is_vacuum() {
        return Err(Error::EmptyPattern);
    }
    pattern.pairs()?;
    let ports = pattern.port_multiset();
    if let Some(&l) = ports.iter().find(|&&l| l >= dim) {
        return Err(Error::PortOutOfRange { port: l + 1, dim });
    }
    Ok(ports)
}

/// `M × 2n` matrix whose column `i` is column `l_i` of `U`.
pub fn reduced_matrix(u: &Interferometer, pattern: &OutputPattern) -> Result<Array2<C64>> {
    let ports = checked_ports(u.dim(), pattern)?;
    let m = u.matrix();
    Ok(Array2::from_shape_fn((u.dim(), ports.len()), |(k, i)| {
        m[[k, ports[i]]]
    }))
}

/// Adds the contribution of one source to a symmetric `A`.
pub(crate) fn accumulate_source(
    a: &mut Array2<C64>,
    u: &Interferometer,
    source: &SqueezedSource,
    ports: &[usize],
) {
    let dim = ports.len();
    let um = u.matrix();
    for i in 0..dim {
        for j in i..dim {
            let v = match source {
                SqueezedSource::Degenerate { r, port, .. } => {
                    um[[*port, ports[i]]] * um[[*port, ports[j]]] * *r
                }
                SqueezedSource::NonDegenerate {
                    r, ports: (p, q), ..
                } => {
                    (um[[*p, ports[i]]] * um[[*q, ports[j]]]
                        + um[[*q, ports[i]]] * um[[*p, ports[j]]])
                        * *r
                }
            };
            a[[i, j]] += v;
            if i != j {
                a[[j, i]] += v;
            }
        }
    }
}

/// Symmetric `2n × 2n` matrix of the pair-creation amplitudes restricted to
/// the detected output ports.
pub fn a_matrix(config: &ExperimentConfig, pattern: &OutputPattern) -> Result<Array2<C64>> {
    let ports = checked_ports(config.ports(), pattern)?;
    let mut a = Array2::zeros((ports.len(), ports.len()));
    for s in config.sources() {
        accumulate_source(&mut a, config.interferometer(), s, &ports);
    }
    Ok(a)
}

/// The same matrix built from one source only.
pub fn source_a_matrix(
    config: &ExperimentConfig,
    source: usize,
    pattern: &OutputPattern,
) -> Result<Array2<C64>> {
    let ports = checked_ports(config.ports(), pattern)?;
    let mut a = Array2::zeros((ports.len(), ports.len()));
    accumulate_source(
        &mut a,
        config.interferometer(),
        &config.sources()[source],
        &ports,
    );
    Ok(a)
}

/// Probability of detecting no photons at all.
pub fn vacuum_probability(config: &ExperimentConfig) -> f64 {
    config
        .sources()
        .iter()
        .map(|s| s.vacuum_probability())
        .product()
}

/// Vacuum probability the sources would have with single Schmidt modes.
pub fn ideal_vacuum_probability(config: &ExperimentConfig) -> f64 {
    config
        .sources()
        .iter()
        .map(|s| s.ideal_vacuum_probability())
        .product()
}
