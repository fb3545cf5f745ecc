use std::path::Path;

use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::interferometer::{Interferometer, DEFAULT_UNITARITY_TOL};
use crate::model::source::{PairMode, SqueezedSource};
use crate::model::spectrum::SchmidtSpectrum;

pub const DEFAULT_MAX_MATCHING_PAIRS: usize = 10;
pub const DEFAULT_MAX_BRUTE_FORCE_PHOTONS: usize = 6;
pub const DEFAULT_ORACLE_PAIR_CUTOFF: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    pub unitarity_tol: f64,
    /// Largest `n` for which matchings of `2n` elements are enumerated.
    pub max_matching_pairs: usize,
    /// Largest photon number `2n` accepted by the permutation-sum paths.
    pub max_brute_force_photons: usize,
    /// Total pair cutoff for the Fock oracle and photon-number sums.
    pub photon_cutoff: usize,
    pub threads: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            unitarity_tol: DEFAULT_UNITARITY_TOL,
            max_matching_pairs: DEFAULT_MAX_MATCHING_PAIRS,
            max_brute_force_photons: DEFAULT_MAX_BRUTE_FORCE_PHOTONS,
            photon_cutoff: DEFAULT_ORACLE_PAIR_CUTOFF,
            threads: None,
        }
    }
}

/// Interferometer, sources and numerical options of one experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    interferometer: Interferometer,
    sources: Vec<SqueezedSource>,
    pub options: Options,
}

impl ExperimentConfig {
    pub fn new(interferometer: Interferometer, sources: Vec<SqueezedSource>) -> Result<Self> {
        Self::with_options(interferometer, sources, Options::default())
    }

    pub fn with_options(
        interferometer: Interferometer,
        sources: Vec<SqueezedSource>,
        options: Options,
    ) -> Result<Self> {
        let dim = interferometer.dim();
        let mut used = vec![false; dim];
        for s in &sources {
            for p in s.ports() {
                if p >= dim {
                    return Err(Error::PortOutOfRange { port: p + 1, dim });
                }
                if used[p] {
                    return Err(Error::Config(format!(
                        "port {} hosts more than one source",
                        p + 1
                    )));
                }
                used[p] = true;
            }
        }
        Ok(Self {
            interferometer,
            sources,
            options,
        })
    }

    pub fn interferometer(&self) -> &Interferometer {
        &self.interferometer
    }

    pub fn sources(&self) -> &[SqueezedSource] {
        &self.sources
    }

    pub fn ports(&self) -> usize {
        self.interferometer.dim()
    }

    /// Same sources on a different interferometer of equal size.
    pub fn with_interferometer(&self, interferometer: Interferometer) -> Result<Self> {
        Self::with_options(interferometer, self.sources.clone(), self.options.clone())
    }

    pub fn pair_modes(&self) -> Vec<PairMode> {
        self.sources
            .iter()
            .enumerate()
            .flat_map(|(k, s)| s.pair_modes(k))
            .collect()
    }

    /// The spectrum shared by every source, when all sources emit
    /// symmetric pairs into one common set of internal modes.
    pub fn common_spectrum(&self, tol: f64) -> Option<&SchmidtSpectrum> {
        let first = self.sources.first()?.spectrum();
        self.sources
            .iter()
            .all(|s| s.has_symmetric_pairs() && s.spectrum().coincides_with(first, tol))
            .then_some(first)
    }

    /// True when no two sources share an internal basis index.
    pub fn spectra_disjoint(&self) -> bool {
        let sets: Vec<Vec<usize>> = self.sources.iter().map(|s| s.basis_indices()).collect();
        sets.iter().enumerate().all(|(i, a)| {
            sets[i + 1..]
                .iter()
                .all(|b| a.iter().all(|x| !b.contains(x)))
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: RawConfig = serde_json::from_str(s)?;
        raw.try_into()
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&RawConfig::from(self))?)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    im: Option<Vec<Vec<f64>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpectrum {
    weights: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawPort {
    Single(usize),
    Pair([usize; 2]),
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq)]
#[serde(rename_all = "kebab-case")]
enum RawKind {
    Degenerate,
    NonDegenerate,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSource {
    port: RawPort,
    r: f64,
    kind: RawKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    spectrum: Option<RawSpectrum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    idler_basis: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    interferometer: RawMatrix,
    sources: Vec<RawSource>,
    #[serde(default)]
    options: Options,
}

fn to_zero_based(p: usize) -> Result<usize> {
    p.checked_sub(1)
        .ok_or_else(|| Error::Config("ports are numbered from 1".into()))
}

impl TryFrom<RawSpectrum> for SchmidtSpectrum {
    type Error = Error;

    fn try_from(raw: RawSpectrum) -> Result<Self> {
        match raw.basis {
            Some(b) => SchmidtSpectrum::new(raw.weights, b),
            None => SchmidtSpectrum::from_weights(raw.weights),
        }
    }
}

impl TryFrom<RawConfig> for ExperimentConfig {
    type Error = Error;

    fn try_from(raw: RawConfig) -> Result<Self> {
        let m = raw.interferometer.re.len();
        if raw.interferometer.re.iter().any(|row| row.len() != m) {
            return Err(Error::Dimension("interferometer.re is not square".into()));
        }
        let im = match raw.interferometer.im {
            Some(im) => {
                if im.len() != m || im.iter().any(|row| row.len() != m) {
                    return Err(Error::Dimension(
                        "interferometer.im does not match interferometer.re".into(),
                    ));
                }
                im
            }
            None => vec![vec![0.0; m]; m],
        };
        let u = Array2::from_shape_fn((m, m), |(i, j)| {
            C64::new(raw.interferometer.re[i][j], im[i][j])
        });
        let interferometer = Interferometer::new(u, raw.options.unitarity_tol)?;

        let mut sources = Vec::with_capacity(raw.sources.len());
        for s in raw.sources {
            let spectrum = match s.spectrum {
                Some(sp) => SchmidtSpectrum::try_from(sp)?,
                None => SchmidtSpectrum::single_mode(0),
            };
            let source = match (s.kind, s.port) {
                (RawKind::Degenerate, RawPort::Single(p)) => {
                    if s.idler_basis.is_some() {
                        return Err(Error::Config(
                            "idler_basis needs a non-degenerate source".into(),
                        ));
                    }
                    SqueezedSource::degenerate(s.r, to_zero_based(p)?, spectrum)?
                }
                (RawKind::NonDegenerate, RawPort::Pair([a, b])) => {
                    let idler = match s.idler_basis {
                        Some(basis) => SchmidtSpectrum::new(spectrum.weights().to_vec(), basis)?,
                        None => spectrum.clone(),
                    };
                    SqueezedSource::non_degenerate(
                        s.r,
                        (to_zero_based(a)?, to_zero_based(b)?),
                        spectrum,
                        idler,
                    )?
                }
                (RawKind::Degenerate, RawPort::Pair(_)) => {
                    return Err(Error::Config(
                        "a degenerate source takes a single port".into(),
                    ))
                }
                (RawKind::NonDegenerate, RawPort::Single(_)) => {
                    return Err(Error::Config(
                        "a non-degenerate source takes a port pair".into(),
                    ))
                }
            };
            sources.push(source);
        }
        ExperimentConfig::with_options(interferometer, sources, raw.options)
    }
}

impl From<&SchmidtSpectrum> for RawSpectrum {
    fn from(s: &SchmidtSpectrum) -> Self {
        Self {
            weights: s.weights().to_vec(),
            basis: Some(s.basis().to_vec()),
        }
    }
}

impl From<&ExperimentConfig> for RawConfig {
    fn from(c: &ExperimentConfig) -> Self {
        let u = c.interferometer.matrix();
        let rows = |f: fn(&C64) -> f64| -> Vec<Vec<f64>> {
            u.rows()
                .into_iter()
                .map(|r| r.iter().map(f).collect())
                .collect()
        };
        let sources = c
            .sources
            .iter()
            .map(|s| match s {
                SqueezedSource::Degenerate { r, port, spectrum } => RawSource {
                    port: RawPort::Single(port + 1),
                    r: *r,
                    kind: RawKind::Degenerate,
                    spectrum: Some(spectrum.into()),
                    idler_basis: None,
                },
                SqueezedSource::NonDegenerate {
                    r,
                    ports,
                    signal,
                    idler,
                } => RawSource {
                    port: RawPort::Pair([ports.0 + 1, ports.1 + 1]),
                    r: *r,
                    kind: RawKind::NonDegenerate,
                    spectrum: Some(signal.into()),
                    idler_basis: Some(idler.basis().to_vec()),
                },
            })
            .collect();
        Self {
            interferometer: RawMatrix {
                re: rows(|z| z.re),
                im: Some(rows(|z| z.im)),
            },
            sources,
            options: c.options.clone(),
        }
    }
}
