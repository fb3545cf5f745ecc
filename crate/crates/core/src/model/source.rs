use crate::error::{Error, Result};
use crate::model::spectrum::{SchmidtSpectrum, NORMALIZATION_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceKind {
    Degenerate,
    NonDegenerate,
}

/// One Schmidt-mode term of a source's pair-creation exponent.
///
/// The source emits pairs through `amplitude * weight * a†(ports.0, labels.0) a†(ports.1, labels.1)`,
/// where `weight` is `1/2` for degenerate sources (so that the exponent reads
/// `(r/2) Σ √p_j a†²`) and `1` for non-degenerate ones.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairMode {
    pub source: usize,
    pub amplitude: f64,
    pub weight: f64,
    pub ports: (usize, usize),
    pub labels: (usize, usize),
}

/// A multimode squeezed vacuum source. Ports are zero-based.
#[derive(Clone, Debug, PartialEq)]
pub enum SqueezedSource {
    Degenerate {
        r: f64,
        port: usize,
        spectrum: SchmidtSpectrum,
    },
    /// Signal photons enter `ports.0` in the `signal` modes, idler photons
    /// enter `ports.1` in the `idler` modes. Both share the Schmidt weights.
    NonDegenerate {
        r: f64,
        ports: (usize, usize),
        signal: SchmidtSpectrum,
        idler: SchmidtSpectrum,
    },
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!(
            "squeezing amplitude r = {r} must lie in (0, 1)"
        )));
    }
    Ok(())
}

impl SqueezedSource {
    pub fn degenerate(r: f64, port: usize, spectrum: SchmidtSpectrum) -> Result<Self> {
        check_r(r)?;
        Ok(Self::Degenerate { r, port, spectrum })
    }

    pub fn single_mode(r: f64, port: usize) -> Result<Self> {
        Self::degenerate(r, port, SchmidtSpectrum::single_mode(0))
    }

    pub fn non_degenerate(
        r: f64,
        ports: (usize, usize),
        signal: SchmidtSpectrum,
        idler: SchmidtSpectrum,
    ) -> Result<Self> {
        check_r(r)?;
        if ports.0 == ports.1 {
            return Err(Error::Config(
                "non-degenerate source must occupy two distinct ports".into(),
            ));
        }
        if signal.len() != idler.len()
            || signal
                .weights()
                .iter()
                .zip(idler.weights())
                .any(|(a, b)| (a - b).abs() > NORMALIZATION_TOL)
        {
            return Err(Error::InvalidSpectrum(
                "signal and idler spectra must carry the same Schmidt weights".into(),
            ));
        }
        Ok(Self::NonDegenerate {
            r,
            ports,
            signal,
            idler,
        })
    }

    pub fn kind(&self) -> SourceKind {
        match self {
            Self::Degenerate { .. } => SourceKind::Degenerate,
            Self::NonDegenerate { .. } => SourceKind::NonDegenerate,
        }
    }

    pub fn r(&self) -> f64 {
        match self {
            Self::Degenerate { r, .. } | Self::NonDegenerate { r, .. } => *r,
        }
    }

    pub fn spectrum(&self) -> &SchmidtSpectrum {
        match self {
            Self::Degenerate { spectrum, .. } => spectrum,
            Self::NonDegenerate { signal, .. } => signal,
        }
    }

    pub fn ports(&self) -> Vec<usize> {
        match self {
            Self::Degenerate { port, .. } => vec![*port],
            Self::NonDegenerate { ports, .. } => vec![ports.0, ports.1],
        }
    }

    /// Every basis index the source's photons can occupy.
    pub fn basis_indices(&self) -> Vec<usize> {
        let mut out = self.spectrum().basis().to_vec();
        if let Self::NonDegenerate { idler, .. } = self {
            out.extend_from_slice(idler.basis());
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// True when both photons of every pair share one internal mode, so the
    /// pair state is `Σ √p_j |φ_j⟩|φ_j⟩`.
    pub fn has_symmetric_pairs(&self) -> bool {
        match self {
            Self::Degenerate { .. } => true,
            Self::NonDegenerate { signal, idler, .. } => signal.basis() == idler.basis(),
        }
    }

    /// Vacuum probability of this source alone.
    pub fn vacuum_probability(&self) -> f64 {
        let r2 = self.r() * self.r();
        let prod: f64 = self
            .spectrum()
            .weights()
            .iter()
            .map(|p| 1.0 - r2 * p)
            .product();
        match self {
            Self::Degenerate { .. } => prod.sqrt(),
            Self::NonDegenerate { .. } => prod,
        }
    }

    /// Vacuum probability the source would have with a single Schmidt mode.
    pub fn ideal_vacuum_probability(&self) -> f64 {
        let v = 1.0 - self.r() * self.r();
        match self {
            Self::Degenerate { .. } => v.sqrt(),
            Self::NonDegenerate { .. } => v,
        }
    }

    /// Pair-creation terms, tagged with `source` as the owning index.
    pub fn pair_modes(&self, source: usize) -> Vec<PairMode> {
        match self {
            Self::Degenerate { r, port, spectrum } => spectrum
                .modes()
                .map(|(b, p)| PairMode {
                    source,
                    amplitude: r * p.sqrt(),
                    weight: 0.5,
                    ports: (*port, *port),
                    labels: (b, b),
                })
                .collect(),
            Self::NonDegenerate {
                r,
                ports,
                signal,
                idler,
            } => signal
                .modes()
                .zip(idler.basis())
                .map(|((b, p), &b2)| PairMode {
                    source,
                    amplitude: r * p.sqrt(),
                    weight: 1.0,
                    ports: *ports,
                    labels: (b, b2),
                })
                .collect(),
        }
    }
}
