use crate::error::{Error, Result};
use crate::model::{SourceKind, SqueezedSource};

/// Pair-number distribution of one squeezed mode with `x = r² p_j`:
/// degenerate `√(1-x) C(2s,s) (x/4)^s`, non-degenerate `(1-x) x^s`.
fn single_mode_pairs(kind: SourceKind, x: f64, max_pairs: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(max_pairs + 1);
    match kind {
        SourceKind::Degenerate => {
            let mut t = (1.0 - x).sqrt();
            for s in 0..=max_pairs {
                out.push(t);
                t *= (2 * s + 1) as f64 / (2 * (s + 1)) as f64 * x;
            }
        }
        SourceKind::NonDegenerate => {
            let mut t = 1.0 - x;
            for _ in 0..=max_pairs {
                out.push(t);
                t *= x;
            }
        }
    }
    out
}

fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let len = a.len().min(b.len());
    (0..len)
        .map(|n| (0..=n).map(|s| a[s] * b[n - s]).sum())
        .collect()
}

fn distribution(sources: &[SqueezedSource], max_pairs: usize, multimode: bool) -> Vec<f64> {
    let mut dist = vec![0.0; max_pairs + 1];
    dist[0] = 1.0;
    for s in sources {
        let r2 = s.r() * s.r();
        if multimode {
            for &p in s.spectrum().weights() {
                dist = convolve(&dist, &single_mode_pairs(s.kind(), r2 * p, max_pairs));
            }
        } else {
            dist = convolve(&dist, &single_mode_pairs(s.kind(), r2, max_pairs));
        }
    }
    dist
}

/// `p(2n)` for `n = 0..=max_pairs`: probability that the sources emit
/// exactly `n` pairs, with every Schmidt mode of every source counted.
pub fn photon_number_distribution(sources: &[SqueezedSource], max_pairs: usize) -> Vec<f64> {
    distribution(sources, max_pairs, true)
}

/// Same for single-mode sources of the same squeezing.
pub fn ideal_photon_number_distribution(sources: &[SqueezedSource], max_pairs: usize) -> Vec<f64> {
    distribution(sources, max_pairs, false)
}

/// `p(2n)` of `N` equal single-mode degenerate sources:
/// `(1-r²)^{N/2} (N/2)_n r^{2n} / n!`, evaluated in log space.
pub fn equal_sources_photon_number(sources: usize, r: f64, n: usize) -> Result<f64> {
    check_r(r)?;
    let half = sources as f64 / 2.0;
    let r2 = r * r;
    let ln_pochhammer: f64 = (0..n).map(|i| (half + i as f64).ln()).sum();
    let ln_fact: f64 = (2..=n).map(|k| (k as f64).ln()).sum();
    Ok((half * (1.0 - r2).ln() + ln_pochhammer + n as f64 * r2.ln() - ln_fact).exp())
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!(
            "squeezing amplitude r = {r} must lie in (0, 1)"
        )));
    }
    Ok(())
}

/// Mean pair number `(N/2) r²/(1-r²)` and relative dispersion `2/(N r²)` of
/// `N` equal single-mode sources.
pub fn mean_pairs_and_dispersion(sources: usize, r: f64) -> Result<(f64, f64)> {
    check_r(r)?;
    if sources == 0 {
        return Err(Error::Domain("need at least one source".into()));
    }
    let n = sources as f64;
    let r2 = r * r;
    Ok((n / 2.0 * r2 / (1.0 - r2), 2.0 / (n * r2)))
}

/// Mean pair number and relative dispersion (variance over squared mean)
/// of arbitrary single-mode sources.
pub fn pair_statistics(sources: &[SqueezedSource]) -> (f64, f64) {
    let (mut mean, mut var) = (0.0, 0.0);
    for s in sources {
        let x = s.r() * s.r();
        let shape = match s.kind() {
            SourceKind::Degenerate => 0.5,
            SourceKind::NonDegenerate => 1.0,
        };
        mean += shape * x / (1.0 - x);
        var += shape * x / (1.0 - x).powi(2);
    }
    (mean, var / (mean * mean))
}
