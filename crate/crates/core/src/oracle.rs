//! Brute-force reference: the squeezed input is expanded in occupation
//! numbers, pushed through the interferometer by substituting creation
//! operators, and detected by summing squared amplitudes. Nothing here
//! touches matchings or hafnians.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::model::{vacuum_probability, ExperimentConfig, Interferometer, OutputPattern};

/// Largest pair cutoff accepted by [`build_input_state`].
pub const MAX_PAIR_CUTOFF: usize = 6;

/// Occupation numbers keyed by `(port, internal label)`, zeros omitted.
pub type Occupation = BTreeMap<(usize, usize), u32>;

/// A truncated multimode Fock state.
#[derive(Clone, Debug, PartialEq)]
pub struct FockState {
    amplitudes: BTreeMap<Occupation, C64>,
    pair_cutoff: usize,
}

impl FockState {
    pub fn vacuum() -> Self {
        Self {
            amplitudes: BTreeMap::from([(Occupation::new(), C64::new(1.0, 0.0))]),
            pair_cutoff: 0,
        }
    }

    pub fn amplitudes(&self) -> &BTreeMap<Occupation, C64> {
        &self.amplitudes
    }

    pub fn pair_cutoff(&self) -> usize {
        self.pair_cutoff
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(|a| a.norm_sqr()).sum()
    }

    /// Probability left out by the truncation.
    pub fn tail_mass(&self) -> f64 {
        (1.0 - self.norm_sqr()).max(0.0)
    }

    /// Applies `a†_{port,label}` to every term, with the `√(n+1)` factor.
    fn create(&self, port: usize, label: usize) -> BTreeMap<Occupation, C64> {
        let mut out = BTreeMap::new();
        for (occ, amp) in &self.amplitudes {
            let mut next = occ.clone();
            let n = next.entry((port, label)).or_insert(0);
            *n += 1;
            let factor = (*n as f64).sqrt();
            *out.entry(next).or_insert(C64::new(0.0, 0.0)) += amp * factor;
        }
        out
    }
}

fn add_into(acc: &mut BTreeMap<Occupation, C64>, other: BTreeMap<Occupation, C64>, scale: C64) {
    for (k, v) in other {
        *acc.entry(k).or_insert(C64::new(0.0, 0.0)) += v * scale;
    }
}

/// Input state `Z Σ_{n ≤ cutoff} (1/n!) (Σ_q c_q w_q a†a†)ⁿ |0⟩`.
pub fn build_input_state(config: &ExperimentConfig, pair_cutoff: usize) -> Result<FockState> {
    if pair_cutoff > MAX_PAIR_CUTOFF {
        return Err(Error::ResourceGuard {
            what: "oracle pair cutoff",
            value: pair_cutoff,
            limit: MAX_PAIR_CUTOFF,
        });
    }
    let modes = config.pair_modes();
    let z = vacuum_probability(config).sqrt();
    let mut term = FockState::vacuum();
    let mut total = term.amplitudes.clone();
    for n in 1..=pair_cutoff {
        let mut next = BTreeMap::new();
        for m in &modes {
            let first = FockState {
                amplitudes: term.create(m.ports.0, m.labels.0),
                pair_cutoff: 0,
            };
            let second = first.create(m.ports.1, m.labels.1);
            add_into(
                &mut next,
                second,
                C64::new(m.amplitude * m.weight / n as f64, 0.0),
            );
        }
        term = FockState {
            amplitudes: next,
            pair_cutoff: 0,
        };
        add_into(&mut total, term.amplitudes.clone(), C64::new(1.0, 0.0));
    }
    for v in total.values_mut() {
        *v *= z;
    }
    Ok(FockState {
        amplitudes: total,
        pair_cutoff,
    })
}

fn factorial_sqrt(occ: &Occupation) -> f64 {
    occ.values()
        .map(|&n| (1..=n).map(|k| k as f64).product::<f64>())
        .product::<f64>()
        .sqrt()
}

/// Substitutes `a†_{k,e} → Σ_l U[k,l] b†_{l,e}` in every term.
pub fn apply_interferometer(state: &FockState, u: &Interferometer) -> FockState {
    let m = u.matrix();
    let mut out: BTreeMap<Occupation, C64> = BTreeMap::new();
    for (occ, amp) in &state.amplitudes {
        // monomial coefficients: |n⟩ = Π (a†)^n / √n! |0⟩
        let mut poly: BTreeMap<Occupation, C64> =
            BTreeMap::from([(Occupation::new(), amp / factorial_sqrt(occ))]);
        for (&(port, label), &count) in occ {
            for _ in 0..count {
                let mut next = BTreeMap::new();
                for (mono, coeff) in &poly {
                    for l in 0..u.dim() {
                        let w = m[[port, l]];
                        if w == C64::new(0.0, 0.0) {
                            continue;
                        }
                        let mut key = mono.clone();
                        *key.entry((l, label)).or_insert(0) += 1;
                        *next.entry(key).or_insert(C64::new(0.0, 0.0)) += coeff * w;
                    }
                }
                poly = next;
            }
        }
        for (mono, coeff) in poly {
            let f = factorial_sqrt(&mono);
            *out.entry(mono).or_insert(C64::new(0.0, 0.0)) += coeff * f;
        }
    }
    FockState {
        amplitudes: out,
        pair_cutoff: state.pair_cutoff,
    }
}

/// Probability of the spatial pattern, summed over internal labels.
pub fn detection_probability(state: &FockState, pattern: &OutputPattern) -> f64 {
    state
        .amplitudes
        .iter()
        .filter(|(occ, _)| {
            let mut counts = vec![0usize; pattern.ports()];
            for (&(port, _), &n) in occ.iter() {
                if port >= counts.len() {
                    return false;
                }
                counts[port] += n as usize;
            }
            counts == pattern.counts()
        })
        .map(|(_, a)| a.norm_sqr())
        .sum()
}

/// Full pipeline: input state, interferometer, detection of every pattern
/// with up to `pair_cutoff` pairs.
pub fn output_distribution(
    config: &ExperimentConfig,
    pair_cutoff: usize,
) -> Result<(FockState, BTreeMap<OutputPattern, f64>)> {
    let input = build_input_state(config, pair_cutoff)?;
    let out = apply_interferometer(&input, config.interferometer());
    let mut probs = BTreeMap::new();
    for occ_total in 0..=2 * pair_cutoff {
        for m in OutputPattern::all_with_total(config.ports(), occ_total) {
            let p = detection_probability(&out, &m);
            probs.insert(m, p);
        }
    }
    Ok((out, probs))
}
