use std::collections::BTreeMap;

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::distprob::identical::IMAGINARY_RESIDUE_TOL;
use crate::error::{Error, Result};
use crate::hafnian::permanent;
use crate::model::{checked_ports, vacuum_probability, ExperimentConfig, OutputPattern, PairMode};
use crate::reduce::chunked_sum;

/// `n` pair modes drawn with repetition, flattened to photons.
struct PairProduct {
    /// `(n! / Π mult!) Π c w`
    coefficient: f64,
    ports: Vec<usize>,
    labels: Vec<usize>,
    sorted_labels: Vec<usize>,
}

fn pair_products(modes: &[PairMode], n: usize) -> Vec<PairProduct> {
    fn rec(
        start: usize,
        left: usize,
        modes: &[PairMode],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for q in start..modes.len() {
            cur.push(q);
            rec(q, left - 1, modes, cur, out);
            cur.pop();
        }
    }
    let mut tuples = Vec::new();
    rec(0, n, modes, &mut Vec::with_capacity(n), &mut tuples);
    let fact = |k: usize| (1..=k).map(|x| x as f64).product::<f64>();
    tuples
        .into_iter()
        .map(|t| {
            let mut mult = 1.0;
            let mut run = 1;
            for i in 1..=t.len() {
                if i < t.len() && t[i] == t[i - 1] {
                    run += 1;
                } else {
                    mult *= fact(run);
                    run = 1;
                }
            }
            let mut coefficient = fact(n) / mult;
            let mut ports = Vec::with_capacity(2 * n);
            let mut labels = Vec::with_capacity(2 * n);
            for &q in &t {
                let m = &modes[q];
                coefficient *= m.amplitude * m.weight;
                ports.extend([m.ports.0, m.ports.1]);
                labels.extend([m.labels.0, m.labels.1]);
            }
            let mut sorted_labels = labels.clone();
            sorted_labels.sort_unstable();
            PairProduct {
                coefficient,
                ports,
                labels,
                sorted_labels,
            }
        })
        .collect()
}

/// For every bijection `π` with `labels_a[u] = labels_b[π(u)]`, records the
/// port sequence `u ↦ ports_b[π(u)]` with its multiplicity.
fn matched_port_sequences(
    labels_a: &[usize],
    labels_b: &[usize],
    ports_b: &[usize],
) -> BTreeMap<Vec<usize>, usize> {
    fn rec(
        u: usize,
        labels_a: &[usize],
        labels_b: &[usize],
        ports_b: &[usize],
        used: &mut Vec<bool>,
        seq: &mut Vec<usize>,
        out: &mut BTreeMap<Vec<usize>, usize>,
    ) {
        if u == labels_a.len() {
            *out.entry(seq.clone()).or_default() += 1;
            return;
        }
        for v in 0..labels_b.len() {
            if !used[v] && labels_b[v] == labels_a[u] {
                used[v] = true;
                seq.push(ports_b[v]);
                rec(u + 1, labels_a, labels_b, ports_b, used, seq, out);
                seq.pop();
                used[v] = false;
            }
        }
    }
    let mut out = BTreeMap::new();
    rec(
        0,
        labels_a,
        labels_b,
        ports_b,
        &mut vec![false; labels_b.len()],
        &mut Vec::with_capacity(labels_a.len()),
        &mut out,
    );
    out
}

/// Output probability for arbitrary sources whose internal modes are drawn
/// from one orthonormal basis. Sums over every photon permutation that maps
/// internal labels onto equal labels, so the cost grows as `(2n)!`.
pub fn probability_general(config: &ExperimentConfig, pattern: &OutputPattern) -> Result<f64> {
    if pattern.total() % 2 == 1 {
        return Ok(0.0);
    }
    let p0 = vacuum_probability(config);
    if pattern.is_vacuum() {
        return Ok(p0);
    }
    let limit = config.options.max_brute_force_photons;
    if pattern.total() > limit {
        return Err(Error::ResourceGuard {
            what: "photons for the permutation sum",
            value: pattern.total(),
            limit,
        });
    }
    let n = pattern.pairs()?;
    let outputs = checked_ports(config.ports(), pattern)?;
    let u = config.interferometer().matrix();
    let products = pair_products(&config.pair_modes(), n);
    let k = products.len();

    let total = chunked_sum(k * k, C64::new(0.0, 0.0), |idx| {
        let (a, b) = (&products[idx / k], &products[idx % k]);
        if a.sorted_labels != b.sorted_labels {
            return C64::new(0.0, 0.0);
        }
        let mut acc = C64::new(0.0, 0.0);
        for (seq, count) in matched_port_sequences(&a.labels, &b.labels, &b.ports) {
            let m = Array2::from_shape_fn((2 * n, 2 * n), |(row, t)| {
                u[[a.ports[row], outputs[t]]].conj() * u[[seq[row], outputs[t]]]
            });
            acc += permanent(&m).expect("square") * count as f64;
        }
        acc * (a.coefficient * b.coefficient)
    });
    let scale: f64 = products
        .iter()
        .map(|p| p.coefficient.abs())
        .sum::<f64>()
        .powi(2)
        * (1..=2 * n).map(|x| x as f64).product::<f64>().powi(2);
    if total.im.abs() > IMAGINARY_RESIDUE_TOL * scale {
        return Err(Error::Tolerance(format!(
            "imaginary residue {:e} of the permutation sum",
            total.im
        )));
    }
    let n_fact: f64 = (1..=n).map(|x| x as f64).product();
    Ok((p0 / (pattern.factorial() * n_fact * n_fact) * total.re).max(0.0))
}
