use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Photon counts per output port.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OutputPattern {
    counts: Vec<usize>,
}

impl OutputPattern {
    pub fn new(counts: Vec<usize>) -> Self {
        Self { counts }
    }

    pub fn vacuum(ports: usize) -> Self {
        Self::new(vec![0; ports])
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn ports(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn is_vacuum(&self) -> bool {
        self.total() == 0
    }

    /// Number of photon pairs, or an error for odd totals.
    pub fn pairs(&self) -> Result<usize> {
        let t = self.total();
        if t % 2 == 1 {
            return Err(Error::OddPhotonNumber(t));
        }
        Ok(t / 2)
    }

    /// Sorted zero-based port multiset: port `l` repeated `counts[l]` times.
    pub fn port_multiset(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(l, &c)| std::iter::repeat_n(l, c))
            .collect()
    }

    /// `m! = Π_l m_l!`
    pub fn factorial(&self) -> f64 {
        self.counts
            .iter()
            .map(|&c| (1..=c).map(|k| k as f64).product::<f64>())
            .product()
    }

    /// All patterns on `ports` ports with `total` photons, in lexicographically
    /// descending order of the count vector.
    pub fn all_with_total(ports: usize, total: usize) -> Vec<Self> {
        fn rec(ports: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<OutputPattern>) {
            if cur.len() + 1 == ports {
                cur.push(left);
                out.push(OutputPattern::new(cur.clone()));
                cur.pop();
                return;
            }
            for c in (0..=left).rev() {
                cur.push(c);
                rec(ports, left - c, cur, out);
                cur.pop();
            }
        }
        if ports == 0 {
            return if total == 0 {
                vec![Self::new(vec![])]
            } else {
                vec![]
            };
        }
        let mut out = Vec::new();
        rec(ports, total, &mut Vec::with_capacity(ports), &mut out);
        out
    }

    /// Pattern with ports relabeled: photons at port `l` move to `perm[l]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut counts = vec![0; self.counts.len()];
        for (l, &c) in self.counts.iter().enumerate() {
            counts[perm[l]] = c;
        }
        Self::new(counts)
    }
}

impl fmt::Display for OutputPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for OutputPattern {
    type Err = Error;

    /// Parses comma-separated counts such as `2,0,1`.
    fn from_str(s: &str) -> Result<Self> {
        let counts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Config(format!("bad pattern entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(counts))
    }
}
