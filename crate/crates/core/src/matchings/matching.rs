use serde::Serialize;

use crate::error::{Error, Result};
use crate::matchings::permutation::Permutation;

/// Largest `n` whose matching count `(2n-1)!!` fits a 64-bit index.
pub const HARD_MAX_PAIRS: usize = 17;

/// `(2n - 1)!!`, the number of perfect matchings of `2n` points.
pub fn matching_count(n: usize) -> u128 {
    (1..=n as u128).map(|i| 2 * i - 1).product()
}

/// A perfect matching of `{0, ..., 2n-1}` stored in canonical form: pairs
/// `(v[2i], v[2i+1])` with `v[2i] < v[2i+1]` and `v[0] < v[2] < ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Matching {
    v: Vec<usize>,
}

impl Matching {
    pub fn identity(n: usize) -> Self {
        Self {
            v: (0..2 * n).collect(),
        }
    }

    /// Canonicalizes an arbitrary list of disjoint pairs covering `0..2n`.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        let size = 2 * pairs.len();
        let mut seen = vec![false; size];
        let mut sorted: Vec<(usize, usize)> = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= size || seen[x] {
                    return Err(Error::InvalidMatching(format!(
                        "element {x} repeated or outside 0..{size}"
                    )));
                }
                seen[x] = true;
            }
            sorted.push((a.min(b), a.max(b)));
        }
        sorted.sort_unstable();
        Ok(Self {
            v: sorted.into_iter().flat_map(|(a, b)| [a, b]).collect(),
        })
    }

    /// Accepts a vector that is already canonical.
    pub fn from_canonical(v: Vec<usize>) -> Result<Self> {
        if !is_canonical(&v) {
            return Err(Error::InvalidMatching(format!(
                "{v:?} is not a canonical matching vector"
            )));
        }
        Ok(Self { v })
    }

    /// `from_canonical` for the 1-based vectors used in print.
    pub fn from_one_based(v: &[usize]) -> Result<Self> {
        if v.contains(&0) {
            return Err(Error::InvalidMatching("1-based vector contains 0".into()));
        }
        Self::from_canonical(v.iter().map(|x| x - 1).collect())
    }

    pub fn pairs_count(&self) -> usize {
        self.v.len() / 2
    }

    pub fn vector(&self) -> &[usize] {
        &self.v
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.v.iter().map(|x| x + 1).collect()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.v.chunks_exact(2).map(|p| (p[0], p[1]))
    }

    /// `partner[x]` is the element matched with `x`.
    pub fn partners(&self) -> Vec<usize> {
        let mut p = vec![0; self.v.len()];
        for (a, b) in self.pairs() {
            p[a] = b;
            p[b] = a;
        }
        p
    }

    /// The vector read as the permutation `i ↦ v[i]`.
    pub fn as_permutation(&self) -> Permutation {
        Permutation::from_image_unchecked(self.v.clone())
    }
}

/// True when `v` satisfies the canonical-form rules of a matching vector.
pub fn is_canonical(v: &[usize]) -> bool {
    if v.len() % 2 == 1 {
        return false;
    }
    let mut seen = vec![false; v.len()];
    for &x in v {
        if x >= v.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    v.chunks_exact(2).all(|p| p[0] < p[1])
        && v.iter()
            .step_by(2)
            .zip(v.iter().step_by(2).skip(1))
            .all(|(a, b)| a < b)
}

/// Matchings with the order inside each pair kept. The smaller element of
/// each pair still increases from pair to pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrderedMatching {
    v: Vec<usize>,
}

impl OrderedMatching {
    /// Flips pair `i` of `base` when bit `i` of `flips` is set.
    pub fn from_matching(base: &Matching, flips: u64) -> Self {
        let mut v = base.v.clone();
        for (i, p) in v.chunks_exact_mut(2).enumerate() {
            if flips >> i & 1 == 1 {
                p.swap(0, 1);
            }
        }
        Self { v }
    }

    pub fn vector(&self) -> &[usize] {
        &self.v
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.v.chunks_exact(2).map(|p| (p[0], p[1]))
    }

    /// Forgets the order inside pairs.
    pub fn project(&self) -> Matching {
        let pairs: Vec<_> = self.pairs().collect();
        Matching::from_pairs(&pairs).expect("ordered matching covers 0..2n")
    }
}

/// All matchings of `2n` points in lexicographic order of their canonical
/// vectors, with random access by position.
#[derive(Clone, Copy, Debug)]
pub struct MatchingSet {
    n: usize,
    len: usize,
}

impl MatchingSet {
    pub fn new(n: usize, max_pairs: usize) -> Result<Self> {
        let limit = max_pairs.min(HARD_MAX_PAIRS);
        if n > limit {
            return Err(Error::ResourceGuard {
                what: "photon pairs for matching enumeration",
                value: n,
                limit,
            });
        }
        Ok(Self {
            n,
            len: matching_count(n) as usize,
        })
    }

    pub fn pairs_count(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Unranks position `index`. Panics when out of range.
    pub fn get(&self, index: usize) -> Matching {
        assert!(index < self.len, "matching index {index} out of range");
        let n = self.n;
        let mut free: Vec<usize> = (0..2 * n).collect();
        let mut v = Vec::with_capacity(2 * n);
        let mut rest = index;
        for i in 0..n {
            // remaining positions after this pair: (2(n-i-1) - 1)!!
            let weight = matching_count(n - i - 1) as usize;
            let choice = rest / weight;
            rest %= weight;
            let first = free.remove(0);
            let second = free.remove(choice);
            v.push(first);
            v.push(second);
        }
        Matching { v }
    }

    pub fn iter(&self) -> impl Iterator<Item = Matching> + '_ {
        (0..self.len).map(|i| self.get(i))
    }
}

/// All `(2n - 1)!!` matchings, materialized.
pub fn enumerate_matchings(n: usize, max_pairs: usize) -> Result<Vec<Matching>> {
    if n == 0 {
        return Err(Error::Domain("need at least one pair".into()));
    }
    let set = MatchingSet::new(n, max_pairs)?;
    Ok(set.iter().collect())
}

/// All `2^n (2n - 1)!!` ordered matchings, grouped by their projection.
pub fn enumerate_ordered_matchings(n: usize, max_pairs: usize) -> Result<Vec<OrderedMatching>> {
    let base = enumerate_matchings(n, max_pairs)?;
    Ok(base
        .iter()
        .flat_map(|m| (0..1u64 << n).map(move |f| OrderedMatching::from_matching(m, f)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn counts_and_order() {
        let m2 = enumerate_matchings(2, 10).unwrap();
        let vecs: Vec<_> = m2.iter().map(|m| m.to_one_based()).collect();
        assert_eq!(
            vecs,
            vec![vec![1, 2, 3, 4], vec![1, 3, 2, 4], vec![1, 4, 2, 3]]
        );
        assert_eq!(
            enumerate_matchings(1, 10).unwrap(),
            vec![Matching::identity(1)]
        );
        assert_eq!(enumerate_matchings(3, 10).unwrap().len(), 15);
        let m4 = enumerate_matchings(4, 10).unwrap();
        assert!(m4.windows(2).all(|w| w[0] < w[1]));
        assert!(m4.iter().all(|m| is_canonical(m.vector())));
    }

    #[test]
    fn limit_guard() {
        assert!(matches!(
            MatchingSet::new(11, 10),
            Err(Error::ResourceGuard { .. })
        ));
        assert!(MatchingSet::new(12, 40).is_ok());
        assert!(MatchingSet::new(18, 40).is_err());
    }

    #[test]
    fn ordered_projection_multiplicity() {
        for n in 1..=5 {
            let ordered = enumerate_ordered_matchings(n, 10).unwrap();
            assert_eq!(ordered.len() as u128, (1u128 << n) * matching_count(n));
            let mut hist: HashMap<Matching, usize> = HashMap::new();
            for o in &ordered {
                *hist.entry(o.project()).or_default() += 1;
            }
            assert_eq!(hist.len() as u128, matching_count(n));
            assert!(hist.values().all(|&c| c == 1 << n));
        }
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let m = Matching::from_pairs(&[(5, 2), (0, 4), (3, 1)]).unwrap();
        assert_eq!(m.vector(), &[0, 4, 1, 3, 2, 5]);
        let pairs: Vec<_> = m.pairs().collect();
        assert_eq!(Matching::from_pairs(&pairs).unwrap(), m);
        assert!(Matching::from_pairs(&[(0, 0)]).is_err());
    }
}
