use crate::error::{Error, Result};
use crate::matchings::matching::Matching;

/// A permutation of `{0, ..., len-1}` given by its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &x in &image {
            if x >= image.len() || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{image:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Self { image })
    }

    pub fn from_one_based(image: &[usize]) -> Result<Self> {
        if image.contains(&0) {
            return Err(Error::InvalidPermutation("1-based image contains 0".into()));
        }
        Self::new(image.iter().map(|x| x - 1).collect())
    }

    pub(crate) fn from_image_unchecked(image: Vec<usize>) -> Self {
        Self { image }
    }

    pub fn identity(len: usize) -> Self {
        Self {
            image: (0..len).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            image: other.image.iter().map(|&i| self.image[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x] = i;
        }
        Self { image: inv }
    }

    /// Matching with pairs `{σ(2i), σ(2i+1)}`.
    pub fn project(&self) -> Result<Matching> {
        if self.image.len() % 2 == 1 {
            return Err(Error::InvalidPermutation("odd number of elements".into()));
        }
        let pairs: Vec<_> = self.image.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        Matching::from_pairs(&pairs)
    }
}

/// Matching formed by the pairs `{σ(2i), σ(2i+1)}` of a permutation.
pub fn project_permutation(sigma: &Permutation) -> Result<Matching> {
    sigma.project()
}
