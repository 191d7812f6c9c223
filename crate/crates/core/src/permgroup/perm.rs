use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zmod::Modulus;

/// A bijection of `{0, ..., n-1}` in image form: `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Checks that `images` is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Precondition(format!(
                    "image array of length {n} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Product of disjoint cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    /// `i -> a*i + b (mod n)`.
    pub fn affine(modulus: &Modulus, a: usize, b: usize) -> Result<Self> {
        let n = modulus.n();
        if n > 1 && !modulus.is_unit(a) {
            return Err(Error::NotCoprime { element: a, n });
        }
        Ok(Permutation {
            images: (0..n).map(|i| (a % n * i + b) % n).collect(),
        })
    }

    /// The rotation `i -> i + 1`.
    pub fn rotation(n: usize) -> Self {
        Permutation {
            images: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    /// The reflection `i -> -i`.
    pub fn reflection(n: usize) -> Self {
        Permutation {
            images: (0..n).map(|i| (n - i) % n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, k: usize) -> Permutation {
        let mut out = Permutation::identity(self.degree());
        for _ in 0..k {
            out = out.then(self);
        }
        out
    }

    /// `x * self * x^-1`, i.e. the permutation `x(i) -> x(self(i))`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        x.inverse().then(self).then(x)
    }

    /// Sorted cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    /// Order of the permutation as an element.
    pub fn order(&self) -> usize {
        use num_integer::Integer;
        self.cycle_type().into_iter().fold(1, |acc, l| acc.lcm(&l))
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x)
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.images[i] == i
    }

    /// Relabel the points: returns `map ∘ self ∘ map^-1` where `map` sends old to new labels.
    pub fn relabel(&self, map: &[usize]) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[map[i]] = map[x];
        }
        Permutation { images }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}
