use super::GraphError;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A bijection on `1..=n`, stored as the image of each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<u32>,
}

impl Permutation {
    /// Validates that `map` is a bijection on `1..=map.len()`.
    pub fn new(map: Vec<u32>) -> Result<Self, GraphError> {
        let n = map.len() as u32;
        let mut seen = vec![false; map.len()];
        for &v in &map {
            if v == 0 || v > n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if seen[v as usize - 1] {
                return Err(GraphError::NotBijective(v));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: u32) -> Self {
        Permutation {
            map: (1..=n).collect(),
        }
    }

    /// A uniformly random permutation, deterministic for a fixed seed.
    pub fn random(n: u32, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut map: Vec<u32> = (1..=n).collect();
        map.shuffle(&mut rng);
        Permutation { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Image of vertex `v` (1-based).
    pub fn image(&self, v: u32) -> u32 {
        self.map[v as usize - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { map: inv }
    }

    /// `self` after `other`: `(self ∘ other)(v) = self(other(v))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let map = other.map.iter().map(|&v| self.image(v)).collect();
        Permutation { map }
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.map
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.map
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}
