//! Permutation symmetries of a ground set and orbit-wise symmetrization.

use serde::{Deserialize, Serialize};

use crate::core::mask::SubsetMask;
use crate::error::{Result, RusmError};

/// A permutation of `{0, .., n-1}` stored as its image table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        if n == 0 {
            return Err(RusmError::param("mapping", "empty permutation"));
        }
        let mut seen = vec![false; n];
        for &v in &mapping {
            if v >= n {
                return Err(RusmError::IndexOutOfRange { index: v, n });
            }
            if seen[v] {
                return Err(RusmError::param("mapping", format!("image {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Permutation(mapping))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Transposition of `a` and `b` inside `{0, .., n-1}`.
    pub fn swap(n: usize, a: usize, b: usize) -> Result<Self> {
        if a >= n {
            return Err(RusmError::IndexOutOfRange { index: a, n });
        }
        if b >= n {
            return Err(RusmError::IndexOutOfRange { index: b, n });
        }
        let mut m: Vec<usize> = (0..n).collect();
        m.swap(a, b);
        Ok(Permutation(m))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, u: usize) -> usize {
        self.0[u]
    }

    pub fn apply_mask(&self, s: SubsetMask) -> SubsetMask {
        SubsetMask::from_elements(s.iter().map(|u| self.0[u]))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// A permutation group given by generators; only the orbit partition is ever
/// materialized. Under a uniformly random group element the image of `u` is
/// uniform over `orbit(u)`, so expectations over the group reduce to orbit
/// means.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    n: usize,
    generators: Vec<Permutation>,
    orbit_id: Vec<usize>,
    orbits: Vec<Vec<usize>>,
}

impl PermutationGroup {
    pub fn new(n: usize, generators: Vec<Permutation>) -> Result<Self> {
        if n == 0 {
            return Err(RusmError::param("n", "empty ground set"));
        }
        for p in &generators {
            if p.n() != n {
                return Err(RusmError::param(
                    "generators",
                    format!("generator on {} elements for a ground set of size {n}", p.n()),
                ));
            }
        }

        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], u: usize) -> usize {
            let mut root = u;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = u;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for p in &generators {
            for u in 0..n {
                let (a, b) = (find(&mut parent, u), find(&mut parent, p.apply(u)));
                if a != b {
                    parent[a] = b;
                }
            }
        }

        let mut orbit_id = vec![usize::MAX; n];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for u in 0..n {
            let root = find(&mut parent, u);
            if orbit_id[root] == usize::MAX {
                orbit_id[root] = orbits.len();
                orbits.push(Vec::new());
            }
            orbit_id[u] = orbit_id[root];
            orbits[orbit_id[u]].push(u);
        }

        Ok(PermutationGroup { n, generators, orbit_id, orbits })
    }

    /// The trivial group: every element is its own orbit.
    pub fn trivial(n: usize) -> Result<Self> {
        PermutationGroup::new(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_of(&self, u: usize) -> &[usize] {
        &self.orbits[self.orbit_id[u]]
    }

    /// Replaces each coordinate by the mean over its orbit: the expected
    /// indicator vector of `σ(S)` under a uniform group element, extended
    /// linearly to fractional points.
    pub fn symmetrize(&self, x: &DistributionVector) -> Result<DistributionVector> {
        if x.n() != self.n {
            return Err(RusmError::param(
                "x",
                format!("vector of length {} for a ground set of size {}", x.n(), self.n),
            ));
        }
        let mut out = vec![0.0; self.n];
        for orbit in &self.orbits {
            let mean = orbit.iter().map(|&u| x.coord(u)).sum::<f64>() / orbit.len() as f64;
            for &u in orbit {
                out[u] = mean;
            }
        }
        DistributionVector::new(out)
    }

    pub fn symmetrize_mask(&self, s: SubsetMask) -> Result<DistributionVector> {
        self.symmetrize(&DistributionVector::from_mask(s, self.n))
    }
}

/// A point of `[0,1]^n`, read as independent inclusion probabilities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistributionVector(Vec<f64>);

impl DistributionVector {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if x.is_empty() {
            return Err(RusmError::param("x", "empty coordinate vector"));
        }
        if let Some(bad) = x.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(RusmError::param("x", format!("coordinate {bad} outside [0, 1]")));
        }
        Ok(DistributionVector(x))
    }

    pub fn from_mask(s: SubsetMask, n: usize) -> Self {
        DistributionVector((0..n).map(|u| if s.contains(u) { 1.0 } else { 0.0 }).collect())
    }

    pub fn constant(n: usize, p: f64) -> Result<Self> {
        Self::new(vec![p; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn coord(&self, u: usize) -> f64 {
        self.0[u]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}
