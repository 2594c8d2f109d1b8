//! Standard graph families on a `d1 x d2` vertex grid.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("unknown graph family `{0}` (expected complete, path, cycle or random)")]
    UnknownFamily(String),
    #[error("family size {n} does not match {d1}x{d2}")]
    SizeMismatch { n: usize, d1: usize, d2: usize },
    #[error("{kind} needs at least {min} vertices, got {n}")]
    TooSmall { kind: FamilyKind, n: usize, min: usize },
    #[error("edge density {0} outside [0, 1]")]
    BadDensity(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Complete,
    Path,
    Cycle,
    Random,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Complete => "complete",
            FamilyKind::Path => "path",
            FamilyKind::Cycle => "cycle",
            FamilyKind::Random => "random",
        })
    }
}

impl FromStr for FamilyKind {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "complete" => Ok(FamilyKind::Complete),
            "path" => Ok(FamilyKind::Path),
            "cycle" => Ok(FamilyKind::Cycle),
            "random" => Ok(FamilyKind::Random),
            _ => Err(FamilyError::UnknownFamily(s.to_owned())),
        }
    }
}

/// How random edges get their weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightDistribution {
    /// Uniform on `{k/100 : k = 1..=100}`.
    #[default]
    Hundredths,
    Unit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphFamily {
    pub kind: FamilyKind,
    pub n: usize,
    pub seed: u64,
    /// Probability that each vertex pair becomes an edge (random family only).
    pub density: f64,
    pub weights: WeightDistribution,
}

impl GraphFamily {
    pub fn new(kind: FamilyKind, n: usize) -> Self {
        Self {
            kind,
            n,
            seed: 0,
            density: 0.5,
            weights: WeightDistribution::default(),
        }
    }

    pub fn random(n: usize, seed: u64, density: f64) -> Self {
        Self {
            seed,
            density,
            ..Self::new(FamilyKind::Random, n)
        }
    }

    /// Builds the family member on a `d1 x d2` grid. Deterministic in `seed`.
    pub fn generate(&self, d1: usize, d2: usize) -> Result<Graph, FamilyError> {
        let n = self.n;
        if d1 * d2 != n || n == 0 {
            return Err(FamilyError::SizeMismatch { n, d1, d2 });
        }
        let min = match self.kind {
            FamilyKind::Cycle => 3,
            _ => 2,
        };
        if n < min {
            return Err(FamilyError::TooSmall { kind: self.kind, n, min });
        }
        let pairs: Vec<(usize, usize)> = match self.kind {
            FamilyKind::Complete => (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect(),
            FamilyKind::Path => (0..n - 1).map(|u| (u, u + 1)).collect(),
            FamilyKind::Cycle => (0..n).map(|u| (u, (u + 1) % n)).collect(),
            FamilyKind::Random => return self.random_graph(d1, d2),
        };
        Ok(Graph::unweighted(d1, d2, pairs).expect("family edges are simple"))
    }

    fn random_graph(&self, d1: usize, d2: usize) -> Result<Graph, FamilyError> {
        if !(0.0..=1.0).contains(&self.density) {
            return Err(FamilyError::BadDensity(self.density));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut g = Graph::new(d1, d2).expect("non-empty grid");
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if rng.gen::<f64>() < self.density {
                    let w = match self.weights {
                        WeightDistribution::Hundredths => rng.gen_range(1..=100u32) as f64 / 100.0,
                        WeightDistribution::Unit => 1.0,
                    };
                    g.add_edge(u, v, w).expect("fresh pair");
                }
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_families() {
        let k4 = GraphFamily::new(FamilyKind::Complete, 4).generate(2, 2).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert!(k4.is_unweighted());
        let p6 = GraphFamily::new(FamilyKind::Path, 6).generate(2, 3).unwrap();
        assert_eq!(p6.edges().map(|e| (e.u, e.v)).collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        let c4 = GraphFamily::new(FamilyKind::Cycle, 4).generate(2, 2).unwrap();
        assert_eq!(c4.degrees(), vec![2.0; 4]);
    }

    #[test]
    fn size_errors() {
        assert_eq!(
            GraphFamily::new(FamilyKind::Path, 5).generate(2, 2),
            Err(FamilyError::SizeMismatch { n: 5, d1: 2, d2: 2 })
        );
        assert!(matches!(
            GraphFamily::new(FamilyKind::Cycle, 2).generate(1, 2),
            Err(FamilyError::TooSmall { .. })
        ));
        assert!(matches!(
            GraphFamily::random(4, 1, 1.5).generate(2, 2),
            Err(FamilyError::BadDensity(_))
        ));
        assert!("star".parse::<FamilyKind>().is_err());
        assert_eq!("Path".parse::<FamilyKind>().unwrap(), FamilyKind::Path);
    }

    #[test]
    fn random_is_seeded() {
        let a = GraphFamily::random(9, 7, 0.5).generate(3, 3).unwrap();
        let b = GraphFamily::random(9, 7, 0.5).generate(3, 3).unwrap();
        let c = GraphFamily::random(9, 8, 0.5).generate(3, 3).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        for e in a.edges() {
            let k = e.w * 100.0;
            assert!((k - k.round()).abs() < 1e-9 && (1.0..=100.0).contains(&k.round()));
        }
    }
}
