use std::cmp::Ordering;
use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

macro_rules! count_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(from = "Vec<u32>", into = "Vec<u32>")]
        pub struct $name {
            counts: Vec<u32>,
            size: u64,
        }

        impl $name {
            pub fn new(counts: Vec<u32>) -> Self {
                let size = counts.iter().map(|&c| u64::from(c)).sum();
                Self { counts, size }
            }

            pub fn zeros(n: usize) -> Self {
                Self { counts: vec![0; n], size: 0 }
            }

            /// Checks the vector length against `g`.
            pub fn for_graph(g: &Graph, counts: Vec<u32>) -> Result<Self> {
                if counts.len() != g.n() {
                    return Err(Error::LengthMismatch { expected: g.n(), got: counts.len() });
                }
                Ok(Self::new(counts))
            }

            pub fn counts(&self) -> &[u32] {
                &self.counts
            }

            pub fn len(&self) -> usize {
                self.counts.len()
            }

            pub fn is_empty(&self) -> bool {
                self.counts.is_empty()
            }

            /// Total number of pebbles.
            pub fn size(&self) -> u64 {
                self.size
            }

            pub fn get(&self, v: usize) -> u32 {
                self.counts[v]
            }

            pub fn add(&mut self, v: usize, k: u32) {
                self.counts[v] += k;
                self.size += u64::from(k);
            }

            /// Removes up to `k` from `v`; returns how many were removed.
            pub fn remove(&mut self, v: usize, k: u32) -> u32 {
                let taken = self.counts[v].min(k);
                self.counts[v] -= taken;
                self.size -= u64::from(taken);
                taken
            }

            /// Vertices with a nonzero entry.
            pub fn support(&self) -> Vec<usize> {
                (0..self.counts.len()).filter(|&v| self.counts[v] > 0).collect()
            }

            pub fn zeros_count(&self) -> usize {
                self.counts.iter().filter(|&&c| c == 0).count()
            }

            pub fn dominates(&self, other: &Self) -> bool {
                self.counts.iter().zip(&other.counts).all(|(a, b)| a >= b)
            }
        }

        impl From<Vec<u32>> for $name {
            fn from(counts: Vec<u32>) -> Self {
                Self::new(counts)
            }
        }

        impl From<$name> for Vec<u32> {
            fn from(c: $name) -> Self {
                c.counts
            }
        }

        impl Index<usize> for $name {
            type Output = u32;
            fn index(&self, v: usize) -> &u32 {
                &self.counts[v]
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[")?;
                for (i, c) in self.counts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    };
}

count_vector!(
    /// A supply: the number of pebbles on each vertex.
    Configuration
);

count_vector!(
    /// A demand: the number of pebbles required on each vertex.
    Distribution
);

impl Configuration {
    /// True when every vertex holds at least the demanded number of pebbles.
    pub fn covers(&self, d: &Distribution) -> bool {
        self.len() == d.len() && self.counts().iter().zip(d.counts()).all(|(a, b)| a >= b)
    }
}

impl Distribution {
    /// `t` pebbles demanded on `r`, nothing elsewhere.
    pub fn stacked(n: usize, r: usize, t: u32) -> Self {
        let mut d = Self::zeros(n);
        d.add(r, t);
        d
    }

    /// Demand built from a multiset of target vertices.
    pub fn from_targets(n: usize, targets: &[usize]) -> Self {
        let mut d = Self::zeros(n);
        for &v in targets {
            d.add(v, 1);
        }
        d
    }

    /// The targets as a sorted multiset.
    pub fn targets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size() as usize);
        for (v, &c) in self.counts().iter().enumerate() {
            out.extend(std::iter::repeat(v).take(c as usize));
        }
        out
    }

    /// The single target vertex when `|D| = 1`.
    pub fn single_target(&self) -> Option<usize> {
        if self.size() == 1 {
            self.counts().iter().position(|&c| c == 1)
        } else {
            None
        }
    }

    /// The demand with one pebble removed from `r`.
    pub fn minus(&self, r: usize) -> Self {
        let mut d = self.clone();
        d.remove(r, 1);
        d
    }
}

/// Potential, zero count and support size of a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub potential: u64,
    pub zeros: usize,
    pub support_size: usize,
}

pub fn stats(c: &Configuration) -> Stats {
    let zeros = c.zeros_count();
    Stats {
        potential: potential(c),
        zeros,
        support_size: c.len() - zeros,
    }
}

/// Sum of `floor(C(v) / 2)`.
pub fn potential(c: &Configuration) -> u64 {
    c.counts().iter().map(|&x| u64::from(x / 2)).sum()
}

/// Exact dyadic rational `scaled / 2^shift`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Weight {
    pub scaled: u128,
    pub shift: u32,
}

impl Weight {
    pub fn as_f64(&self) -> f64 {
        self.scaled as f64 / (1u128 << self.shift) as f64
    }

    /// Integer part.
    pub fn floor(&self) -> u128 {
        self.scaled >> self.shift
    }

    fn common(&self, other: &Self) -> (u128, u128) {
        let shift = self.shift.max(other.shift);
        (
            self.scaled << (shift - self.shift),
            other.scaled << (shift - other.shift),
        )
    }
}

impl PartialEq for Weight {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a == b
    }
}

impl Eq for Weight {}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.common(other);
        a.cmp(&b)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.scaled, self.shift)
    }
}

/// `sum_v counts(v) * 2^(-dist(v, r))`, scaled by `2^diam`.
pub fn weight(counts: &[u32], r: usize, g: &Graph) -> Weight {
    let diam = g.diameter();
    let row = g.metrics().row(r);
    let scaled = counts
        .iter()
        .zip(row)
        .map(|(&c, &d)| u128::from(c) << (diam - d))
        .sum();
    Weight {
        scaled,
        shift: diam,
    }
}

/// Performs one pebbling step `u -> v`.
pub fn apply_move(c: &Configuration, u: usize, v: usize, g: &Graph) -> Result<Configuration> {
    for w in [u, v] {
        if w >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: w, n: g.n() });
        }
    }
    if c.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: c.len(),
        });
    }
    if !g.adjacent(u, v) {
        return Err(Error::NotAdjacent(u, v));
    }
    if c[u] < 2 {
        return Err(Error::InsufficientPebbles {
            vertex: u,
            count: c[u],
        });
    }
    let mut next = c.clone();
    next.remove(u, 2);
    next.add(v, 1);
    Ok(next)
}
