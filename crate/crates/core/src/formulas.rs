//! Closed-form pebbling numbers and the extremal configurations behind the
//! Kneser lower bounds.

use serde::{Deserialize, Serialize};

use crate::engine::Configuration;
use crate::error::{Error, Result};
use crate::graph::Graph;

fn pow2(e: u32) -> Result<u128> {
    1u128
        .checked_shl(e)
        .filter(|_| e < 127)
        .ok_or_else(|| Error::InvalidParameters(format!("2^{e} overflows")))
}

/// `t-fold` pebbling number of a tree rooted at `r` from the lengths
/// `a_1 >= .. >= a_k` of a maximum `r`-path partition:
/// `t 2^{a_1} + sum_{i>=2} 2^{a_i} - k + 1`.
pub fn tree_pi(partition: &[u32], t: u64) -> Result<u128> {
    let Some(&a1) = partition.first() else {
        return Err(Error::InvalidParameters("empty path partition".into()));
    };
    if t == 0 {
        return Err(Error::InvalidParameters("t must be at least 1".into()));
    }
    if partition.contains(&0) || partition.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidParameters(format!(
            "partition {partition:?} must be positive and non-increasing"
        )));
    }
    let mut total = u128::from(t) * pow2(a1)?;
    for &a in &partition[1..] {
        total += pow2(a)?;
    }
    Ok(total + 1 - partition.len() as u128)
}

/// `pi_t` of a 2-path on `n` vertices with diameter `d`: `t 2^d + n - 2d`.
pub fn two_path_pi_t(n: u64, d: u32, t: u64) -> Result<u128> {
    if d < 2 || n < u64::from(d) + 1 || t == 0 {
        return Err(Error::InvalidParameters(format!(
            "need n >= d + 1 >= 3 and t >= 1, got n={n}, d={d}, t={t}"
        )));
    }
    Ok(u128::from(t) * pow2(d)? + u128::from(n) - 2 * u128::from(d))
}

/// Pebbling number of the spinal tree `T_r` of a 2-path:
/// `2^e + 2^{d-e} + n - d - 2` for spinal roots and
/// `2^e + 2^{d+1-e} + n - d - 3` otherwise, where `e = ecc(r)`.
pub fn spinal_pi(n: u64, d: u32, ecc: u32, spinal: bool) -> Result<u128> {
    let (n, d128) = (u128::from(n), u128::from(d));
    if ecc == 0 || ecc > d {
        return Err(Error::InvalidParameters(format!(
            "eccentricity {ecc} outside 1..={d}"
        )));
    }
    if spinal {
        if n < d128 + 1 {
            return Err(Error::InvalidParameters("n < d + 1".into()));
        }
        Ok(pow2(ecc)? + pow2(d - ecc)? + n - d128 - 2)
    } else {
        if n < d128 + 2 {
            return Err(Error::InvalidParameters("n < d + 2 for a non-spinal root".into()));
        }
        Ok(pow2(ecc)? + pow2(d + 1 - ecc)? + n - d128 - 3)
    }
}

/// The common upper bound `2^d + n - d - 1` on every spinal tree.
pub fn spinal_bound(n: u64, d: u32) -> Result<u128> {
    Ok(pow2(d)? + u128::from(n) - u128::from(d) - 1)
}

/// Parameters of the `K(m,2)` formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KneserParams {
    pub m: u64,
    pub t: u64,
}

impl KneserParams {
    pub fn new(m: u64, t: u64) -> Result<Self> {
        if m < 5 || t == 0 {
            return Err(Error::InvalidParameters(format!(
                "need m >= 5 and t >= 1, got m={m}, t={t}"
            )));
        }
        Ok(Self { m, t })
    }

    /// `binom(m, 2)`.
    pub fn n(&self) -> u64 {
        self.m * (self.m - 1) / 2
    }

    /// `2 t_0 = binom(m - 2, 2)`, the vertex degree; `t_0` may be a half-integer.
    pub fn t0_doubled(&self) -> u64 {
        (self.m - 2) * (self.m - 3) / 2
    }

    pub fn t0(&self) -> f64 {
        self.t0_doubled() as f64 / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KneserP {
    pub p1: u64,
    pub p2: u64,
    pub p: u64,
}

/// `p_1 = n + 2t - 2`, `p_2 = 4t + 2m - 5`, `p = max(p_1, p_2)`.
pub fn kneser_p(params: KneserParams) -> KneserP {
    let KneserParams { m, t } = params;
    let p1 = params.n() + 2 * t - 2;
    let p2 = 4 * t + 2 * m - 5;
    KneserP {
        p1,
        p2,
        p: p1.max(p2),
    }
}

fn second_layer(g: &Graph, r: usize) -> Result<Vec<usize>> {
    if r >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: r, n: g.n() });
    }
    let layer = g.metrics().layer(r, 2);
    if layer.is_empty() {
        return Err(Error::InvalidParameters(format!(
            "no vertex at distance 2 from {r}"
        )));
    }
    Ok(layer)
}

/// `2t - 1` pebbles on the least-index vertex at distance 2 from `r` and one
/// pebble on every other vertex except `r`.
pub fn build_c_t1(g: &Graph, r: usize, t: u32) -> Result<Configuration> {
    if t == 0 {
        return Err(Error::InvalidParameters("t must be at least 1".into()));
    }
    let x = second_layer(g, r)?[0];
    let mut counts = vec![1u32; g.n()];
    counts[r] = 0;
    counts[x] = 2 * t - 1;
    Ok(Configuration::new(counts))
}

/// `4t - 1` pebbles on the least-index vertex at distance 2 from `r` and one
/// pebble on every other vertex at distance 2.
pub fn build_c_t2(g: &Graph, r: usize, t: u32) -> Result<Configuration> {
    if t == 0 {
        return Err(Error::InvalidParameters("t must be at least 1".into()));
    }
    let layer = second_layer(g, r)?;
    let mut counts = vec![0u32; g.n()];
    for &v in &layer {
        counts[v] = 1;
    }
    counts[layer[0]] = 4 * t - 1;
    Ok(Configuration::new(counts))
}

/// One pebble everywhere except `r`.
pub fn build_j_r(g: &Graph, r: usize) -> Result<Configuration> {
    if r >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: r, n: g.n() });
    }
    let mut counts = vec![1u32; g.n()];
    counts[r] = 0;
    Ok(Configuration::new(counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::potential;
    use crate::families::kneser;

    #[test]
    fn tree_formula() {
        assert_eq!(tree_pi(&[3], 2).unwrap(), 16);
        assert_eq!(tree_pi(&[2, 1, 1], 1).unwrap(), 6);
        assert_eq!(tree_pi(&[5, 1], 2).unwrap(), 65);
        assert!(tree_pi(&[], 1).is_err());
        assert!(tree_pi(&[1, 2], 1).is_err());
        assert!(tree_pi(&[2], 0).is_err());
    }

    #[test]
    fn two_path_formula() {
        assert_eq!(two_path_pi_t(4, 2, 1).unwrap(), 4);
        assert_eq!(two_path_pi_t(14, 4, 1).unwrap(), 22);
        assert_eq!(two_path_pi_t(4, 2, 3).unwrap(), 12);
        assert!(two_path_pi_t(2, 2, 1).is_err());
        assert!(two_path_pi_t(4, 1, 1).is_err());
    }

    #[test]
    fn spinal_formula_cases() {
        let (n, d) = (14, 4);
        assert_eq!(spinal_pi(n, d, d, true).unwrap(), 16 + n as u128 - 4 - 1);
        assert_eq!(spinal_pi(n, d, 3, false).unwrap(), 8 + 4 + 14 - 4 - 3);
        for ecc in 1..=d {
            for spinal in [true, false] {
                assert!(spinal_pi(n, d, ecc, spinal).unwrap() <= spinal_bound(n, d).unwrap());
            }
        }
        assert!(spinal_pi(n, d, 0, true).is_err());
        assert!(spinal_pi(n, d, 5, false).is_err());
    }

    #[test]
    fn kneser_values() {
        let p = kneser_p(KneserParams::new(5, 1).unwrap());
        assert_eq!(p.p, 10);
        assert_eq!(p.p1, 10);
        let p = kneser_p(KneserParams::new(5, 2).unwrap());
        assert_eq!((p.p2, p.p), (13, 13));
        let p = kneser_p(KneserParams::new(6, 3).unwrap());
        assert_eq!((p.p1, p.p2), (19, 19));
        assert_eq!(KneserParams::new(6, 3).unwrap().t0(), 3.0);
        assert!(KneserParams::new(4, 1).is_err());
    }

    #[test]
    fn extremal_configurations() {
        let g = kneser(5, 2).unwrap();
        let j = build_j_r(&g, 0).unwrap();
        assert_eq!(j.size(), 9);
        assert_eq!(potential(&j), 0);
        assert_eq!(build_c_t1(&g, 0, 1).unwrap(), j);
        let c = build_c_t1(&g, 0, 2).unwrap();
        assert_eq!((c.size(), potential(&c)), (11, 1));
        let c = build_c_t2(&g, 0, 2).unwrap();
        assert_eq!((c.size(), potential(&c)), (12, 3));
        assert_eq!(c.counts().iter().filter(|&&x| x == 1).count(), 5);
        assert_eq!(build_c_t2(&g, 0, 1).unwrap().size(), 8);

        let g6 = kneser(6, 2).unwrap();
        assert_eq!(build_c_t1(&g6, 0, 1).unwrap().size(), 14);
        assert_eq!(build_c_t2(&g6, 0, 2).unwrap().size(), 14);

        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(build_j_r(&k2, 0).unwrap().counts(), &[0, 1]);
        assert!(build_c_t1(&k2, 0, 1).is_err());
    }
}
