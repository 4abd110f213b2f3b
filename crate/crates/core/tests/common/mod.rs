//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// C(n, k) by the multiplicative formula in u128.
pub fn choose(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, j| acc * (n - j) as u128 / (j + 1) as u128)
}

pub fn choose_q(n: u64, k: u64) -> Q {
    Q::from_integer(BigInt::from(choose(n, k)))
}

/// Hypergeometric(total, ones, n) pmf over 0..=n.
pub fn hypergeometric(total: u64, ones: u64, n: u64) -> Vec<Q> {
    (0..=n)
        .map(|i| {
            if i > ones || n - i > total - ones {
                Q::zero()
            } else {
                choose_q(ones, i) * choose_q(total - ones, n - i) / choose_q(total, n)
            }
        })
        .collect()
}

/// Probability of every prefix (as a bit vector) of the population, found by
/// enumerating all 2^N configurations. A configuration with k ones has
/// probability P(γ = k) / C(N, k).
pub struct BruteForce {
    pub n: usize,
    prefix: HashMap<Vec<bool>, Q>,
}

impl BruteForce {
    pub fn new(pmf: &[Q]) -> Self {
        let n = pmf.len() - 1;
        let mut prefix: HashMap<Vec<bool>, Q> = HashMap::new();
        for config in 0u32..(1u32 << n) {
            let bits: Vec<bool> = (0..n).map(|j| config >> j & 1 == 1).collect();
            let k = bits.iter().filter(|b| **b).count();
            let weight = &pmf[k] / choose_q(n as u64, k as u64);
            if weight.is_zero() {
                continue;
            }
            for len in 0..=n {
                *prefix.entry(bits[..len].to_vec()).or_insert_with(Q::zero) += &weight;
            }
        }
        BruteForce { n, prefix }
    }

    pub fn probability(&self, seq: &[bool]) -> Q {
        self.prefix.get(seq).cloned().unwrap_or_else(Q::zero)
    }

    /// P(next = 1 | seq), or `None` when seq has probability zero.
    pub fn predictive(&self, seq: &[bool]) -> Option<Q> {
        let base = self.probability(seq);
        if base.is_zero() {
            return None;
        }
        let mut next = seq.to_vec();
        next.push(true);
        Some(self.probability(&next) / base)
    }

    /// Every sequence of length < N, in lexicographic order by length.
    pub fn sequences(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .flat_map(|len| (0u32..(1u32 << len)).map(move |c| (0..len).map(|j| c >> j & 1 == 1).collect()))
            .collect()
    }

    pub fn total(&self) -> Q {
        self.probability(&[])
    }
}

pub fn is_one(x: &Q) -> bool {
    x.is_one()
}
