//! Sealed black-box functions for the two hidden-string problems.
//!
//! The hidden string is only reachable through the query methods, which
//! count every call, and through the explicitly named `reveal` accessors that
//! verification code uses to score a run.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::model::Coeff;
use crate::{rng, BitVector, Error, Result};

pub const SIMON_MIN_BITS: usize = 2;
pub const SIMON_MAX_BITS: usize = 20;
pub const COLLISION_COUNT_MAX_BITS: usize = 16;

/// Parity oracle `f(w) = (sum_k w_k a_k) mod 2`.
#[derive(Debug)]
pub struct BvOracle {
    a: BitVector,
    queries: AtomicU64,
}

impl BvOracle {
    pub fn new(a: BitVector) -> Self {
        Self {
            a,
            queries: AtomicU64::new(0),
        }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn query(&self, w: &BitVector) -> Result<bool> {
        self.query_bits(w.as_slice())
    }

    pub fn query_bits(&self, w: &[bool]) -> Result<bool> {
        self.a.check_len(w.len())?;
        self.queries.fetch_add(1, Ordering::Relaxed);
        Ok(self
            .a
            .iter()
            .zip(w)
            .fold(false, |acc, (a, &w)| acc ^ (a & w)))
    }

    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    /// The hidden string. For scoring only; protocols never call this.
    pub fn reveal(&self) -> &BitVector {
        &self.a
    }
}

/// Two-to-one function with `g(w) = g(y)` exactly when `w ⊕ y ∈ {0, a}`.
///
/// Each coset `{w, w ⊕ a}` is represented by its smaller member, which is the
/// member whose bit at the top set position of `a` is clear. Dropping that bit
/// numbers the `2^(n-1)` cosets densely, and a seeded shuffle of
/// `0..2^(n-1)` assigns each coset its `(n-1)`-bit label.
#[derive(Debug)]
pub struct SimonOracle {
    n: usize,
    a: BitVector,
    a_int: u64,
    top_bit: usize,
    labels: Vec<u32>,
    seed: u64,
    queries: AtomicU64,
}

impl SimonOracle {
    pub fn new(n: usize, a: &BitVector, seed: u64) -> Result<Self> {
        if !(SIMON_MIN_BITS..=SIMON_MAX_BITS).contains(&n) {
            return Err(Error::Size(format!(
                "Simon oracle needs {SIMON_MIN_BITS} <= n <= {SIMON_MAX_BITS}, got {n}"
            )));
        }
        if a.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: a.len(),
            });
        }
        if a.is_zero() {
            return Err(Error::InvalidHiddenString("Simon's hidden string must be nonzero".into()));
        }
        let a_int = a.to_integer().expect("n <= 20");
        let top_bit = 63 - a_int.leading_zeros() as usize;
        let mut labels: Vec<u32> = (0..1u32 << (n - 1)).collect();
        labels.shuffle(&mut rng::seeded(seed, 0));
        Ok(Self {
            n,
            a: a.clone(),
            a_int,
            top_bit,
            labels,
            seed,
            queries: AtomicU64::new(0),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn coset_index(&self, w: u64) -> usize {
        let rep = if (w >> self.top_bit) & 1 == 1 { w ^ self.a_int } else { w };
        let low = rep & ((1 << self.top_bit) - 1);
        let high = rep >> (self.top_bit + 1);
        ((high << self.top_bit) | low) as usize
    }

    /// Uncounted evaluation on the integer form of `w`.
    fn label_of(&self, w: u64) -> u32 {
        self.labels[self.coset_index(w)]
    }

    pub fn query(&self, w: &BitVector) -> Result<u32> {
        self.query_bits(w.as_slice())
    }

    pub fn query_bits(&self, w: &[bool]) -> Result<u32> {
        self.a.check_len(w.len())?;
        self.queries.fetch_add(1, Ordering::Relaxed);
        let v = w
            .iter()
            .enumerate()
            .fold(0u64, |acc, (k, &b)| acc | (u64::from(b) << k));
        Ok(self.label_of(v))
    }

    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    /// The hidden string. For scoring only; protocols never call this.
    pub fn reveal(&self) -> &BitVector {
        &self.a
    }

    /// Full truth table `w -> g(w)`, not counted as queries.
    pub fn reveal_table(&self) -> Vec<u32> {
        (0..1u64 << self.n).map(|w| self.label_of(w)).collect()
    }

    /// Number of unordered pairs `w != y` with `g(w) = g(y)`, summed over the
    /// fibres of `g`. Introspection only; not counted as queries.
    pub fn count_collision_pairs(&self) -> Result<u64> {
        if self.n > COLLISION_COUNT_MAX_BITS {
            return Err(Error::Size(format!(
                "collision counting is limited to n <= {COLLISION_COUNT_MAX_BITS}, got {}",
                self.n
            )));
        }
        let mut fibre = vec![0u64; 1 << (self.n - 1)];
        for w in 0..1u64 << self.n {
            fibre[self.label_of(w) as usize] += 1;
        }
        Ok(fibre.into_iter().map(|k| k * k.saturating_sub(1) / 2).sum())
    }
}

/// How a mismatch `g(w) != g(y)` is turned into an energy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Signal {
    /// 0 when the outputs agree, 1 otherwise.
    #[default]
    Indicator,
    /// Hamming distance between the outputs divided by `n - 1`.
    Hamming,
}

impl Signal {
    pub fn value(self, gw: u32, gy: u32, n: usize) -> Coeff {
        match self {
            Signal::Indicator => Coeff::from(i64::from(gw != gy)),
            Signal::Hamming => {
                Coeff::new(i64::from((gw ^ gy).count_ones()), (n as i64 - 1).max(1))
            }
        }
    }
}
