//! Hamiltonians for the two hidden-string problems.
//!
//! Variable-order contract:
//! - Bernstein-Vazirani uses `w0..w{n-1}` in bit order.
//! - Simon uses `w1..wn, y1..yn, gw, gy`, with 1-based bit indices, so `wi`
//!   is position `i - 1` of the `w` bit vector.

use num_traits::{One, Signed};

use crate::model::{Coeff, QuboModel, VarLabel};
use crate::oracles::{BvOracle, Signal, SimonOracle};
use crate::{BitVector, Error, Result};

/// Diagonal model with `h_k = 1 - 2 a_k`, reading each `a_k` from the
/// oracle at the unit input `2^k`. Makes exactly `n` queries.
pub fn build_bv_qubo(oracle: &BvOracle) -> Result<QuboModel> {
    let n = oracle.n();
    let bits = (0..n)
        .map(|k| oracle.query(&BitVector::unit(k, n)))
        .collect::<Result<Vec<_>>>()?;
    Ok(build_bv_qubo_from_bits(&BitVector::from_bits(bits)))
}

/// Same model as [`build_bv_qubo`] built straight from the hidden bits.
pub fn build_bv_qubo_from_bits(a: &BitVector) -> QuboModel {
    let mut model =
        QuboModel::new((0..a.len()).map(VarLabel::W).collect()).expect("labels are unique");
    for (k, bit) in a.iter().enumerate() {
        let h = if bit { -1 } else { 1 };
        model.add_linear_at(k, h).expect("k < n");
    }
    model
}

fn simon_bit_labels(n: usize) -> Vec<VarLabel> {
    (1..=n).map(VarLabel::W).chain((1..=n).map(VarLabel::Y)).collect()
}

fn check_index(j: usize, n: usize) -> Result<()> {
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    Ok(())
}

/// `(w_j - y_j - 1)^2 - 1` reduced with `s^2 = s`, i.e.
/// `-w_j + 3 y_j - 2 w_j y_j`, over labels `w1..wn, y1..yn`.
pub fn inequality_penalty(j: usize, n: usize) -> Result<QuboModel> {
    inequality_penalty_scaled(j, n, Coeff::one())
}

pub fn inequality_penalty_scaled(j: usize, n: usize, scale: Coeff) -> Result<QuboModel> {
    check_index(j, n)?;
    let mut model = QuboModel::new(simon_bit_labels(n))?;
    let (w, y) = (VarLabel::W(j), VarLabel::Y(j));
    model.add_linear(&w, -scale)?;
    model.add_linear(&y, scale * 3)?;
    model.add_quadratic(&w, &y, scale * -2)?;
    Ok(model)
}

/// The literal Simon matrix: the inequality penalty plus `+gw - gy`, with the
/// two oracle outputs treated as free single bits.
pub fn build_simon_literal_qubo(n: usize, j: usize) -> Result<QuboModel> {
    build_simon_literal_qubo_scaled(n, j, Coeff::one())
}

pub fn build_simon_literal_qubo_scaled(n: usize, j: usize, penalty_scale: Coeff) -> Result<QuboModel> {
    if n < 2 {
        return Err(Error::Size(format!("Simon model needs n >= 2, got {n}")));
    }
    let mut objective = QuboModel::new(vec![VarLabel::Gw, VarLabel::Gy])?;
    objective.add_linear(&VarLabel::Gw, 1)?;
    objective.add_linear(&VarLabel::Gy, -1)?;
    Ok(inequality_penalty_scaled(j, n, penalty_scale)?.plus(&objective))
}

/// Oracle-coupled Simon objective over the `2n` bits `(w, y)`:
/// `signal(g(w), g(y)) + scale * (-w_j + 3 y_j - 2 w_j y_j)`.
#[derive(Clone, Copy, Debug)]
pub struct CoupledObjective<'a> {
    oracle: &'a SimonOracle,
    j: usize,
    signal: Signal,
    penalty_scale: Coeff,
}

impl<'a> CoupledObjective<'a> {
    pub fn new(oracle: &'a SimonOracle, j: usize, signal: Signal) -> Result<Self> {
        check_index(j, oracle.n())?;
        Ok(Self {
            oracle,
            j,
            signal,
            penalty_scale: Coeff::one(),
        })
    }

    pub fn with_penalty_scale(mut self, scale: Coeff) -> Self {
        self.penalty_scale = scale;
        self
    }

    pub fn n_vars(&self) -> usize {
        2 * self.oracle.n()
    }

    fn penalty(&self, wj: bool, yj: bool) -> Coeff {
        let (w, y) = (i64::from(wj), i64::from(yj));
        self.penalty_scale * Coeff::from(-w + 3 * y - 2 * w * y)
    }

    /// Energy of `w` and `y`. Queries the oracle twice.
    pub fn energy(&self, w: &[bool], y: &[bool]) -> Result<Coeff> {
        let n = self.oracle.n();
        let gw = self.oracle.query_bits(w)?;
        let gy = self.oracle.query_bits(y)?;
        let d = self.signal.value(gw, gy, n);
        Ok(d + self.penalty(w[self.j - 1], y[self.j - 1]))
    }

    /// Energy of the concatenated assignment `w ++ y`.
    pub fn energy_joint(&self, bits: &[bool]) -> Result<Coeff> {
        let n = self.oracle.n();
        if bits.len() != 2 * n {
            return Err(Error::Dimension {
                expected: 2 * n,
                found: bits.len(),
            });
        }
        self.energy(&bits[..n], &bits[n..])
    }

    /// Largest single-flip energy change: both signals span at most 1, and
    /// the penalty's largest flip bound is `5 * scale` (at `y_j`).
    pub fn flip_bound(&self) -> Coeff {
        Coeff::one() + (self.penalty_scale * 5).abs()
    }
}

/// `d(w, y) + (-w_j + 3 y_j - 2 w_j y_j)` with the given signal. Two queries.
pub fn simon_coupled_energy(
    oracle: &SimonOracle,
    w: &BitVector,
    y: &BitVector,
    j: usize,
    signal: Signal,
) -> Result<Coeff> {
    oracle.reveal().check_len(w.len())?;
    oracle.reveal().check_len(y.len())?;
    CoupledObjective::new(oracle, j, signal)?.energy(w.as_slice(), y.as_slice())
}
