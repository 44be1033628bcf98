use num_integer::Integer;

use super::{Coeff, QuboModel};
use crate::{BitVector, Error, Result};

pub const DEFAULT_ENUMERATION_CAP: usize = 24;

/// Every assignment of a model with its energy, sorted by energy and then by
/// the assignment read as an integer (position 0 least significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    n_vars: usize,
    /// All energies are stored multiplied by `scale`, the lcm of the
    /// coefficient denominators, so enumeration runs on integers.
    scale: i64,
    entries: Vec<(i64, u64)>,
    ground_count: usize,
}

impl Spectrum {
    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, k: usize) -> (BitVector, Coeff) {
        let (e, v) = self.entries[k];
        (BitVector::from_integer(v, self.n_vars), Coeff::new(e, self.scale))
    }

    pub fn iter(&self) -> impl Iterator<Item = (BitVector, Coeff)> + '_ {
        (0..self.len()).map(|k| self.entry(k))
    }

    pub fn ground_energy(&self) -> Coeff {
        Coeff::new(self.entries[0].0, self.scale)
    }

    /// Degeneracy of the ground level.
    pub fn ground_count(&self) -> usize {
        self.ground_count
    }

    pub fn ground_states(&self) -> Vec<BitVector> {
        self.entries[..self.ground_count]
            .iter()
            .map(|&(_, v)| BitVector::from_integer(v, self.n_vars))
            .collect()
    }
}

/// Enumerate all `2^n` assignments in Gray-code order, updating local fields
/// incrementally. Refuses models with more than `cap` variables.
pub fn exhaustive_solve(model: &QuboModel, cap: usize) -> Result<Spectrum> {
    let n = model.n_vars();
    if n > cap || n >= 63 {
        return Err(Error::TooManyVariables { n_vars: n, cap });
    }

    let scale = model
        .linear_terms()
        .map(|(_, c)| *c.denom())
        .chain(model.quadratic_terms().map(|(_, c)| *c.denom()))
        .fold(1i64, |acc, d| acc.lcm(&d));
    let to_int = |c: Coeff| -> i64 {
        let scaled = c * Coeff::from(scale);
        debug_assert!(scaled.is_integer());
        *scaled.numer()
    };

    let mut field = vec![0i64; n];
    for (i, h) in model.linear_terms() {
        field[i] = to_int(h);
    }
    let mut neighbors: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for ((i, j), c) in model.quadratic_terms() {
        let c = to_int(c);
        neighbors[i].push((j, c));
        neighbors[j].push((i, c));
    }

    let total = 1usize << n;
    let mut energies = vec![0i64; total];
    let mut state = vec![false; n];
    let mut gray = 0usize;
    let mut energy = 0i64;
    for k in 1..total {
        let i = k.trailing_zeros() as usize;
        let delta = if state[i] { -field[i] } else { field[i] };
        energy = energy.checked_add(delta).ok_or(Error::Overflow)?;
        let sign = if state[i] { -1 } else { 1 };
        state[i] = !state[i];
        for &(j, c) in &neighbors[i] {
            field[j] += sign * c;
        }
        gray ^= 1 << i;
        energies[gray] = energy;
    }

    let mut entries: Vec<(i64, u64)> = energies
        .into_iter()
        .enumerate()
        .map(|(v, e)| (e, v as u64))
        .collect();
    entries.sort_unstable();
    let ground = entries[0].0;
    let ground_count = entries.iter().take_while(|(e, _)| *e == ground).count();

    Ok(Spectrum {
        n_vars: n,
        scale,
        entries,
        ground_count,
    })
}

impl Spectrum {
    /// Energy of a given assignment by lookup; linear scan, for tests and
    /// small reports.
    pub fn energy_of(&self, s: &BitVector) -> Option<Coeff> {
        if s.len() != self.n_vars {
            return None;
        }
        let v = s.to_integer()?;
        self.entries
            .iter()
            .find(|&&(_, a)| a == v)
            .map(|&(e, _)| Coeff::new(e, self.scale))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::VarLabel;
    use num_traits::Zero;

    #[test]
    fn empty_model_has_one_zero_entry() {
        let s = exhaustive_solve(&QuboModel::plain(0), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.ground_energy(), Coeff::zero());
        assert_eq!(s.ground_count(), 1);
    }

    #[test]
    fn refuses_above_cap() {
        let err = exhaustive_solve(&QuboModel::plain(25), DEFAULT_ENUMERATION_CAP).unwrap_err();
        assert!(matches!(err, Error::TooManyVariables { n_vars: 25, cap: 24 }));
        assert!(exhaustive_solve(&QuboModel::plain(5), 4).is_err());
    }

    #[test]
    fn bv_diagonal_ground_state() {
        let mut m = QuboModel::new((0..4).map(VarLabel::W).collect()).unwrap();
        for (k, h) in [1, -1, 1, -1].into_iter().enumerate() {
            m.add_linear_at(k, h).unwrap();
        }
        let s = exhaustive_solve(&m, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(s.ground_energy(), Coeff::from(-2));
        assert_eq!(s.ground_states(), vec![BitVector::from_integer(0b1010, 4)]);
    }

    #[test]
    fn agrees_with_direct_evaluation_and_sorts() {
        let mut m = QuboModel::plain(5);
        m.add_linear_at(0, Coeff::new(1, 2)).unwrap();
        m.add_linear_at(3, -2).unwrap();
        m.add_quadratic_at(0, 3, Coeff::new(-3, 4)).unwrap();
        m.add_quadratic_at(1, 4, 5).unwrap();
        m.add_quadratic_at(2, 4, -1).unwrap();
        let s = exhaustive_solve(&m, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(s.len(), 32);
        let mut seen = vec![false; 32];
        let mut prev: Option<(Coeff, u64)> = None;
        for (a, e) in s.iter() {
            assert_eq!(m.energy(&a).unwrap(), e);
            let v = a.to_integer().unwrap();
            seen[v as usize] = true;
            if let Some(p) = prev {
                assert!(p < (e, v));
            }
            prev = Some((e, v));
        }
        assert!(seen.into_iter().all(|b| b));
    }

    #[test]
    fn energy_lookup() {
        let mut m = QuboModel::plain(2);
        m.add_linear_at(1, 3).unwrap();
        let s = exhaustive_solve(&m, 24).unwrap();
        assert_eq!(s.energy_of(&BitVector::from_integer(2, 2)), Some(Coeff::from(3)));
    }
}
