//! Binary quadratic models.
//!
//! A [`QuboModel`] is the objective
//!
//! ```text
//! E(s) = sum_{i<j} J_ij s_i s_j + sum_i h_i s_i,   s_i in {0, 1}
//! ```
//!
//! and an [`IsingModel`] is the same shape over spins `σ_i in {-1, +1}` plus a
//! constant offset. The two are related by `σ = 2s - 1`. Coefficients are
//! exact rationals so every equivalence between the forms is an equality.

mod label;
mod spectrum;

use std::collections::{BTreeMap, HashMap};

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use label::VarLabel;
pub use spectrum::{exhaustive_solve, Spectrum, DEFAULT_ENUMERATION_CAP};

use crate::{BitVector, Error, Result};

/// Exact coefficient type. The spin substitution only introduces
/// denominators 2 and 4 into integer models.
pub type Coeff = Rational64;

/// Label bookkeeping and sparse coefficient storage shared by both model forms.
///
/// Couplers are keyed by `(i, j)` with `i < j` in label order, one entry per
/// unordered pair. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Terms {
    labels: Vec<VarLabel>,
    index: HashMap<VarLabel, usize>,
    linear: Vec<Coeff>,
    quadratic: BTreeMap<(usize, usize), Coeff>,
}

impl Terms {
    fn new(labels: Vec<VarLabel>) -> Result<Self> {
        let mut terms = Terms::default();
        for label in labels {
            terms.push_label(label)?;
        }
        Ok(terms)
    }

    fn push_label(&mut self, label: VarLabel) -> Result<usize> {
        if self.index.contains_key(&label) {
            return Err(Error::InvalidLabel(format!("duplicate label {label}")));
        }
        let i = self.labels.len();
        self.labels.push(label);
        self.index.insert(label, i);
        self.linear.push(Coeff::zero());
        Ok(i)
    }

    fn position(&self, label: &VarLabel) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::InvalidLabel(format!("unknown label {label}")))
    }

    fn check_position(&self, i: usize) -> Result<()> {
        if i >= self.labels.len() {
            return Err(Error::Dimension {
                expected: self.labels.len(),
                found: i + 1,
            });
        }
        Ok(())
    }

    fn add_linear_at(&mut self, i: usize, c: Coeff) -> Result<()> {
        self.check_position(i)?;
        self.linear[i] += c;
        Ok(())
    }

    fn add_quadratic_at(&mut self, i: usize, j: usize, c: Coeff) -> Result<()> {
        self.check_position(i)?;
        self.check_position(j)?;
        if i == j {
            return Err(Error::Validation(format!(
                "coupler pairs variable {} with itself",
                self.labels[i]
            )));
        }
        let key = (i.min(j), i.max(j));
        let entry = self.quadratic.entry(key).or_insert_with(Coeff::zero);
        *entry += c;
        if entry.is_zero() {
            self.quadratic.remove(&key);
        }
        Ok(())
    }

    fn quadratic_at(&self, i: usize, j: usize) -> Coeff {
        self.quadratic
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or_else(Coeff::zero)
    }

    fn map_coefficients(&self, f: impl Fn(Coeff) -> Coeff) -> Terms {
        let mut out = self.clone();
        for c in &mut out.linear {
            *c = f(*c);
        }
        out.quadratic = self
            .quadratic
            .iter()
            .map(|(&k, &c)| (k, f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        out
    }

    /// Coefficient-wise sum over the union of labels; `self`'s labels come first.
    fn plus(&self, other: &Terms) -> Terms {
        let mut out = self.clone();
        let remap: Vec<usize> = other
            .labels
            .iter()
            .map(|l| match out.index.get(l) {
                Some(&i) => i,
                None => out.push_label(*l).expect("label is new"),
            })
            .collect();
        for (i, &c) in other.linear.iter().enumerate() {
            out.linear[remap[i]] += c;
        }
        for (&(i, j), &c) in &other.quadratic {
            out.add_quadratic_at(remap[i], remap[j], c)
                .expect("remapped positions are valid and distinct");
        }
        out
    }

    fn relabel(&self, labels: Vec<VarLabel>) -> Result<Terms> {
        if labels.len() != self.labels.len() {
            return Err(Error::Dimension {
                expected: self.labels.len(),
                found: labels.len(),
            });
        }
        let mut out = Terms::new(labels)?;
        out.linear = self.linear.clone();
        out.quadratic = self.quadratic.clone();
        Ok(out)
    }

    fn linear_terms(&self) -> impl Iterator<Item = (usize, Coeff)> + '_ {
        self.linear
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i, c))
    }

    fn quadratic_terms(&self) -> impl Iterator<Item = ((usize, usize), Coeff)> + '_ {
        self.quadratic.iter().map(|(&k, &c)| (k, c))
    }
}

/// Binary quadratic model over 0/1 variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuboModel {
    terms: Terms,
}

impl QuboModel {
    pub fn new(labels: Vec<VarLabel>) -> Result<Self> {
        Ok(Self {
            terms: Terms::new(labels)?,
        })
    }

    /// Model over `x0..x{n-1}` with every coefficient zero.
    pub fn plain(n: usize) -> Self {
        Self::new((0..n).map(VarLabel::Plain).collect()).expect("plain labels are unique")
    }

    pub fn push_label(&mut self, label: VarLabel) -> Result<usize> {
        self.terms.push_label(label)
    }

    pub fn n_vars(&self) -> usize {
        self.terms.labels.len()
    }

    pub fn labels(&self) -> &[VarLabel] {
        &self.terms.labels
    }

    pub fn position(&self, label: &VarLabel) -> Option<usize> {
        self.terms.index.get(label).copied()
    }

    pub fn add_linear(&mut self, label: &VarLabel, c: impl Into<Coeff>) -> Result<()> {
        let i = self.terms.position(label)?;
        self.terms.add_linear_at(i, c.into())
    }

    pub fn add_linear_at(&mut self, i: usize, c: impl Into<Coeff>) -> Result<()> {
        self.terms.add_linear_at(i, c.into())
    }

    pub fn add_quadratic(&mut self, a: &VarLabel, b: &VarLabel, c: impl Into<Coeff>) -> Result<()> {
        let i = self.terms.position(a)?;
        let j = self.terms.position(b)?;
        self.terms.add_quadratic_at(i, j, c.into())
    }

    pub fn add_quadratic_at(&mut self, i: usize, j: usize, c: impl Into<Coeff>) -> Result<()> {
        self.terms.add_quadratic_at(i, j, c.into())
    }

    /// Linear coefficient of `label`; zero if the label is absent.
    pub fn linear(&self, label: &VarLabel) -> Coeff {
        self.position(label)
            .map_or_else(Coeff::zero, |i| self.terms.linear[i])
    }

    pub fn linear_at(&self, i: usize) -> Coeff {
        self.terms.linear[i]
    }

    pub fn quadratic(&self, a: &VarLabel, b: &VarLabel) -> Coeff {
        match (self.position(a), self.position(b)) {
            (Some(i), Some(j)) if i != j => self.terms.quadratic_at(i, j),
            _ => Coeff::zero(),
        }
    }

    pub fn quadratic_at(&self, i: usize, j: usize) -> Coeff {
        self.terms.quadratic_at(i, j)
    }

    /// Nonzero linear terms in position order.
    pub fn linear_terms(&self) -> impl Iterator<Item = (usize, Coeff)> + '_ {
        self.terms.linear_terms()
    }

    /// Nonzero couplers `((i, j), J_ij)` with `i < j`, sorted by `(i, j)`.
    pub fn quadratic_terms(&self) -> impl Iterator<Item = ((usize, usize), Coeff)> + '_ {
        self.terms.quadratic_terms()
    }

    /// Energy of the assignment `s`, whose positions follow [`Self::labels`].
    pub fn energy(&self, s: &BitVector) -> Result<Coeff> {
        if s.len() != self.n_vars() {
            return Err(Error::Dimension {
                expected: self.n_vars(),
                found: s.len(),
            });
        }
        let bits = s.as_slice();
        let linear: Coeff = self.linear_terms().filter(|&(i, _)| bits[i]).map(|(_, c)| c).sum();
        let quadratic: Coeff = self
            .quadratic_terms()
            .filter(|&((i, j), _)| bits[i] && bits[j])
            .map(|(_, c)| c)
            .sum();
        Ok(linear + quadratic)
    }

    pub fn plus(&self, other: &QuboModel) -> QuboModel {
        QuboModel {
            terms: self.terms.plus(&other.terms),
        }
    }

    pub fn scaled(&self, k: Coeff) -> QuboModel {
        QuboModel {
            terms: self.terms.map_coefficients(|c| c * k),
        }
    }

    /// Same coefficients under new labels, position by position.
    pub fn relabel(&self, labels: Vec<VarLabel>) -> Result<QuboModel> {
        Ok(QuboModel {
            terms: self.terms.relabel(labels)?,
        })
    }

    pub fn is_integral(&self) -> bool {
        self.linear_terms().all(|(_, c)| c.is_integer())
            && self.quadratic_terms().all(|(_, c)| c.is_integer())
    }

    /// Largest possible single-flip energy change of each variable:
    /// `|h_i| + sum_j |J_ij|`.
    pub fn flip_bounds(&self) -> Vec<Coeff> {
        let mut bounds: Vec<Coeff> = self.terms.linear.iter().map(|c| c.abs()).collect();
        for ((i, j), c) in self.quadratic_terms() {
            bounds[i] += c.abs();
            bounds[j] += c.abs();
        }
        bounds
    }

    /// Substitute `s = (σ + 1) / 2`.
    pub fn to_ising(&self) -> IsingModel {
        let half = Coeff::new(1, 2);
        let quarter = Coeff::new(1, 4);
        let mut terms = Terms::new(self.labels().to_vec()).expect("labels already unique");
        let mut offset = Coeff::zero();
        for (i, h) in self.linear_terms() {
            terms.linear[i] += h * half;
            offset += h * half;
        }
        for ((i, j), c) in self.quadratic_terms() {
            let q = c * quarter;
            terms.quadratic.insert((i, j), q);
            terms.linear[i] += q;
            terms.linear[j] += q;
            offset += q;
        }
        IsingModel { terms, offset }
    }
}

/// Spin-glass model over `σ_i in {-1, +1}` with a constant offset.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IsingModel {
    terms: Terms,
    offset: Coeff,
}

impl IsingModel {
    pub fn new(labels: Vec<VarLabel>) -> Result<Self> {
        Ok(Self {
            terms: Terms::new(labels)?,
            offset: Coeff::zero(),
        })
    }

    pub fn n_vars(&self) -> usize {
        self.terms.labels.len()
    }

    pub fn labels(&self) -> &[VarLabel] {
        &self.terms.labels
    }

    pub fn offset(&self) -> Coeff {
        self.offset
    }

    pub fn set_offset(&mut self, offset: impl Into<Coeff>) {
        self.offset = offset.into();
    }

    pub fn add_linear(&mut self, label: &VarLabel, c: impl Into<Coeff>) -> Result<()> {
        let i = self.terms.position(label)?;
        self.terms.add_linear_at(i, c.into())
    }

    pub fn add_quadratic(&mut self, a: &VarLabel, b: &VarLabel, c: impl Into<Coeff>) -> Result<()> {
        let i = self.terms.position(a)?;
        let j = self.terms.position(b)?;
        self.terms.add_quadratic_at(i, j, c.into())
    }

    pub fn linear_at(&self, i: usize) -> Coeff {
        self.terms.linear[i]
    }

    pub fn quadratic_at(&self, i: usize, j: usize) -> Coeff {
        self.terms.quadratic_at(i, j)
    }

    pub fn linear_terms(&self) -> impl Iterator<Item = (usize, Coeff)> + '_ {
        self.terms.linear_terms()
    }

    pub fn quadratic_terms(&self) -> impl Iterator<Item = ((usize, usize), Coeff)> + '_ {
        self.terms.quadratic_terms()
    }

    pub fn energy(&self, sigma: &[i8]) -> Result<Coeff> {
        if sigma.len() != self.n_vars() {
            return Err(Error::Dimension {
                expected: self.n_vars(),
                found: sigma.len(),
            });
        }
        if let Some(&bad) = sigma.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidSpin(bad.into()));
        }
        let spin = |i: usize| Coeff::from(i64::from(sigma[i]));
        let linear: Coeff = self.linear_terms().map(|(i, h)| h * spin(i)).sum();
        let quadratic: Coeff = self
            .quadratic_terms()
            .map(|((i, j), c)| c * spin(i) * spin(j))
            .sum();
        Ok(linear + quadratic + self.offset)
    }

    /// Substitute `σ = 2s - 1`. Returns the QUBO and the constant left over,
    /// so that `E_ising(2s - 1) = E_qubo(s) + offset`.
    pub fn to_qubo(&self) -> (QuboModel, Coeff) {
        let two = Coeff::from(2);
        let four = Coeff::from(4);
        let mut terms = Terms::new(self.labels().to_vec()).expect("labels already unique");
        let mut offset = self.offset;
        for (i, h) in self.linear_terms() {
            terms.linear[i] += h * two;
            offset -= h;
        }
        for ((i, j), c) in self.quadratic_terms() {
            terms.quadratic.insert((i, j), c * four);
            terms.linear[i] -= c * two;
            terms.linear[j] -= c * two;
            offset += c;
        }
        (QuboModel { terms }, offset)
    }
}

/// Wire form of a [`QuboModel`]: labels in order plus sparse terms, with
/// coefficients written as exact rationals (`"-1"`, `"3/4"`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub labels: Vec<VarLabel>,
    pub linear: Vec<(VarLabel, String)>,
    pub quadratic: Vec<(VarLabel, VarLabel, String)>,
}

impl From<&QuboModel> for ModelDocument {
    fn from(m: &QuboModel) -> Self {
        let l = m.labels();
        ModelDocument {
            labels: l.to_vec(),
            linear: m.linear_terms().map(|(i, c)| (l[i], c.to_string())).collect(),
            quadratic: m
                .quadratic_terms()
                .map(|((i, j), c)| (l[i], l[j], c.to_string()))
                .collect(),
        }
    }
}

impl TryFrom<ModelDocument> for QuboModel {
    type Error = Error;

    fn try_from(doc: ModelDocument) -> Result<Self> {
        let parse = |s: &str| -> Result<Coeff> {
            s.parse()
                .map_err(|_| Error::Validation(format!("invalid coefficient {s:?}")))
        };
        let mut m = QuboModel::new(doc.labels)?;
        for (label, c) in &doc.linear {
            let i = m.terms.position(label)?;
            if !m.terms.linear[i].is_zero() {
                return Err(Error::Validation(format!("duplicate linear term for {label}")));
            }
            m.add_linear_at(i, parse(c)?)?;
        }
        for (a, b, c) in &doc.quadratic {
            if !m.quadratic(a, b).is_zero() {
                return Err(Error::Validation(format!("duplicate coupler {a}-{b}")));
            }
            m.add_quadratic(a, b, parse(c)?)?;
        }
        Ok(m)
    }
}

impl Serialize for QuboModel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ModelDocument::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuboModel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = ModelDocument::deserialize(deserializer)?;
        QuboModel::try_from(doc).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(v: i64) -> Coeff {
        Coeff::from(v)
    }

    fn all_assignments(n: usize) -> impl Iterator<Item = BitVector> {
        (0..1u64 << n).map(move |v| BitVector::from_integer(v, n))
    }

    /// Independent re-summation over the full upper triangle.
    fn naive_energy(m: &QuboModel, s: &BitVector) -> Coeff {
        let n = m.n_vars();
        let mut e = Coeff::zero();
        for i in 0..n {
            let si = Coeff::from(s.get(i) as i64);
            e += m.linear_at(i) * si;
            for j in (i + 1)..n {
                let sj = Coeff::from(s.get(j) as i64);
                e += si * m.quadratic_at(i, j) * sj;
            }
        }
        e
    }

    fn model_strategy(max_n: usize) -> impl Strategy<Value = QuboModel> {
        (0..=max_n).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            (
                proptest::collection::vec(-5i64..=5, n),
                proptest::collection::vec(-5i64..=5, pairs),
            )
                .prop_map(move |(h, j)| {
                    let mut m = QuboModel::plain(n);
                    for (i, v) in h.into_iter().enumerate() {
                        m.add_linear_at(i, v).unwrap();
                    }
                    let mut k = 0;
                    for a in 0..n {
                        for b in (a + 1)..n {
                            m.add_quadratic_at(a, b, j[k]).unwrap();
                            k += 1;
                        }
                    }
                    m
                })
        })
    }

    #[test]
    fn single_bv_cell_with_hidden_bit_set() {
        let mut m = QuboModel::plain(1);
        m.add_linear_at(0, -1).unwrap();
        assert_eq!(m.energy(&BitVector::from_integer(1, 1)).unwrap(), c(-1));
    }

    #[test]
    fn zero_assignment_has_zero_energy() {
        let mut m = QuboModel::plain(3);
        m.add_linear_at(0, 4).unwrap();
        m.add_quadratic_at(1, 2, -7).unwrap();
        assert_eq!(m.energy(&BitVector::zeros(3)).unwrap(), c(0));
    }

    #[test]
    fn energy_rejects_wrong_length() {
        let m = QuboModel::plain(3);
        assert!(matches!(
            m.energy(&BitVector::zeros(2)),
            Err(Error::Dimension { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn energy_matches_naive_sum_on_fixed_model() {
        let mut m = QuboModel::plain(3);
        m.add_linear_at(0, 2).unwrap();
        m.add_linear_at(1, -3).unwrap();
        m.add_linear_at(2, 1).unwrap();
        m.add_quadratic_at(0, 1, 4).unwrap();
        m.add_quadratic_at(2, 0, -5).unwrap();
        m.add_quadratic_at(1, 2, 1).unwrap();
        for s in all_assignments(3) {
            assert_eq!(m.energy(&s).unwrap(), naive_energy(&m, &s));
        }
        // s = 111: 2 - 3 + 1 + 4 - 5 + 1
        assert_eq!(m.energy(&BitVector::from_integer(7, 3)).unwrap(), c(0));
    }

    #[test]
    fn self_coupler_is_rejected() {
        let mut m = QuboModel::plain(2);
        assert!(m.add_quadratic_at(1, 1, 1).is_err());
    }

    #[test]
    fn couplers_are_stored_once_per_pair() {
        let mut m = QuboModel::plain(2);
        m.add_quadratic_at(1, 0, 2).unwrap();
        m.add_quadratic_at(0, 1, 3).unwrap();
        assert_eq!(m.quadratic_terms().collect::<Vec<_>>(), vec![((0, 1), c(5))]);
        m.add_quadratic_at(0, 1, -5).unwrap();
        assert_eq!(m.quadratic_terms().count(), 0);
    }

    #[test]
    fn duplicate_labels_are_rejected() {
        assert!(QuboModel::new(vec![VarLabel::W(1), VarLabel::W(1)]).is_err());
    }

    #[test]
    fn ising_zero_model() {
        let m = IsingModel::new(vec![VarLabel::Plain(0), VarLabel::Plain(1)]).unwrap();
        assert_eq!(m.energy(&[1, -1]).unwrap(), c(0));
        assert!(QuboModel::plain(0).to_ising() == IsingModel::default());
    }

    #[test]
    fn ising_rejects_non_spin_values() {
        let m = IsingModel::new(vec![VarLabel::Plain(0)]).unwrap();
        assert!(matches!(m.energy(&[0]), Err(Error::InvalidSpin(0))));
    }

    #[test]
    fn single_spin_bv_cell() {
        let mut q = QuboModel::plain(1);
        q.add_linear_at(0, -1).unwrap();
        let ising = q.to_ising();
        assert_eq!(ising.linear_at(0), Coeff::new(-1, 2));
        assert_eq!(ising.offset(), Coeff::new(-1, 2));
        assert_eq!(ising.energy(&[1]).unwrap(), c(-1));
        assert_eq!(ising.energy(&[-1]).unwrap(), c(0));
    }

    #[test]
    fn penalty_pair_converts_exactly() {
        let mut q = QuboModel::plain(2);
        q.add_linear_at(0, -1).unwrap();
        q.add_linear_at(1, 3).unwrap();
        q.add_quadratic_at(0, 1, -2).unwrap();
        let ising = q.to_ising();
        for s in all_assignments(2) {
            assert_eq!(q.energy(&s).unwrap(), ising.energy(&s.to_spins()).unwrap());
        }
    }

    #[test]
    fn bv_model_round_trips_through_ising() {
        let mut q = QuboModel::new((0..4).map(VarLabel::W).collect()).unwrap();
        for (k, h) in [1, -1, 1, -1].into_iter().enumerate() {
            q.add_linear_at(k, h).unwrap();
        }
        let (back, offset) = q.to_ising().to_qubo();
        assert_eq!(back, q);
        assert_eq!(offset, c(0));
    }

    #[test]
    fn json_document_round_trip() {
        let mut q = QuboModel::new(vec![VarLabel::W(1), VarLabel::Y(1), VarLabel::Gw]).unwrap();
        q.add_linear(&VarLabel::W(1), Coeff::new(-3, 4)).unwrap();
        q.add_quadratic(&VarLabel::Y(1), &VarLabel::W(1), -2).unwrap();
        let json = serde_json::to_string(&q).unwrap();
        let back: QuboModel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn json_document_rejects_duplicates() {
        let json = r#"{"labels":["x0","x1"],"linear":[["x0","1"],["x0","2"]],"quadratic":[]}"#;
        assert!(serde_json::from_str::<QuboModel>(json).is_err());
    }

    proptest! {
        #[test]
        fn energy_matches_naive_sum(m in model_strategy(6), v in any::<u64>()) {
            let s = BitVector::from_integer(v, m.n_vars());
            prop_assert_eq!(m.energy(&s).unwrap(), naive_energy(&m, &s));
        }

        #[test]
        fn conversion_preserves_every_energy(m in model_strategy(8)) {
            let ising = m.to_ising();
            for s in all_assignments(m.n_vars()) {
                prop_assert_eq!(m.energy(&s).unwrap(), ising.energy(&s.to_spins()).unwrap());
            }
        }

        #[test]
        fn ising_round_trip_is_identity(m in model_strategy(8)) {
            let (back, offset) = m.to_ising().to_qubo();
            prop_assert_eq!(back, m);
            prop_assert_eq!(offset, c(0));
        }

        #[test]
        fn energy_is_linear_in_the_model(a in model_strategy(5), b in model_strategy(5), v in any::<u64>()) {
            let sum = a.plus(&b);
            // Both use plain labels, so positions coincide on the shorter prefix.
            let s = BitVector::from_integer(v, sum.n_vars());
            let sa = BitVector::from_bits(s.as_slice()[..a.n_vars()].to_vec());
            let sb = BitVector::from_bits(s.as_slice()[..b.n_vars()].to_vec());
            prop_assert_eq!(
                sum.energy(&s).unwrap(),
                a.energy(&sa).unwrap() + b.energy(&sb).unwrap()
            );
        }
    }
}
