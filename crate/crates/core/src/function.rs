//! Sparse real functions on simplices.

use std::collections::BTreeMap;

use nalgebra::DVector;

use crate::simplex::Simplex;
use crate::weights::WeightAssignment;

/// Absent keys are zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GradedFunction {
    values: BTreeMap<Simplex, f64>,
}

impl GradedFunction {
    pub fn new() -> Self {
        Self::default()
    }

    /// The indicator `1_τ`.
    pub fn indicator(tau: &Simplex) -> Self {
        let mut f = Self::new();
        f.set(tau.clone(), 1.0);
        f
    }

    pub fn get(&self, s: &Simplex) -> f64 {
        self.values.get(s).copied().unwrap_or(0.0)
    }

    /// Stores `value`; exact zeros are removed.
    pub fn set(&mut self, s: Simplex, value: f64) {
        if value == 0.0 {
            self.values.remove(&s);
        } else {
            self.values.insert(s, value);
        }
    }

    pub fn add(&mut self, s: &Simplex, value: f64) {
        let v = self.get(s) + value;
        self.set(s.clone(), v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, f64)> {
        self.values.iter().map(|(s, &v)| (s, v))
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// The part supported on dimension `k`.
    pub fn level(&self, k: isize) -> Self {
        GradedFunction { values: self.values.iter().filter(|(s, _)| s.dim() == k).map(|(s, &v)| (s.clone(), v)).collect() }
    }

    pub fn scaled(&self, a: f64) -> Self {
        let mut out = Self::new();
        for (s, v) in self.iter() {
            out.set(s.clone(), a * v);
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, v) in other.iter() {
            out.add(s, v);
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(-1.0))
    }

    /// ⟨f, g⟩_m = Σ m f g.
    pub fn inner(&self, other: &Self, w: &WeightAssignment) -> f64 {
        self.iter().map(|(s, v)| w.m(s) * v * other.get(s)).sum()
    }

    pub fn norm_sq(&self, w: &WeightAssignment) -> f64 {
        self.inner(self, w)
    }

    /// Values at `keys`, in order.
    pub fn to_dense(&self, keys: &[Simplex]) -> DVector<f64> {
        DVector::from_iterator(keys.len(), keys.iter().map(|s| self.get(s)))
    }

    pub fn from_dense(keys: &[Simplex], values: &DVector<f64>) -> Self {
        let mut out = Self::new();
        for (s, &v) in keys.iter().zip(values.iter()) {
            out.set(s.clone(), v);
        }
        out
    }
}

impl FromIterator<(Simplex, f64)> for GradedFunction {
    fn from_iter<I: IntoIterator<Item = (Simplex, f64)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (s, v) in iter {
            out.add(&s, v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_arithmetic() {
        let a = Simplex::from([0, 1]);
        let mut f = GradedFunction::indicator(&a);
        f.add(&Simplex::vertex(2), 3.0);
        assert_eq!(f.support_len(), 2);
        let g = f.minus(&f);
        assert!(g.is_zero());
        assert_eq!(f.level(0).support_len(), 1);
        let keys = vec![Simplex::vertex(2), a.clone()];
        assert_eq!(GradedFunction::from_dense(&keys, &f.to_dense(&keys)), f);
    }
}
