//! Positive weight functions on simplices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::Simplex;

/// How a weight assignment was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightScheme {
    Explicit,
    Combinatorial,
    Normalizing,
    ConstantDiagonal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightAssignment {
    weights: BTreeMap<Simplex, f64>,
    scheme: WeightScheme,
}

impl WeightAssignment {
    /// Checks that `weights` covers exactly the simplices of `c` with positive values.
    pub fn new(c: &SimplicialComplex, weights: BTreeMap<Simplex, f64>, scheme: WeightScheme) -> Result<Self> {
        for (s, &m) in &weights {
            if !c.contains(s) {
                return Err(Error::UnknownWeight(s.clone()));
            }
            if m.is_nan() || m <= 0.0 || !m.is_finite() {
                return Err(Error::NonPositiveWeight(s.clone(), m));
            }
        }
        if let Some(s) = c.simplices().find(|s| !weights.contains_key(*s)) {
            return Err(Error::MissingWeight(s.clone()));
        }
        Ok(WeightAssignment { weights, scheme })
    }

    /// `m ≡ 1`, except `m(∅) = empty_weight`.
    pub fn combinatorial(c: &SimplicialComplex, empty_weight: f64) -> Result<Self> {
        let weights = c
            .simplices()
            .map(|s| (s.clone(), if s.is_empty() { empty_weight } else { 1.0 }))
            .collect();
        Self::new(c, weights, WeightScheme::Combinatorial)
    }

    /// Weight of `s`.
    ///
    /// # Panics
    /// When `s` carries no weight; assignments are complete for their complex.
    pub fn m(&self, s: &Simplex) -> f64 {
        match self.weights.get(s) {
            Some(&m) => m,
            None => panic!("no weight for {s}"),
        }
    }

    pub fn get(&self, s: &Simplex) -> Option<f64> {
        self.weights.get(s).copied()
    }

    pub fn scheme(&self) -> WeightScheme {
        self.scheme
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, f64)> {
        self.weights.iter().map(|(s, &m)| (s, m))
    }

    /// Total mass `m(A)` of a set of simplices.
    pub fn mass<'a>(&self, set: impl IntoIterator<Item = &'a Simplex>) -> f64 {
        set.into_iter().map(|s| self.m(s)).sum()
    }

    /// Restriction to the simplices of a subcomplex.
    pub fn restrict(&self, sub: &SimplicialComplex) -> Result<Self> {
        let weights = sub.simplices().map(|s| (s.clone(), self.m(s))).collect();
        Self::new(sub, weights, self.scheme)
    }
}
