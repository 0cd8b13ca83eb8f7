//! A complex bundled with its weights and orientation.

use std::collections::BTreeMap;

use crate::complex::{EmptyPolicy, SimplicialComplex};
use crate::error::{Error, Result};
use crate::generators::normalizing_weights;
use crate::orientation::OrientationAssignment;
use crate::simplex::Simplex;
use crate::weights::{WeightAssignment, WeightScheme};

/// How to weight a freshly built complex.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightSpec {
    /// Per-simplex weights. A missing `∅` entry falls back to the empty weight.
    Explicit(BTreeMap<Simplex, f64>),
    Combinatorial,
    /// Sum-of-cofaces weights from the given maximal weights (unit when `None`).
    Normalizing(Option<BTreeMap<Simplex, f64>>),
}

/// Immutable complex + weights + validated orientation.
#[derive(Clone, Debug)]
pub struct WeightedComplex {
    complex: SimplicialComplex,
    weights: WeightAssignment,
    orientation: OrientationAssignment,
}

impl WeightedComplex {
    pub fn new(complex: SimplicialComplex, weights: WeightAssignment, orientation: OrientationAssignment) -> Result<Self> {
        if let Some(s) = complex.simplices().find(|s| weights.get(s).is_none()) {
            return Err(Error::MissingWeight(s.clone()));
        }
        orientation.validate(&complex)?;
        Ok(WeightedComplex { complex, weights, orientation })
    }

    /// Combinatorial weights and lexicographic orientation.
    pub fn combinatorial(complex: SimplicialComplex) -> Self {
        let w = WeightAssignment::combinatorial(&complex, 1.0).expect("unit weights are valid");
        WeightedComplex { complex, weights: w, orientation: OrientationAssignment::Lexicographic }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn weights(&self) -> &WeightAssignment {
        &self.weights
    }

    pub fn orientation(&self) -> &OrientationAssignment {
        &self.orientation
    }

    pub fn m(&self, s: &Simplex) -> f64 {
        self.weights.m(s)
    }

    /// θ as a float. Orientation was validated at construction.
    pub fn theta(&self, face: &Simplex, coface: &Simplex) -> f64 {
        self.orientation.theta(face, coface).expect("validated orientation") as f64
    }

    pub fn faces(&self, s: &Simplex) -> Vec<&Simplex> {
        self.complex.faces(s).unwrap_or_default()
    }

    pub fn cofaces(&self, s: &Simplex) -> Vec<&Simplex> {
        self.complex.cofaces(s).unwrap_or_default()
    }

    pub fn level(&self, k: isize) -> &[Simplex] {
        self.complex.level(k)
    }

    pub fn dim(&self) -> isize {
        self.complex.dim()
    }

    /// Same complex and orientation, different weights.
    pub fn with_weights(&self, weights: WeightAssignment) -> Result<Self> {
        Self::new(self.complex.clone(), weights, self.orientation.clone())
    }

    /// Restriction to a downward-closed subset.
    pub fn subcomplex(&self, keep: impl Fn(&Simplex) -> bool) -> Result<Self> {
        let sub = self.complex.subcomplex(keep);
        let w = self.weights.restrict(&sub)?;
        let o = match &self.orientation {
            OrientationAssignment::Lexicographic => OrientationAssignment::Lexicographic,
            OrientationAssignment::Explicit(signs) => OrientationAssignment::Explicit(
                signs.iter().filter(|((_, s), _)| sub.contains(s)).map(|(k, &v)| (k.clone(), v)).collect(),
            ),
        };
        Self::new(sub, w, o)
    }
}

/// Builds the downward closure of `maximal` with the requested weights.
pub fn build_complex(
    maximal: &[Vec<usize>],
    weight_spec: &WeightSpec,
    empty_policy: EmptyPolicy,
    empty_weight: f64,
) -> Result<WeightedComplex> {
    if empty_weight.is_nan() || empty_weight <= 0.0 {
        return Err(Error::NonPositiveWeight(Simplex::empty(), empty_weight));
    }
    let simplices = maximal.iter().map(|v| Simplex::new(v.clone())).collect::<Result<Vec<_>>>()?;
    let probe = SimplicialComplex::from_maximal(simplices.clone(), false)?;
    let vertex_mass = match weight_spec {
        WeightSpec::Explicit(map) => probe.level(0).iter().map(|v| map.get(v).copied().unwrap_or(f64::NAN)).sum(),
        _ => probe.level(0).len() as f64,
    };
    // A NaN mass (missing vertex weight) is reported by the weight check below.
    let include = empty_policy.resolve(if vertex_mass.is_nan() { 0.0 } else { vertex_mass });
    let complex = if include { SimplicialComplex::from_maximal(simplices, true)? } else { probe };
    let weights = match weight_spec {
        WeightSpec::Combinatorial => WeightAssignment::combinatorial(&complex, empty_weight)?,
        WeightSpec::Explicit(map) => {
            let mut map = map.clone();
            if include {
                map.entry(Simplex::empty()).or_insert(empty_weight);
            }
            WeightAssignment::new(&complex, map, WeightScheme::Explicit)?
        }
        WeightSpec::Normalizing(top) => normalizing_weights(&complex, top.as_ref())?,
    };
    WeightedComplex::new(complex, weights, OrientationAssignment::Lexicographic)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn auto_policy_includes_empty() {
        let wc = build_complex(&[vec![0, 1, 2]], &WeightSpec::Combinatorial, EmptyPolicy::Auto, 1.0).unwrap();
        assert!(wc.complex().includes_empty());
        assert_eq!(wc.complex().len(), 8);
        assert_eq!(wc.m(&Simplex::empty()), 1.0);
        let wc = build_complex(&[vec![0, 1, 2]], &WeightSpec::Combinatorial, EmptyPolicy::Auto, 2.5).unwrap();
        assert_eq!(wc.m(&Simplex::empty()), 2.5);
    }

    #[test]
    fn hollow_triangle_excluded() {
        let wc = build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]], &WeightSpec::Combinatorial, EmptyPolicy::Exclude, 1.0)
            .unwrap();
        assert_eq!(wc.level(1).len(), 3);
        assert_eq!(wc.level(0).len(), 3);
        assert!(wc.level(-1).is_empty());
    }

    #[test]
    fn explicit_weight_outside_closure_rejected() {
        let mut map = BTreeMap::new();
        for s in ["0", "1", "0,1", "0,2"] {
            map.insert(s.parse().unwrap(), 1.0);
        }
        let err = build_complex(&[vec![0, 1]], &WeightSpec::Explicit(map), EmptyPolicy::Exclude, 1.0).unwrap_err();
        assert!(matches!(err, Error::UnknownWeight(_)));
    }
}
