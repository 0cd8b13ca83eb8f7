//! Functions on simplices versus alternating forms on oriented simplices.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::function::GradedFunction;
use crate::operators::coboundary_global;
use crate::orientation::OrientationAssignment;
use crate::simplex::Simplex;
use crate::weighted::WeightedComplex;
use crate::weights::WeightAssignment;

/// A simplex with an ordering of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedSimplex {
    sequence: Vec<usize>,
}

impl OrientedSimplex {
    pub fn new(sequence: Vec<usize>) -> Result<Self> {
        Simplex::new(sequence.clone())?;
        Ok(OrientedSimplex { sequence })
    }

    /// The ascending representative of `s`.
    pub fn canonical(s: &Simplex) -> Self {
        OrientedSimplex { sequence: s.vertices().to_vec() }
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn simplex(&self) -> Simplex {
        Simplex::new(self.sequence.clone()).expect("distinct vertices")
    }

    pub fn dim(&self) -> isize {
        self.sequence.len() as isize - 1
    }

    /// +1 when the ordering is an even permutation of the ascending one.
    pub fn parity(&self) -> i8 {
        let s = &self.sequence;
        let inversions = (0..s.len()).flat_map(|i| (i + 1..s.len()).map(move |j| (i, j))).filter(|&(i, j)| s[i] > s[j]).count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// The sequence with the vertex at `pos` omitted.
    pub fn omit(&self, pos: usize) -> OrientedSimplex {
        let mut sequence = self.sequence.clone();
        sequence.remove(pos);
        OrientedSimplex { sequence }
    }

    /// Both sequences describe the same oriented simplex.
    pub fn same_class(&self, other: &OrientedSimplex) -> bool {
        self.simplex() == other.simplex() && (self.dim() < 1 || self.parity() == other.parity())
    }
}

/// h([τ]) = Π_{i=1}^{k} θ(τ_i, τ_{i+1}) over the prefixes τ_i of the vertex sequence.
pub fn h_sign(orient: &OrientationAssignment, oriented: &OrientedSimplex) -> Result<i8> {
    let seq = oriented.sequence();
    let mut h = 1;
    for i in 1..seq.len() {
        let face = Simplex::new(seq[..i].to_vec())?;
        let coface = Simplex::new(seq[..=i].to_vec())?;
        h *= orient.theta(&face, &coface)?;
    }
    Ok(h)
}

/// An alternating form, stored by its value on ascending representatives.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AlternatingForm {
    values: BTreeMap<Simplex, f64>,
}

impl AlternatingForm {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets ω([σ]) = value; the opposite class receives −value.
    pub fn set(&mut self, oriented: &OrientedSimplex, value: f64) {
        let sign = if oriented.dim() >= 1 { oriented.parity() as f64 } else { 1.0 };
        self.values.insert(oriented.simplex(), sign * value);
    }

    pub fn eval(&self, oriented: &OrientedSimplex) -> f64 {
        let v = self.values.get(&oriented.simplex()).copied().unwrap_or(0.0);
        if oriented.dim() >= 1 {
            oriented.parity() as f64 * v
        } else {
            v
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, f64)> {
        self.values.iter().map(|(s, &v)| (s, v))
    }

    /// Σ over oriented simplices of m^or ω², with m^or = m/2 on both classes of a
    /// simplex of dimension ≥ 1 and m^or = m on the single class otherwise.
    pub fn norm_sq(&self, w: &WeightAssignment) -> f64 {
        let mut total = 0.0;
        for (s, _) in self.iter() {
            let canon = OrientedSimplex::canonical(s);
            if s.dim() >= 1 {
                let mut swapped = canon.sequence.clone();
                swapped.swap(0, 1);
                let other = OrientedSimplex { sequence: swapped };
                total += w.m(s) / 2.0 * (self.eval(&canon).powi(2) + self.eval(&other).powi(2));
            } else {
                total += w.m(s) * self.eval(&canon).powi(2);
            }
        }
        total
    }
}

/// Uω(τ) = h([τ])ω([τ]).
pub fn to_function(orient: &OrientationAssignment, omega: &AlternatingForm) -> Result<GradedFunction> {
    let mut f = GradedFunction::new();
    for (s, v) in omega.iter() {
        let canon = OrientedSimplex::canonical(s);
        f.set(s.clone(), h_sign(orient, &canon)? as f64 * v);
    }
    Ok(f)
}

/// U⁻¹f([τ]) = h([τ])f(τ).
pub fn from_function(orient: &OrientationAssignment, f: &GradedFunction) -> Result<AlternatingForm> {
    let mut omega = AlternatingForm::new();
    for (s, v) in f.iter() {
        let canon = OrientedSimplex::canonical(s);
        omega.set(&canon, h_sign(orient, &canon)? as f64 * v);
    }
    Ok(omega)
}

/// Σ_j (−1)^(j+1) ω([v_1, …, v̂_j, …, v_{k+1}]) with `j` 1-based.
pub fn classical_coboundary(omega: &AlternatingForm, sigma: &OrientedSimplex) -> f64 {
    (0..sigma.sequence().len())
        .map(|pos| {
            let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
            sign * omega.eval(&sigma.omit(pos))
        })
        .sum()
}

/// (−1)^k U⁻¹δUω evaluated at the oriented `k`-simplex `sigma`.
pub fn transported_coboundary(wc: &WeightedComplex, omega: &AlternatingForm, sigma: &OrientedSimplex) -> Result<f64> {
    let f = to_function(wc.orientation(), omega)?;
    let df = coboundary_global(wc).apply(&f);
    let h = h_sign(wc.orientation(), sigma)? as f64;
    let sign = if sigma.dim().rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok(sign * h * df.get(&sigma.simplex()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn os(v: &[usize]) -> OrientedSimplex {
        OrientedSimplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn h_under_lexicographic_signs() {
        let lex = OrientationAssignment::Lexicographic;
        // θ({0},{0,1}) = −1 and θ({0,1},{0,1,2}) = +1.
        assert_eq!(h_sign(&lex, &os(&[0, 1, 2])).unwrap(), -1);
        assert_eq!(h_sign(&lex, &os(&[1, 0, 2])).unwrap(), 1);
        assert_eq!(h_sign(&lex, &os(&[0, 1])).unwrap(), -1);
        assert_eq!(h_sign(&lex, &os(&[3])).unwrap(), 1);
    }

    #[test]
    fn classical_formula_small_cases() {
        let mut omega = AlternatingForm::new();
        omega.set(&os(&[0]), 2.0);
        omega.set(&os(&[1]), 5.0);
        assert_eq!(classical_coboundary(&omega, &os(&[0, 1])), 3.0);
        let mut omega = AlternatingForm::new();
        omega.set(&os(&[1, 2]), 1.0);
        assert_eq!(classical_coboundary(&omega, &os(&[0, 1, 2])), 1.0);
        assert_eq!(classical_coboundary(&omega, &os(&[1, 0, 2])), -1.0);
    }

    #[test]
    fn round_trip_and_vertex_identity() {
        let wc = WeightedComplex::combinatorial(SimplicialComplex::from_maximal([Simplex::from([0, 1, 2])], false).unwrap());
        let mut omega = AlternatingForm::new();
        omega.set(&os(&[2, 1]), 0.5);
        omega.set(&os(&[0]), -1.5);
        omega.set(&os(&[2, 0, 1]), 3.0);
        let f = to_function(wc.orientation(), &omega).unwrap();
        assert_eq!(f.get(&Simplex::vertex(0)), -1.5);
        assert_eq!(from_function(wc.orientation(), &f).unwrap(), omega);
        assert!((f.norm_sq(wc.weights()) - omega.norm_sq(wc.weights())).abs() < 1e-12);
    }
}
