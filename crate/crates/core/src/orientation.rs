//! The incidence sign θ(τ, σ).

use std::collections::BTreeMap;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::Simplex;

#[derive(Clone, Debug, Default, PartialEq)]
pub enum OrientationAssignment {
    /// θ(σ∖{v_j}, σ) = (−1)^(j+1) with `j` the 1-based sorted position.
    #[default]
    Lexicographic,
    /// Stored signs keyed by (face, coface).
    Explicit(BTreeMap<(Simplex, Simplex), i8>),
}

/// Lexicographic sign for `face ≺ coface`, 0 otherwise.
pub fn lexicographic_theta(face: &Simplex, coface: &Simplex) -> i8 {
    match face.extra_vertex(coface) {
        Some(v) => {
            let pos = coface.position(v).expect("extra vertex lies in coface");
            if pos.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        None => 0,
    }
}

impl OrientationAssignment {
    /// θ(face, coface) ∈ {−1, 0, 1}. Explicit mode rejects incident pairs without a stored sign.
    pub fn theta(&self, face: &Simplex, coface: &Simplex) -> Result<i8> {
        if !face.is_face_of(coface) {
            return Ok(0);
        }
        match self {
            OrientationAssignment::Lexicographic => Ok(lexicographic_theta(face, coface)),
            OrientationAssignment::Explicit(signs) => signs
                .get(&(face.clone(), coface.clone()))
                .copied()
                .ok_or_else(|| Error::MissingSign(face.clone(), coface.clone())),
        }
    }

    /// Checks sign completeness and the two-path cancellation behind δδ = 0.
    pub fn validate(&self, c: &SimplicialComplex) -> Result<()> {
        if let OrientationAssignment::Explicit(signs) = self {
            for ((f, s), &v) in signs {
                if v != 1 && v != -1 {
                    return Err(Error::InvalidSimplex(format!("sign {v} for ({f}, {s}) is not ±1")));
                }
                if !f.is_face_of(s) {
                    return Err(Error::InvalidSimplex(format!("({f}, {s}) is not a face pair")));
                }
            }
        }
        for sigma in c.simplices() {
            for tau in c.faces(sigma)? {
                self.theta(tau, sigma)?;
            }
            if sigma.dim() < 1 {
                continue;
            }
            // Each ρ two levels below σ is reached through exactly two faces.
            let n = sigma.vertices().len();
            for i in 0..n {
                for j in (i + 1)..n {
                    let rho = sigma.remove_at(j).remove_at(i);
                    if !c.contains(&rho) {
                        continue;
                    }
                    let t1 = sigma.remove_at(i);
                    let t2 = sigma.remove_at(j);
                    let s = self.theta(&rho, &t1)? * self.theta(&t1, sigma)? + self.theta(&rho, &t2)? * self.theta(&t2, sigma)?;
                    if s != 0 {
                        return Err(Error::InconsistentOrientation { rho, sigma: sigma.clone() });
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_signs() {
        let s = Simplex::from([0, 1, 2]);
        assert_eq!(lexicographic_theta(&Simplex::from([1, 2]), &s), 1);
        assert_eq!(lexicographic_theta(&Simplex::from([0, 2]), &s), -1);
        assert_eq!(lexicographic_theta(&Simplex::from([0, 1]), &s), 1);
        assert_eq!(lexicographic_theta(&Simplex::from([0]), &Simplex::from([0, 1])), -1);
        assert_eq!(lexicographic_theta(&Simplex::from([1]), &Simplex::from([0, 1])), 1);
        assert_eq!(lexicographic_theta(&Simplex::empty(), &Simplex::vertex(4)), 1);
        assert_eq!(lexicographic_theta(&Simplex::from([0]), &s), 0);
    }

    #[test]
    fn explicit_missing_and_inconsistent() {
        let c = SimplicialComplex::from_maximal([Simplex::from([0, 1, 2])], false).unwrap();
        let mut signs = BTreeMap::new();
        for sigma in c.simplices() {
            for tau in c.faces(sigma).unwrap() {
                signs.insert((tau.clone(), sigma.clone()), lexicographic_theta(tau, sigma));
            }
        }
        let o = OrientationAssignment::Explicit(signs.clone());
        o.validate(&c).unwrap();
        let key = (Simplex::from([0, 1]), Simplex::from([0, 1, 2]));
        signs.insert(key.clone(), -1);
        assert!(matches!(
            OrientationAssignment::Explicit(signs.clone()).validate(&c),
            Err(Error::InconsistentOrientation { .. })
        ));
        signs.remove(&key);
        assert!(matches!(OrientationAssignment::Explicit(signs).validate(&c), Err(Error::MissingSign(..))));
    }
}
