//! Graded simplex store with face and coface adjacency.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplex::Simplex;

/// Whether the empty simplex belongs to the complex.
///
/// `Auto` includes `∅` iff the total vertex weight is finite, which holds for
/// every finite complex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmptyPolicy {
    #[default]
    Auto,
    Include,
    Exclude,
}

impl EmptyPolicy {
    /// Resolves the policy for a complex whose total vertex weight is `vertex_mass`.
    pub fn resolve(self, vertex_mass: f64) -> bool {
        match self {
            EmptyPolicy::Auto => vertex_mass.is_finite(),
            EmptyPolicy::Include => true,
            EmptyPolicy::Exclude => false,
        }
    }
}

/// A finite, downward-closed family of simplices.
///
/// Simplices of dimension `k` live in `levels[k + 1]`, sorted. Adjacency is kept
/// as index lists into the neighbouring levels.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    levels: Vec<Vec<Simplex>>,
    index: HashMap<Simplex, usize>,
    faces: Vec<Vec<Vec<usize>>>,
    cofaces: Vec<Vec<Vec<usize>>>,
    includes_empty: bool,
}

impl SimplicialComplex {
    /// Downward closure of `maximal`. `∅` is stored only when `include_empty`.
    pub fn from_maximal<I, S>(maximal: I, include_empty: bool) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<Simplex>,
    {
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        let mut stack: Vec<Simplex> = Vec::new();
        for s in maximal {
            let s = s.into();
            if s.is_empty() {
                continue;
            }
            stack.push(s);
        }
        if stack.is_empty() {
            return Err(Error::EmptyComplex);
        }
        while let Some(s) = stack.pop() {
            if s.is_empty() || !all.insert(s.clone()) {
                continue;
            }
            if s.dim() > 0 {
                stack.extend(s.boundary_faces());
            }
        }
        if include_empty {
            all.insert(Simplex::empty());
        }
        Ok(Self::from_closed_set(all, include_empty))
    }

    /// Builds the complex from a set that is already downward closed.
    pub(crate) fn from_closed_set(all: BTreeSet<Simplex>, includes_empty: bool) -> Self {
        let top = all.iter().map(|s| s.dim()).max().unwrap_or(-1);
        let mut levels: Vec<Vec<Simplex>> = vec![Vec::new(); (top + 2) as usize];
        for s in all {
            levels[(s.dim() + 1) as usize].push(s);
        }
        let mut index = HashMap::new();
        for level in &levels {
            for (i, s) in level.iter().enumerate() {
                index.insert(s.clone(), i);
            }
        }
        let mut faces: Vec<Vec<Vec<usize>>> = levels.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        let mut cofaces: Vec<Vec<Vec<usize>>> = faces.clone();
        for (li, level) in levels.iter().enumerate().skip(1) {
            for (i, s) in level.iter().enumerate() {
                for f in s.boundary_faces() {
                    if let Some(&j) = index.get(&f) {
                        faces[li][i].push(j);
                        cofaces[li - 1][j].push(i);
                    }
                }
                faces[li][i].sort_unstable();
            }
        }
        SimplicialComplex { levels, index, faces, cofaces, includes_empty }
    }

    /// Highest simplex dimension (−1 for a complex holding only `∅`).
    pub fn dim(&self) -> isize {
        self.levels.len() as isize - 2
    }

    pub fn includes_empty(&self) -> bool {
        self.includes_empty
    }

    /// Simplices of dimension `k`, sorted. Empty slice outside the stored range.
    pub fn level(&self, k: isize) -> &[Simplex] {
        if k < -1 || k > self.dim() {
            return &[];
        }
        &self.levels[(k + 1) as usize]
    }

    /// Dimensions present, from −1 (when `∅` is stored) upward.
    pub fn dims(&self) -> impl Iterator<Item = isize> + '_ {
        let lo = if self.includes_empty { -1 } else { 0 };
        lo..=self.dim()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    /// Position of `s` within its level.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Every simplex in graded order (dimension, then lexicographic).
    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.levels.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    fn slot(&self, s: &Simplex) -> Result<(usize, usize)> {
        let i = self.index_of(s).ok_or_else(|| Error::NotInComplex(s.clone()))?;
        Ok(((s.dim() + 1) as usize, i))
    }

    /// Codimension-one faces of `s` stored in the complex.
    pub fn faces(&self, s: &Simplex) -> Result<Vec<&Simplex>> {
        let (li, i) = self.slot(s)?;
        if li == 0 {
            return Ok(Vec::new());
        }
        Ok(self.faces[li][i].iter().map(|&j| &self.levels[li - 1][j]).collect())
    }

    /// Codimension-one cofaces of `s`, in canonical order.
    pub fn cofaces(&self, s: &Simplex) -> Result<Vec<&Simplex>> {
        let (li, i) = self.slot(s)?;
        let mut out: Vec<&Simplex> = self.cofaces[li][i].iter().map(|&j| &self.levels[li + 1][j]).collect();
        out.sort();
        Ok(out)
    }

    pub fn is_maximal(&self, s: &Simplex) -> bool {
        self.cofaces(s).map(|c| c.is_empty()).unwrap_or(false)
    }

    pub fn maximal_simplices(&self) -> Vec<&Simplex> {
        self.simplices().filter(|s| !s.is_empty() && self.is_maximal(s)).collect()
    }

    /// Vertex ids of the 0-skeleton.
    pub fn vertices(&self) -> Vec<usize> {
        self.level(0).iter().map(|s| s.vertices()[0]).collect()
    }

    /// Subcomplex of simplices satisfying `keep`. `keep` must select a downward-closed set.
    pub fn subcomplex(&self, keep: impl Fn(&Simplex) -> bool) -> Self {
        let set: BTreeSet<Simplex> = self.simplices().filter(|s| keep(s)).cloned().collect();
        let has_empty = set.contains(&Simplex::empty());
        Self::from_closed_set(set, has_empty)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solid_triangle(include_empty: bool) -> SimplicialComplex {
        SimplicialComplex::from_maximal([Simplex::from([0, 1, 2])], include_empty).unwrap()
    }

    #[test]
    fn closure_of_one_triangle() {
        let c = solid_triangle(true);
        assert_eq!(c.level(2).len(), 1);
        assert_eq!(c.level(1).len(), 3);
        assert_eq!(c.level(0).len(), 3);
        assert_eq!(c.level(-1), &[Simplex::empty()]);
        assert_eq!(c.len(), 8);
    }

    #[test]
    fn hollow_triangle_has_no_cofaces_on_edges() {
        let c = SimplicialComplex::from_maximal([[0, 1], [1, 2], [0, 2]].map(Simplex::from), false).unwrap();
        assert_eq!(c.len(), 6);
        assert!(c.cofaces(&Simplex::from([0, 1])).unwrap().is_empty());
        assert!(!c.includes_empty());
    }

    #[test]
    fn cofaces_and_faces_agree() {
        let c = solid_triangle(false);
        assert_eq!(c.cofaces(&Simplex::from([0, 1])).unwrap(), vec![&Simplex::from([0, 1, 2])]);
        for s in c.simplices() {
            for f in c.faces(s).unwrap() {
                assert!(c.cofaces(f).unwrap().contains(&s));
            }
            if s.dim() >= 1 {
                assert_eq!(c.faces(s).unwrap().len() as isize, s.dim() + 1);
            }
        }
        assert!(c.faces(&Simplex::vertex(0)).unwrap().is_empty());
        assert!(c.cofaces(&Simplex::from([0, 5])).is_err());
    }

    #[test]
    fn empty_maximal_list_is_rejected() {
        assert!(SimplicialComplex::from_maximal(Vec::<Simplex>::new(), true).is_err());
    }
}
