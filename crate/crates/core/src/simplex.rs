use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A simplex stored by its strictly increasing vertex list.
///
/// The empty vertex list is the empty simplex `∅` of dimension −1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Builds a simplex from vertices in any order. Duplicates are rejected.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self, Error> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSimplex(format!("duplicate vertex in {vertices:?}")));
        }
        Ok(Simplex(vertices))
    }

    /// Caller guarantees `vertices` is strictly increasing.
    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn empty() -> Self {
        Simplex(Vec::new())
    }

    pub fn vertex(v: usize) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// The face obtained by deleting the vertex at sorted position `pos`.
    pub fn remove_at(&self, pos: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(pos);
        Simplex(v)
    }

    /// All codimension-one faces, in order of the removed position. `∅` for a vertex.
    pub fn boundary_faces(&self) -> Vec<Simplex> {
        (0..self.0.len()).map(|i| self.remove_at(i)).collect()
    }

    /// `self ∪ {v}`; `None` when `v` is already a vertex.
    pub fn with_vertex(&self, v: usize) -> Option<Simplex> {
        match self.0.binary_search(&v) {
            Ok(_) => None,
            Err(pos) => {
                let mut out = self.0.clone();
                out.insert(pos, v);
                Some(Simplex(out))
            }
        }
    }

    /// Sorted position of `v`, if present.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    /// True when `self ≺ other`, i.e. `self ⊂ other` with one extra vertex.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        other.0.len() == self.0.len() + 1 && self.0.iter().all(|v| other.contains(*v))
    }

    /// The vertex of `coface` missing from `self`, for `self ≺ coface`.
    pub fn extra_vertex(&self, coface: &Simplex) -> Option<usize> {
        if !self.is_face_of(coface) {
            return None;
        }
        coface.0.iter().copied().find(|v| !self.contains(*v))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v: Vec<usize> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    pub fn intersection(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| other.contains(*v)).collect())
    }

    /// Canonical document key: comma-joined vertices, `""` for `∅`.
    pub fn key(&self) -> String {
        self.0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "{{{}}}", self.key())
    }
}

impl FromStr for Simplex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Simplex::empty());
        }
        let vertices = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidSimplex(format!("bad vertex id `{p}` in `{s}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Simplex::new(vertices)
    }
}

impl From<&[usize]> for Simplex {
    fn from(v: &[usize]) -> Self {
        Simplex::new(v.to_vec()).expect("vertex list without duplicates")
    }
}

impl<const N: usize> From<[usize; N]> for Simplex {
    fn from(v: [usize; N]) -> Self {
        Simplex::new(v.to_vec()).expect("vertex list without duplicates")
    }
}
