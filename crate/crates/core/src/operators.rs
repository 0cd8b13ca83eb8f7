//! Coboundary and boundary operators as simplex-indexed sparse matrices.

use std::collections::HashMap;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::function::GradedFunction;
use crate::simplex::Simplex;
use crate::weighted::WeightedComplex;

/// Dimension of the simplices indexing one side of an operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Grading {
    Level(isize),
    Mixed,
}

/// Which truncation convention produced an operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Formal,
    Dirichlet,
    Neumann,
}

/// A sparse matrix whose rows and columns are labelled by simplices.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelOperator {
    pub rows: Vec<Simplex>,
    pub cols: Vec<Simplex>,
    pub source: Grading,
    pub target: Grading,
    pub convention: Convention,
    entries: Vec<(usize, usize, f64)>,
}

impl LevelOperator {
    pub fn from_triplets(
        rows: Vec<Simplex>,
        cols: Vec<Simplex>,
        mut entries: Vec<(usize, usize, f64)>,
        source: Grading,
        target: Grading,
        convention: Convention,
    ) -> Self {
        entries.retain(|e| e.2 != 0.0);
        entries.sort_by_key(|a| (a.0, a.1));
        LevelOperator { rows, cols, source, target, convention, entries }
    }

    /// Drops exact zeros of `mat`.
    pub fn from_dense(
        rows: Vec<Simplex>,
        cols: Vec<Simplex>,
        mat: &DMatrix<f64>,
        source: Grading,
        target: Grading,
        convention: Convention,
    ) -> Self {
        let mut entries = Vec::new();
        for i in 0..mat.nrows() {
            for j in 0..mat.ncols() {
                if mat[(i, j)] != 0.0 {
                    entries.push((i, j, mat[(i, j)]));
                }
            }
        }
        Self::from_triplets(rows, cols, entries, source, target, convention)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    /// Nonzero entries as (row simplex, column simplex, value).
    pub fn entries(&self) -> impl Iterator<Item = (&Simplex, &Simplex, f64)> {
        self.entries.iter().map(|&(i, j, v)| (&self.rows[i], &self.cols[j], v))
    }

    pub fn get(&self, row: &Simplex, col: &Simplex) -> f64 {
        self.entries().find(|(r, c, _)| *r == row && *c == col).map(|e| e.2).unwrap_or(0.0)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.rows.len(), self.cols.len());
        for &(i, j, v) in &self.entries {
            m[(i, j)] += v;
        }
        m
    }

    /// Sparse matrix-vector product. Values of `f` off the column set are ignored.
    pub fn apply(&self, f: &GradedFunction) -> GradedFunction {
        let x: Vec<f64> = self.cols.iter().map(|s| f.get(s)).collect();
        let mut y = vec![0.0; self.rows.len()];
        for &(i, j, v) in &self.entries {
            y[i] += v * x[j];
        }
        self.rows.iter().cloned().zip(y).filter(|(_, v)| *v != 0.0).collect()
    }

    /// `self ∘ other`. Columns of `self` are matched to rows of `other` by simplex.
    pub fn compose(&self, other: &LevelOperator) -> LevelOperator {
        let pos: HashMap<&Simplex, usize> = self.cols.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut right = DMatrix::zeros(self.cols.len(), other.cols.len());
        for (r, c, v) in other.entries() {
            if let Some(&i) = pos.get(r) {
                let j = other.cols.iter().position(|s| s == c).expect("column of other");
                right[(i, j)] += v;
            }
        }
        let prod = self.to_dense() * right;
        LevelOperator::from_dense(self.rows.clone(), other.cols.clone(), &prod, other.source, self.target, self.convention)
    }

    pub fn frobenius(&self) -> f64 {
        self.entries.iter().map(|e| e.2 * e.2).sum::<f64>().sqrt()
    }

    /// One `row_key col_key value` line per nonzero. `∅` is written as `-`.
    pub fn to_triplet_text(&self) -> String {
        let mut out = String::new();
        for (r, c, v) in self.entries() {
            let _ = writeln!(out, "{} {} {}", triplet_key(r), triplet_key(c), v);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "rows": self.rows.iter().map(Simplex::key).collect::<Vec<_>>(),
            "cols": self.cols.iter().map(Simplex::key).collect::<Vec<_>>(),
            "entries": self.entries.iter().map(|&(i, j, v)| json!([i, j, v])).collect::<Vec<_>>(),
            "source": self.source,
            "target": self.target,
            "convention": self.convention,
        })
    }
}

pub(crate) fn triplet_key(s: &Simplex) -> String {
    if s.is_empty() {
        "-".to_string()
    } else {
        s.key()
    }
}

/// δ_k : Σ_k → Σ_{k+1}, entry (σ, τ) = θ(τ, σ). Weight independent.
pub fn coboundary_matrix(wc: &WeightedComplex, k: isize) -> LevelOperator {
    let rows = wc.level(k + 1).to_vec();
    let cols = wc.level(k).to_vec();
    let mut entries = Vec::new();
    for (i, sigma) in rows.iter().enumerate() {
        for tau in wc.faces(sigma) {
            let j = wc.complex().index_of(tau).expect("face stored");
            entries.push((i, j, wc.theta(tau, sigma)));
        }
    }
    LevelOperator::from_triplets(rows, cols, entries, Grading::Level(k), Grading::Level(k + 1), Convention::Formal)
}

/// ∂_k : Σ_{k+1} → Σ_k, entry (ρ, τ) = m(τ)θ(ρ,τ)/m(ρ).
pub fn boundary_matrix(wc: &WeightedComplex, k: isize) -> LevelOperator {
    let rows = wc.level(k).to_vec();
    let cols = wc.level(k + 1).to_vec();
    let mut entries = Vec::new();
    for (j, tau) in cols.iter().enumerate() {
        for rho in wc.faces(tau) {
            let i = wc.complex().index_of(rho).expect("face stored");
            entries.push((i, j, wc.m(tau) * wc.theta(rho, tau) / wc.m(rho)));
        }
    }
    LevelOperator::from_triplets(rows, cols, entries, Grading::Level(k + 1), Grading::Level(k), Convention::Formal)
}

fn global(wc: &WeightedComplex, boundary: bool) -> LevelOperator {
    let all: Vec<Simplex> = wc.complex().simplices().cloned().collect();
    let pos: HashMap<&Simplex, usize> = all.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut entries = Vec::new();
    for (j, sigma) in all.iter().enumerate() {
        for tau in wc.faces(sigma) {
            let i = pos[tau];
            if boundary {
                entries.push((i, j, wc.m(sigma) * wc.theta(tau, sigma) / wc.m(tau)));
            } else {
                entries.push((j, i, wc.theta(tau, sigma)));
            }
        }
    }
    LevelOperator::from_triplets(all.clone(), all, entries, Grading::Mixed, Grading::Mixed, Convention::Formal)
}

/// δ on all levels at once.
pub fn coboundary_global(wc: &WeightedComplex) -> LevelOperator {
    global(wc, false)
}

/// ∂ on all levels at once.
pub fn boundary_global(wc: &WeightedComplex) -> LevelOperator {
    global(wc, true)
}

/// Gauss-Bonnet operator δ + ∂ on the full graded space.
pub fn gauss_bonnet(wc: &WeightedComplex) -> LevelOperator {
    let d = coboundary_global(wc).to_dense() + boundary_global(wc).to_dense();
    let all: Vec<Simplex> = wc.complex().simplices().cloned().collect();
    LevelOperator::from_dense(all.clone(), all, &d, Grading::Mixed, Grading::Mixed, Convention::Formal)
}

pub fn apply(op: &LevelOperator, f: &GradedFunction) -> GradedFunction {
    op.apply(f)
}

/// Random function on roughly half the simplices with values in [−1, 1].
pub fn random_function(wc: &WeightedComplex, rng: &mut impl Rng) -> GradedFunction {
    wc.complex()
        .simplices()
        .filter_map(|s| if rng.gen_bool(0.5) { Some((s.clone(), rng.gen_range(-1.0..=1.0))) } else { None })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct StokesReport {
    /// max |⟨∂ω,η⟩ − ⟨ω,δη⟩|, relative to 1 + |both sides|.
    pub stokes: f64,
    /// max |⟨δ∂ω,η⟩ − ⟨∂ω,∂η⟩|, same scaling.
    pub green_down: f64,
    /// max |⟨∂δω,η⟩ − ⟨δω,δη⟩|, same scaling.
    pub green_up: f64,
    /// max |⟨∂ω,δη⟩|: the cross term vanishes on finite complexes.
    pub cross: f64,
}

impl StokesReport {
    pub fn max(&self) -> f64 {
        self.stokes.max(self.green_down).max(self.green_up).max(self.cross)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + a.abs() + b.abs())
}

/// Stokes and Green residuals over random sparse pairs (ω, η).
pub fn verify_stokes(wc: &WeightedComplex, trials: usize, seed: u64) -> StokesReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = coboundary_global(wc);
    let b = boundary_global(wc);
    let w = wc.weights();
    let mut r = StokesReport::default();
    for _ in 0..trials {
        let omega = random_function(wc, &mut rng);
        let eta = random_function(wc, &mut rng);
        let bo = b.apply(&omega);
        let de = d.apply(&eta);
        let do_ = d.apply(&omega);
        let be = b.apply(&eta);
        r.stokes = r.stokes.max(rel(bo.inner(&eta, w), omega.inner(&de, w)));
        r.green_down = r.green_down.max(rel(d.apply(&bo).inner(&eta, w), bo.inner(&be, w)));
        r.green_up = r.green_up.max(rel(b.apply(&do_).inner(&eta, w), do_.inner(&de, w)));
        let cross = bo.inner(&de, w);
        r.cross = r.cross.max(cross.abs() / (1.0 + bo.norm_sq(w).sqrt() * de.norm_sq(w).sqrt()));
    }
    r
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct DdReport {
    pub dd_residual: f64,
    pub pp_residual: f64,
}

/// Frobenius norms of δ_{k+1}δ_k and ∂_k∂_{k+1} maximized over k.
pub fn verify_dd_zero(wc: &WeightedComplex) -> DdReport {
    let mut r = DdReport::default();
    for k in wc.complex().dims() {
        let dd = coboundary_matrix(wc, k + 1).to_dense() * coboundary_matrix(wc, k).to_dense();
        let pp = boundary_matrix(wc, k).to_dense() * boundary_matrix(wc, k + 1).to_dense();
        r.dd_residual = r.dd_residual.max(dd.norm());
        r.pp_residual = r.pp_residual.max(pp.norm());
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn wc(max: &[&[usize]], empty: bool) -> WeightedComplex {
        WeightedComplex::combinatorial(SimplicialComplex::from_maximal(max.iter().map(|v| Simplex::from(*v)), empty).unwrap())
    }

    #[test]
    fn edge_coboundary_and_boundary() {
        let c = wc(&[&[0, 1]], false);
        let d0 = coboundary_matrix(&c, 0).to_dense();
        assert_eq!(d0.as_slice(), &[-1.0, 1.0]);
        let b0 = boundary_matrix(&c, 0).to_dense();
        assert_eq!(b0.shape(), (2, 1));
        assert_eq!(b0.as_slice(), &[-1.0, 1.0]);
        assert_eq!(boundary_matrix(&c, -1).shape(), (0, 2));
        let f = coboundary_matrix(&c, 0).apply(&GradedFunction::indicator(&Simplex::vertex(0)));
        assert_eq!(f.get(&Simplex::from([0, 1])), -1.0);
        assert!(coboundary_matrix(&c, 0).apply(&GradedFunction::new()).is_zero());
    }

    #[test]
    fn hollow_triangle_incidence_rank() {
        let c = wc(&[&[0, 1], &[1, 2], &[0, 2]], false);
        let d0 = coboundary_matrix(&c, 0).to_dense();
        assert_eq!(d0.shape(), (3, 3));
        assert_eq!(d0.rank(1e-10), 2);
    }

    #[test]
    fn solid_triangle_dd_and_stokes() {
        let c = wc(&[&[0, 1, 2]], true);
        let r = verify_dd_zero(&c);
        assert_eq!(r.dd_residual, 0.0);
        assert!(r.pp_residual <= 1e-12);
        assert!(verify_stokes(&c, 20, 7).max() <= 1e-12);
        // ω = 1_σ, η = 1_{01}: both sides equal m(σ)θ({0,1},σ).
        let sigma = Simplex::from([0, 1, 2]);
        let e = Simplex::from([0, 1]);
        let lhs = boundary_global(&c).apply(&GradedFunction::indicator(&sigma)).inner(&GradedFunction::indicator(&e), c.weights());
        let rhs = GradedFunction::indicator(&sigma).inner(&coboundary_global(&c).apply(&GradedFunction::indicator(&e)), c.weights());
        assert_eq!(lhs, 1.0);
        assert_eq!(rhs, 1.0);
    }

    #[test]
    fn boundary_is_weighted_adjoint() {
        use std::collections::BTreeMap;
        use crate::weights::{WeightAssignment, WeightScheme};
        let c = wc(&[&[0, 1, 2], &[2, 3]], true);
        let weights: BTreeMap<Simplex, f64> =
            c.complex().simplices().enumerate().map(|(i, s)| (s.clone(), 0.5 + i as f64 * 0.37)).collect();
        let c = c.with_weights(WeightAssignment::new(c.complex(), weights, WeightScheme::Explicit).unwrap()).unwrap();
        for k in -1..2 {
            let d = coboundary_matrix(&c, k).to_dense();
            let mk = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(c.level(k).len(), c.level(k).iter().map(|s| c.m(s))));
            let mk1 = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                c.level(k + 1).len(),
                c.level(k + 1).iter().map(|s| c.m(s)),
            ));
            let b = mk.try_inverse().unwrap() * d.transpose() * mk1;
            assert!((b - boundary_matrix(&c, k).to_dense()).amax() < 1e-14);
        }
    }

    #[test]
    fn triplet_export_marks_empty_simplex() {
        let c = wc(&[&[0]], true);
        assert_eq!(boundary_matrix(&c, -1).to_triplet_text(), "- 0 1\n");
    }
}
