//! Eigenvalues, spectrum matching, Hodge decomposition and Betti numbers.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::GradedFunction;
use crate::laplacian::{
    down_block, laplacian, symmetrize_to_euclidean, up_block, BoundaryCondition, LaplacianFlavor, Truncation,
};
use crate::operators::{coboundary_matrix, Convention, Grading, LevelOperator};
use crate::simplex::Simplex;
use crate::weighted::WeightedComplex;

/// Relative kernel threshold used when none is given.
pub const DEFAULT_ZERO_REL: f64 = 1e-8;
pub const DEFAULT_MATCH_ABS: f64 = 1e-9;
pub const DEFAULT_MATCH_REL: f64 = 1e-9;

/// Kernel threshold for a spectrum with largest magnitude `max_abs`.
///
/// `SC_ZERO_EPS`, when set to a number, replaces the relative default with an absolute value.
pub fn zero_threshold(max_abs: f64) -> f64 {
    if let Some(v) = std::env::var("SC_ZERO_EPS").ok().and_then(|s| s.parse::<f64>().ok()) {
        return v;
    }
    DEFAULT_ZERO_REL * max_abs
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    /// Ascending, with multiplicity.
    pub eigenvalues: Vec<f64>,
    pub zero_threshold: f64,
    pub source: String,
}

impl Spectrum {
    pub fn zero_dim(&self) -> usize {
        self.eigenvalues.iter().filter(|&&l| l <= self.zero_threshold).count()
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn nonzero(&self) -> Vec<f64> {
        self.eigenvalues.iter().copied().filter(|&l| l > self.zero_threshold).collect()
    }
}

/// Eigenpairs of a symmetric matrix, ascending.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// Column `i` belongs to `values[i]`.
    pub vectors: DMatrix<f64>,
    /// max_i ‖Av_i − λ_i v_i‖ / ‖A‖.
    pub residual: f64,
}

pub fn eigen_decomposition(a: &DMatrix<f64>) -> Result<EigenDecomposition> {
    if a.nrows() != a.ncols() {
        return Err(Error::Unsupported("eigen needs a square matrix".into()));
    }
    let norm = a.norm();
    let asym = (a - a.transpose()).norm();
    if asym > 1e-10 * norm.max(f64::MIN_POSITIVE) {
        return Err(Error::NotSymmetric(asym / norm));
    }
    let n = a.nrows();
    if n == 0 {
        return Ok(EigenDecomposition { values: Vec::new(), vectors: DMatrix::zeros(0, 0), residual: 0.0 });
    }
    let eig = SymmetricEigen::new((a + a.transpose()) * 0.5);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    let mut residual: f64 = 0.0;
    for (c, &l) in values.iter().enumerate() {
        let v = vectors.column(c);
        residual = residual.max((a * v - v * l).norm());
    }
    Ok(EigenDecomposition { values, vectors, residual: residual / norm.max(f64::MIN_POSITIVE) })
}

/// Ascending eigenvalues of a symmetric matrix.
pub fn eigenvalues(a: &DMatrix<f64>) -> Result<Vec<f64>> {
    Ok(eigen_decomposition(a)?.values)
}

/// Spectrum of a symmetric matrix; `tol` bounds the relative eigen-residual.
pub fn eigen(a: &DMatrix<f64>, tol: f64) -> Result<Spectrum> {
    let e = eigen_decomposition(a)?;
    if e.residual > tol {
        return Err(Error::Unsupported(format!("eigen residual {:e} above {:e}", e.residual, tol)));
    }
    let max_abs = e.values.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
    Ok(Spectrum { zero_threshold: zero_threshold(max_abs), eigenvalues: e.values, source: String::new() })
}

/// Spectrum of an m-symmetric operator.
pub fn operator_spectrum(op: &LevelOperator, wc: &WeightedComplex, source: impl Into<String>) -> Result<Spectrum> {
    let s = symmetrize_to_euclidean(op, wc)?;
    let mut sp = eigen(&s, 1e-9)?;
    sp.source = source.into();
    Ok(sp)
}

fn dense_spectrum(idx: &[Simplex], m: &DMatrix<f64>, wc: &WeightedComplex, source: String) -> Result<Spectrum> {
    let op = LevelOperator::from_dense(idx.to_vec(), idx.to_vec(), m, Grading::Mixed, Grading::Mixed, Convention::Formal);
    operator_spectrum(&op, wc, source)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatchReport {
    pub matched: bool,
    pub max_pair_gap: f64,
    pub kept: (usize, usize),
    pub zero_eps: f64,
}

/// Compares two spectra after dropping eigenvalues ≤ `zero_eps`.
///
/// `zero_eps` defaults to 1e−8 times the largest magnitude of either list and
/// gaps are accepted up to `match_abs + match_rel·max(|a|,|b|)`.
pub fn compare_mod_zero(a: &[f64], b: &[f64], zero_eps: Option<f64>, match_abs: f64, match_rel: f64) -> MatchReport {
    let max_abs = a.iter().chain(b).fold(0.0_f64, |m, l| m.max(l.abs()));
    let eps = zero_eps.unwrap_or_else(|| zero_threshold(max_abs));
    let mut ka: Vec<f64> = a.iter().copied().filter(|&l| l > eps).collect();
    let mut kb: Vec<f64> = b.iter().copied().filter(|&l| l > eps).collect();
    ka.sort_by(f64::total_cmp);
    kb.sort_by(f64::total_cmp);
    let mut gap: f64 = 0.0;
    let mut ok = ka.len() == kb.len();
    for (x, y) in ka.iter().zip(&kb) {
        let g = (x - y).abs();
        gap = gap.max(g);
        if g > match_abs + match_rel * x.abs().max(y.abs()) {
            ok = false;
        }
    }
    MatchReport { matched: ok, max_pair_gap: gap, kept: (ka.len(), kb.len()), zero_eps: eps }
}

/// [`compare_mod_zero`] with the default tolerances.
pub fn compare_default(a: &[f64], b: &[f64]) -> MatchReport {
    compare_mod_zero(a, b, None, DEFAULT_MATCH_ABS, DEFAULT_MATCH_REL)
}

#[derive(Clone, Debug)]
pub struct HodgeSplit {
    pub harmonic: GradedFunction,
    pub exact: GradedFunction,
    pub coexact: GradedFunction,
    /// ‖ω − (h + d + c)‖_m.
    pub residual: f64,
    /// Largest |⟨x, y⟩_m| / (‖x‖‖y‖) over the three pairs (0 when a part vanishes).
    pub max_cosine: f64,
}

/// Eigenpairs of A·Aᵀ whose eigenvalue clears the rank threshold.
///
/// The Gram route is used instead of an SVD: nalgebra's SVD loses accuracy on
/// some rank-deficient incidence matrices, the symmetric eigensolver does not.
fn range_basis(a: &DMatrix<f64>) -> Option<(EigenDecomposition, f64)> {
    if a.ncols() == 0 || a.nrows() == 0 {
        return None;
    }
    let gram = a * a.transpose();
    let eig = eigen_decomposition(&((&gram + gram.transpose()) * 0.5)).ok()?;
    let top = eig.values.iter().fold(0.0_f64, |m, &l| m.max(l));
    let tol = 1e-10 * top.max(f64::MIN_POSITIVE) * (a.nrows().max(a.ncols()) as f64);
    Some((eig, tol))
}

/// Orthogonal projector (Euclidean) onto the column space of `a`.
fn range_projector(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let mut p = DMatrix::zeros(n, n);
    if let Some((eig, tol)) = range_basis(a) {
        for (i, &l) in eig.values.iter().enumerate() {
            if l > tol {
                let c = eig.vectors.column(i);
                p += c * c.transpose();
            }
        }
    }
    p
}

fn numeric_rank(a: &DMatrix<f64>) -> usize {
    range_basis(a).map(|(eig, tol)| eig.values.iter().filter(|&&l| l > tol).count()).unwrap_or(0)
}

/// The three orthogonal projectors at one level, in M^{1/2} coordinates.
#[derive(Clone, Debug)]
pub struct HodgeProjectors {
    index: Vec<Simplex>,
    sqrt_m: DVector<f64>,
    harmonic: DMatrix<f64>,
    exact: DMatrix<f64>,
    coexact: DMatrix<f64>,
}

impl HodgeProjectors {
    pub fn new(wc: &WeightedComplex, k: isize) -> Result<Self> {
        let index = wc.level(k).to_vec();
        let sqrt_m = DVector::from_iterator(index.len(), index.iter().map(|s| wc.m(s).sqrt()));
        let scale_rows = |mut a: DMatrix<f64>| {
            for i in 0..a.nrows() {
                a.row_mut(i).scale_mut(sqrt_m[i]);
            }
            a
        };
        // Exact: range of δ_{k−1}; coexact: range of ∂_k.
        let exact = range_projector(&scale_rows(coboundary_matrix(wc, k - 1).to_dense()));
        let coexact = range_projector(&scale_rows(crate::operators::boundary_matrix(wc, k).to_dense()));
        let hodge = symmetrize_to_euclidean(&laplacian(wc, LaplacianFlavor::Hodge, k)?, wc)?;
        let eig = eigen_decomposition(&hodge)?;
        let max_abs = eig.values.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
        let eps = zero_threshold(max_abs);
        let mut harmonic = DMatrix::zeros(index.len(), index.len());
        for (i, &l) in eig.values.iter().enumerate() {
            if l <= eps {
                let c = eig.vectors.column(i);
                harmonic += c * c.transpose();
            }
        }
        Ok(HodgeProjectors { index, sqrt_m, harmonic, exact, coexact })
    }

    /// Rank of the harmonic projector.
    pub fn harmonic_dim(&self) -> usize {
        self.harmonic.trace().round() as usize
    }

    pub fn split(&self, omega: &GradedFunction) -> HodgeSplit {
        let x = omega.to_dense(&self.index).component_mul(&self.sqrt_m);
        let xh = &self.harmonic * &x;
        let xe = &self.exact * &x;
        let xc = &self.coexact * &x;
        let residual = (&x - &xh - &xe - &xc).norm();
        let cos = |a: &DVector<f64>, b: &DVector<f64>| {
            let d = a.norm() * b.norm();
            if d == 0.0 {
                0.0
            } else {
                a.dot(b).abs() / d
            }
        };
        let max_cosine = cos(&xh, &xe).max(cos(&xh, &xc)).max(cos(&xe, &xc));
        let back = |y: DVector<f64>| GradedFunction::from_dense(&self.index, &y.component_div(&self.sqrt_m));
        HodgeSplit { harmonic: back(xh), exact: back(xe), coexact: back(xc), residual, max_cosine }
    }
}

/// Splits the level-`k` part of `omega` into harmonic, exact and coexact pieces.
pub fn hodge_decompose(wc: &WeightedComplex, omega: &GradedFunction, k: isize) -> Result<HodgeSplit> {
    Ok(HodgeProjectors::new(wc, k)?.split(&omega.level(k)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BettiMode {
    KernelDim,
    RankQuotient,
}

/// Dimension of the level-`k` cohomology.
pub fn betti(wc: &WeightedComplex, k: isize, mode: BettiMode) -> Result<usize> {
    match mode {
        BettiMode::KernelDim => {
            let op = laplacian(wc, LaplacianFlavor::Hodge, k)?;
            Ok(operator_spectrum(&op, wc, "hodge")?.zero_dim())
        }
        BettiMode::RankQuotient => {
            let n = wc.level(k).len();
            let rk = numeric_rank(&coboundary_matrix(wc, k).to_dense());
            let rprev = numeric_rank(&coboundary_matrix(wc, k - 1).to_dense());
            Ok(n - rk - rprev)
        }
    }
}

/// Both Betti computations, rejecting a disagreement.
pub fn betti_checked(wc: &WeightedComplex, k: isize) -> Result<usize> {
    let kernel = betti(wc, k, BettiMode::KernelDim)?;
    let quotient = betti(wc, k, BettiMode::RankQuotient)?;
    if kernel != quotient {
        return Err(Error::BettiMismatch { k, kernel, quotient });
    }
    Ok(kernel)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub k: isize,
    /// Which conventions were paired, e.g. `up_dirichlet(k) ~ down_neumann(k+1)`.
    pub pairing: String,
    /// Nonzero σ(Δ⁺_k) against nonzero σ(Δ⁻_{k+1}).
    pub up_vs_next_down: MatchReport,
    /// Nonzero σ(Δ^H_k) against nonzero σ(Δ⁺_k) ∪ σ(Δ⁻_k).
    pub hodge_vs_union: MatchReport,
    /// 0 ∈ σ(Δ^H_k) implies 0 ∈ σ(Δ⁺_k) ∩ σ(Δ⁻_k).
    pub kernel_implication: bool,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.up_vs_next_down.matched && self.hodge_vs_union.matched && self.kernel_implication
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    pub checks: Vec<IdentityCheck>,
    pub max_gap: f64,
    pub passed: bool,
}

impl SpectralReport {
    fn from_checks(checks: Vec<IdentityCheck>) -> Self {
        let max_gap = checks.iter().map(|c| c.up_vs_next_down.max_pair_gap.max(c.hodge_vs_union.max_pair_gap)).fold(0.0, f64::max);
        let passed = checks.iter().all(IdentityCheck::passed);
        SpectralReport { checks, max_gap, passed }
    }
}

fn union(a: &Spectrum, b: &Spectrum) -> Vec<f64> {
    a.eigenvalues.iter().chain(&b.eigenvalues).copied().collect()
}

fn has_zero(s: &Spectrum) -> bool {
    s.zero_dim() > 0
}

/// Checks the three finite-scale spectral identities at each `k` in `ks`.
pub fn verify_spectrum_identities(wc: &WeightedComplex, ks: &[isize]) -> Result<SpectralReport> {
    let mut checks = Vec::new();
    for &k in ks {
        let up = operator_spectrum(&laplacian(wc, LaplacianFlavor::Up, k)?, wc, "up")?;
        let down = operator_spectrum(&laplacian(wc, LaplacianFlavor::Down, k)?, wc, "down")?;
        let next_down = operator_spectrum(&laplacian(wc, LaplacianFlavor::Down, k + 1)?, wc, "down")?;
        let hodge = operator_spectrum(&laplacian(wc, LaplacianFlavor::Hodge, k)?, wc, "hodge")?;
        checks.push(IdentityCheck {
            k,
            pairing: format!("up({k}) ~ down({})", k + 1),
            up_vs_next_down: compare_default(&up.eigenvalues, &next_down.eigenvalues),
            hodge_vs_union: compare_default(&hodge.eigenvalues, &union(&up, &down)),
            kernel_implication: !has_zero(&hodge) || (has_zero(&up) && has_zero(&down)),
        });
    }
    Ok(SpectralReport::from_checks(checks))
}

/// The same identities on a truncation, pairing conventions as the adjoint
/// structure dictates: Δ⁺_D(k) with Δ⁻_N(k+1), Δ⁺_N(k) with Δ⁻_D(k+1), and
/// Δ_Σ(k) with Δ⁺_N(k) ∪ Δ⁻_D(k).
pub fn verify_truncation_identities(t: &Truncation, ks: &[isize]) -> Result<SpectralReport> {
    use BoundaryCondition::*;
    let wc = t.ambient();
    let spec = |(idx, m): (Vec<Simplex>, DMatrix<f64>), name: String| dense_spectrum(&idx, &m, wc, name);
    let mut checks = Vec::new();
    for &k in ks {
        let up_d = spec(up_block(t, k, Dirichlet), "up_dirichlet".into())?;
        let down_n = spec(down_block(t, k + 1, Neumann), "down_neumann".into())?;
        let up_n = spec(up_block(t, k, Neumann), "up_neumann".into())?;
        let down_d_next = spec(down_block(t, k + 1, Dirichlet), "down_dirichlet".into())?;
        let down_d = spec(down_block(t, k, Dirichlet), "down_dirichlet".into())?;
        let (ui, um) = up_block(t, k, Neumann);
        let (_, dm) = down_block(t, k, Dirichlet);
        let sigma = spec((ui, um + dm), "sigma".into())?;
        let a = compare_default(&up_d.eigenvalues, &down_n.eigenvalues);
        let b = compare_default(&up_n.eigenvalues, &down_d_next.eigenvalues);
        let both = MatchReport {
            matched: a.matched && b.matched,
            max_pair_gap: a.max_pair_gap.max(b.max_pair_gap),
            kept: a.kept,
            zero_eps: a.zero_eps,
        };
        checks.push(IdentityCheck {
            k,
            pairing: format!("up_dirichlet({k}) ~ down_neumann({k1}); up_neumann({k}) ~ down_dirichlet({k1})", k1 = k + 1),
            up_vs_next_down: both,
            hodge_vs_union: compare_default(&sigma.eigenvalues, &union(&up_n, &down_d)),
            kernel_implication: !has_zero(&sigma) || (has_zero(&up_n) && has_zero(&down_d)),
        });
    }
    Ok(SpectralReport::from_checks(checks))
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalizingLevel {
    pub k: isize,
    pub bound: f64,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    /// max |diag(Δ⁺_k) − 1|, or `None` when some k-simplex has no coface.
    pub diagonal_deviation: Option<f64>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalizingReport {
    pub levels: Vec<NormalizingLevel>,
    pub passed: bool,
}

/// Spectral bound [0, k+2] for Δ⁺, Δ⁻, Δ^H and the unit diagonal of Δ⁺_k.
pub fn normalizing_bound_check(wc: &WeightedComplex) -> Result<NormalizingReport> {
    let mut levels = Vec::new();
    let mut passed = true;
    for k in wc.complex().dims() {
        let bound = (k + 2) as f64;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for flavor in [LaplacianFlavor::Up, LaplacianFlavor::Down, LaplacianFlavor::Hodge] {
            let sp = operator_spectrum(&laplacian(wc, flavor, k)?, wc, flavor.to_string())?;
            lo = lo.min(sp.min());
            hi = hi.max(sp.max());
        }
        let has_cofaces = wc.level(k).iter().all(|s| !wc.cofaces(s).is_empty());
        let (diagonal_deviation, note) = if has_cofaces {
            let up = laplacian(wc, LaplacianFlavor::Up, k)?.to_dense();
            let dev = (0..up.nrows()).map(|i| (up[(i, i)] - 1.0).abs()).fold(0.0, f64::max);
            (Some(dev), None)
        } else {
            (None, Some(format!("some {k}-simplex has no coface; diagonal check skipped")))
        };
        let ok = lo >= -1e-9 && hi <= bound + 1e-9 && diagonal_deviation.is_none_or(|d| d <= 1e-10);
        passed &= ok;
        levels.push(NormalizingLevel { k, bound, min_eigenvalue: lo, max_eigenvalue: hi, diagonal_deviation, note });
    }
    Ok(NormalizingReport { levels, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn wc(max: &[&[usize]], empty: bool) -> WeightedComplex {
        WeightedComplex::combinatorial(SimplicialComplex::from_maximal(max.iter().map(|v| Simplex::from(*v)), empty).unwrap())
    }

    #[test]
    fn small_eigenproblems() {
        let ev = eigenvalues(&DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0])).unwrap();
        assert!(ev[0].abs() < 1e-14 && (ev[1] - 2.0).abs() < 1e-14);
        let ev = eigenvalues(&DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, -1.0, 2.0]))).unwrap();
        assert_eq!(ev, vec![-1.0, 2.0, 3.0]);
        assert!(eigen_decomposition(&DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0])).is_err());
    }

    #[test]
    fn hollow_triangle_spectra() {
        let c = wc(&[&[0, 1], &[1, 2], &[0, 2]], false);
        let up = operator_spectrum(&laplacian(&c, LaplacianFlavor::Up, 0).unwrap(), &c, "up").unwrap();
        assert!(up.eigenvalues[0].abs() < 1e-12);
        assert!((up.eigenvalues[1] - 3.0).abs() < 1e-12 && (up.eigenvalues[2] - 3.0).abs() < 1e-12);
        let down = operator_spectrum(&laplacian(&c, LaplacianFlavor::Down, 1).unwrap(), &c, "down").unwrap();
        let r = compare_default(&up.eigenvalues, &down.eigenvalues);
        assert!(r.matched);
        assert_eq!(r.kept, (2, 2));
    }

    #[test]
    fn compare_is_symmetric_and_reflexive() {
        let a = [0.0, 1e-15, 2.0, 3.0];
        let b = [3.0, 2.0 + 1e-12];
        assert!(compare_default(&a, &a).matched);
        assert_eq!(compare_default(&a, &b).matched, compare_default(&b, &a).matched);
        assert!(!compare_default(&a, &[2.0]).matched);
    }

    #[test]
    fn betti_numbers_of_triangles() {
        let hollow = wc(&[&[0, 1], &[1, 2], &[0, 2]], false);
        assert_eq!(betti_checked(&hollow, 0).unwrap(), 1);
        assert_eq!(betti_checked(&hollow, 1).unwrap(), 1);
        let solid = wc(&[&[0, 1, 2]], false);
        assert_eq!((0..3).map(|k| betti_checked(&solid, k).unwrap()).collect::<Vec<_>>(), vec![1, 0, 0]);
        let reduced = wc(&[&[0, 1], &[1, 2], &[0, 2]], true);
        assert_eq!(betti_checked(&reduced, 0).unwrap(), 0);
        assert_eq!(betti_checked(&reduced, 1).unwrap(), 1);
        assert_eq!(betti_checked(&reduced, -1).unwrap(), 0);
    }

    #[test]
    fn cycle_is_harmonic_on_hollow_triangle() {
        let hollow = wc(&[&[0, 1], &[1, 2], &[0, 2]], false);
        // Oriented cycle 0→1→2→0 in lexicographic signs.
        let omega: GradedFunction =
            [([0, 1], 1.0), ([1, 2], 1.0), ([0, 2], -1.0)].into_iter().map(|(s, v)| (Simplex::from(s), v)).collect();
        let split = hodge_decompose(&hollow, &omega, 1).unwrap();
        assert!(split.exact.norm_sq(hollow.weights()) < 1e-20);
        assert!(split.coexact.norm_sq(hollow.weights()) < 1e-20);
        assert!(split.residual < 1e-12);
        let solid = wc(&[&[0, 1, 2]], false);
        let split = hodge_decompose(&solid, &omega, 1).unwrap();
        assert!(split.harmonic.norm_sq(solid.weights()) < 1e-20);
        assert!(split.residual < 1e-12);
    }
}
