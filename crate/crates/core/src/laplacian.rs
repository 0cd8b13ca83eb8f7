//! Up, down and Hodge Laplacians on finite complexes and on truncations.
//!
//! A [`Truncation`] splits a materialized ambient complex into an inner
//! subcomplex `I` and a halo `H` (ambient cofaces of inner simplices that are
//! not inner). With `N_k = I_k ∪ H_k`:
//!
//! | operator | index set | built from |
//! |---|---|---|
//! | Δ⁺ Dirichlet | `I_k` | δ : `I_k → N_{k+1}` and its adjoint |
//! | Δ⁺ Neumann | `I_k` | δ : `I_k → I_{k+1}` and its adjoint |
//! | Δ⁻ Dirichlet | `I_k` | δ : `I_{k−1} → I_k` and its adjoint |
//! | Δ⁻ Neumann | `N_k` | δ : `I_{k−1} → N_k` and its adjoint |
//!
//! so that Δ⁺_{D,k} and Δ⁻_{N,k+1} are `T*T` and `TT*` of the same map.
//! Up parts placed on `N_k` are zero on halo rows.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{gauss_bonnet, Convention, Grading, LevelOperator};
use crate::schrodinger::{h_matrix, schrodinger_data, Flavor};
use crate::simplex::Simplex;
use crate::weighted::WeightedComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LaplacianFlavor {
    Up,
    Down,
    Hodge,
    GaussBonnet,
    /// Δ⁺_N + Δ⁻_D.
    Sigma,
    /// Δ⁺_D + Δ⁻_N.
    SigmaPrime,
}

impl fmt::Display for LaplacianFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LaplacianFlavor::Up => "up",
            LaplacianFlavor::Down => "down",
            LaplacianFlavor::Hodge => "hodge",
            LaplacianFlavor::GaussBonnet => "gb",
            LaplacianFlavor::Sigma => "sigma",
            LaplacianFlavor::SigmaPrime => "sigma_prime",
        })
    }
}

impl FromStr for LaplacianFlavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "up" => LaplacianFlavor::Up,
            "down" => LaplacianFlavor::Down,
            "hodge" => LaplacianFlavor::Hodge,
            "gb" | "gauss_bonnet" => LaplacianFlavor::GaussBonnet,
            "sigma" => LaplacianFlavor::Sigma,
            "sigma_prime" => LaplacianFlavor::SigmaPrime,
            _ => return Err(Error::Document { key: "flavor".into(), reason: format!("unknown flavor `{s}`") }),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCondition {
    Intrinsic,
    Dirichlet,
    Neumann,
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryCondition::Intrinsic => "intrinsic",
            BoundaryCondition::Dirichlet => "dirichlet",
            BoundaryCondition::Neumann => "neumann",
        })
    }
}

impl FromStr for BoundaryCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "intrinsic" => BoundaryCondition::Intrinsic,
            "dirichlet" => BoundaryCondition::Dirichlet,
            "neumann" => BoundaryCondition::Neumann,
            _ => return Err(Error::Document { key: "bc".into(), reason: format!("unknown boundary condition `{s}`") }),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaplacianSpec {
    pub flavor: LaplacianFlavor,
    pub bc: BoundaryCondition,
    pub dim: Option<isize>,
}

impl LaplacianSpec {
    pub fn new(flavor: LaplacianFlavor, bc: BoundaryCondition, dim: Option<isize>) -> Self {
        LaplacianSpec { flavor, bc, dim }
    }

    pub fn intrinsic(flavor: LaplacianFlavor, k: isize) -> Self {
        Self::new(flavor, BoundaryCondition::Intrinsic, Some(k))
    }
}

/// An inner subcomplex of a materialized ambient complex, plus its halo.
#[derive(Clone, Debug)]
pub struct Truncation {
    ambient: WeightedComplex,
    inner: BTreeSet<Simplex>,
    halo: BTreeSet<Simplex>,
    pub radius: Option<usize>,
    pub root: Option<usize>,
}

impl Truncation {
    /// The whole complex as its own inner set; the halo is empty.
    pub fn whole(wc: &WeightedComplex) -> Self {
        Truncation {
            ambient: wc.clone(),
            inner: wc.complex().simplices().cloned().collect(),
            halo: BTreeSet::new(),
            radius: None,
            root: None,
        }
    }

    /// Inner set = simplices selected by `keep`, closed downward.
    pub fn from_inner(ambient: &WeightedComplex, keep: impl Fn(&Simplex) -> bool) -> Result<Self> {
        let mut inner = BTreeSet::new();
        let mut stack: Vec<Simplex> = ambient.complex().simplices().filter(|s| keep(s)).cloned().collect();
        while let Some(s) = stack.pop() {
            if inner.insert(s.clone()) {
                stack.extend(ambient.faces(&s).into_iter().cloned());
            }
        }
        if inner.iter().all(|s| s.is_empty()) {
            return Err(Error::EmptyTruncation);
        }
        let halo = ambient
            .complex()
            .simplices()
            .filter(|s| !inner.contains(*s) && ambient.faces(s).iter().any(|f| inner.contains(*f)))
            .cloned()
            .collect();
        Ok(Truncation { ambient: ambient.clone(), inner, halo, radius: None, root: None })
    }

    /// Simplices whose vertices all lie within 1-skeleton distance `radius` of `root`.
    pub fn ball(ambient: &WeightedComplex, root: usize, radius: usize) -> Result<Self> {
        let dist = graph_distances(ambient, root);
        if dist.is_empty() {
            return Err(Error::EmptyTruncation);
        }
        let within = |s: &Simplex| s.vertices().iter().all(|v| dist.get(v).is_some_and(|&d| d <= radius));
        let mut t = Self::from_inner(ambient, |s| !s.is_empty() && within(s))?;
        if ambient.complex().includes_empty() {
            t.inner.insert(Simplex::empty());
            t.halo.remove(&Simplex::empty());
        }
        t.radius = Some(radius);
        t.root = Some(root);
        Ok(t)
    }

    pub fn ambient(&self) -> &WeightedComplex {
        &self.ambient
    }

    pub fn inner(&self) -> &BTreeSet<Simplex> {
        &self.inner
    }

    pub fn halo(&self) -> &BTreeSet<Simplex> {
        &self.halo
    }

    pub fn is_whole(&self) -> bool {
        self.halo.is_empty() && self.inner.len() == self.ambient.complex().len()
    }

    /// The inner subcomplex with the ambient weights and signs.
    pub fn inner_complex(&self) -> Result<WeightedComplex> {
        self.ambient.subcomplex(|s| self.inner.contains(s))
    }

    /// `I_k`.
    pub fn inner_level(&self, k: isize) -> Vec<Simplex> {
        self.ambient.level(k).iter().filter(|s| self.inner.contains(*s)).cloned().collect()
    }

    /// `N_k = I_k ∪ H_k`, in ambient order.
    pub fn extended_level(&self, k: isize) -> Vec<Simplex> {
        self.ambient.level(k).iter().filter(|s| self.inner.contains(*s) || self.halo.contains(*s)).cloned().collect()
    }

    /// Dimensions that carry inner simplices.
    pub fn dims(&self) -> Vec<isize> {
        let mut d: Vec<isize> = self.inner.iter().map(|s| s.dim()).collect::<BTreeSet<_>>().into_iter().collect();
        d.sort_unstable();
        d
    }
}

/// Breadth-first hop counts on the 1-skeleton.
pub fn graph_distances(wc: &WeightedComplex, root: usize) -> HashMap<usize, usize> {
    let mut dist = HashMap::new();
    let root_s = Simplex::vertex(root);
    if !wc.complex().contains(&root_s) {
        return dist;
    }
    dist.insert(root, 0);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for e in wc.cofaces(&Simplex::vertex(v)) {
            for &u in e.vertices() {
                if let std::collections::hash_map::Entry::Vacant(slot) = dist.entry(u) {
                    slot.insert(d + 1);
                    queue.push_back(u);
                }
            }
        }
    }
    dist
}

fn weight_vec(wc: &WeightedComplex, set: &[Simplex]) -> DVector<f64> {
    DVector::from_iterator(set.len(), set.iter().map(|s| wc.m(s)))
}

/// Coboundary block with rows `rows` (dimension k+1) and columns `cols` (dimension k).
pub(crate) fn coboundary_block(wc: &WeightedComplex, rows: &[Simplex], cols: &[Simplex]) -> DMatrix<f64> {
    let pos: HashMap<&Simplex, usize> = cols.iter().enumerate().map(|(j, s)| (s, j)).collect();
    let mut d = DMatrix::zeros(rows.len(), cols.len());
    for (i, sigma) in rows.iter().enumerate() {
        for tau in wc.faces(sigma) {
            if let Some(&j) = pos.get(tau) {
                d[(i, j)] = wc.theta(tau, sigma);
            }
        }
    }
    d
}

/// Weighted adjoint `M_cols⁻¹ Dᵀ M_rows` of a coboundary block.
pub(crate) fn adjoint_block(wc: &WeightedComplex, d: &DMatrix<f64>, rows: &[Simplex], cols: &[Simplex]) -> DMatrix<f64> {
    let mr = weight_vec(wc, rows);
    let mc = weight_vec(wc, cols);
    let mut b = d.transpose();
    for i in 0..b.nrows() {
        for j in 0..b.ncols() {
            b[(i, j)] *= mr[j] / mc[i];
        }
    }
    b
}

/// `T*T` on `cols` and `TT*` on `rows` for `T = δ : cols → rows`.
fn up_down_pair(wc: &WeightedComplex, rows: &[Simplex], cols: &[Simplex]) -> (DMatrix<f64>, DMatrix<f64>) {
    let d = coboundary_block(wc, rows, cols);
    let b = adjoint_block(wc, &d, rows, cols);
    (&b * &d, &d * &b)
}

fn zero_extend(m: &DMatrix<f64>, from: &[Simplex], to: &[Simplex]) -> DMatrix<f64> {
    let pos: HashMap<&Simplex, usize> = to.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let idx: Vec<usize> = from.iter().map(|s| pos[s]).collect();
    let mut out = DMatrix::zeros(to.len(), to.len());
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            out[(i, j)] = m[(a, b)];
        }
    }
    out
}

fn convention(bc: BoundaryCondition) -> Convention {
    match bc {
        BoundaryCondition::Intrinsic => Convention::Formal,
        BoundaryCondition::Dirichlet => Convention::Dirichlet,
        BoundaryCondition::Neumann => Convention::Neumann,
    }
}

/// Δ⁺ at level k under `bc`, indexed by `I_k`.
pub fn up_block(t: &Truncation, k: isize, bc: BoundaryCondition) -> (Vec<Simplex>, DMatrix<f64>) {
    let cols = t.inner_level(k);
    let rows = match bc {
        BoundaryCondition::Dirichlet => t.extended_level(k + 1),
        _ => t.inner_level(k + 1),
    };
    let (up, _) = up_down_pair(&t.ambient, &rows, &cols);
    (cols, up)
}

/// Δ⁻ at level k under `bc`: on `I_k` (Dirichlet) or `N_k` (Neumann).
pub fn down_block(t: &Truncation, k: isize, bc: BoundaryCondition) -> (Vec<Simplex>, DMatrix<f64>) {
    let cols = t.inner_level(k - 1);
    let rows = match bc {
        BoundaryCondition::Neumann => t.extended_level(k),
        _ => t.inner_level(k),
    };
    let (_, down) = up_down_pair(&t.ambient, &rows, &cols);
    (rows, down)
}

fn level_block(t: &Truncation, flavor: LaplacianFlavor, bc: BoundaryCondition, k: isize) -> Result<(Vec<Simplex>, DMatrix<f64>)> {
    use BoundaryCondition::*;
    use LaplacianFlavor::*;
    let (up_bc, down_bc) = match (flavor, bc) {
        (Sigma, _) => (Neumann, Dirichlet),
        (SigmaPrime, _) => (Dirichlet, Neumann),
        _ => (bc, bc),
    };
    Ok(match flavor {
        Up => up_block(t, k, bc),
        Down => down_block(t, k, bc),
        Hodge | Sigma | SigmaPrime => {
            let (ui, um) = up_block(t, k, up_bc);
            let (di, dm) = down_block(t, k, down_bc);
            if ui == di {
                (ui, um + dm)
            } else {
                let um = zero_extend(&um, &ui, &di);
                (di, um + dm)
            }
        }
        GaussBonnet => return Err(Error::Unsupported("gauss_bonnet is a mixed-grading operator".into())),
    })
}

/// Assembles the requested Laplacian as an m-symmetric operator.
pub fn assemble(t: &Truncation, spec: &LaplacianSpec) -> Result<LevelOperator> {
    let whole = t.is_whole();
    match (spec.flavor, spec.bc, whole) {
        (LaplacianFlavor::Sigma | LaplacianFlavor::SigmaPrime, _, true) => {
            return Err(Error::NeedsTruncation(if spec.flavor == LaplacianFlavor::Sigma { "sigma" } else { "sigma_prime" }))
        }
        (_, BoundaryCondition::Intrinsic, false) => {
            return Err(Error::Unsupported("intrinsic boundary condition on a truncation; pick dirichlet or neumann".into()))
        }
        _ => {}
    }
    let conv = convention(spec.bc);
    if spec.flavor == LaplacianFlavor::GaussBonnet {
        let wc = match spec.bc {
            BoundaryCondition::Dirichlet if !whole => {
                return Err(Error::Unsupported("gauss_bonnet is assembled for intrinsic or neumann only".into()))
            }
            _ if whole => t.ambient.clone(),
            _ => t.inner_complex()?,
        };
        let mut op = gauss_bonnet(&wc);
        op.convention = conv;
        if let Some(k) = spec.dim {
            let keep: Vec<Simplex> = op.rows.iter().filter(|s| s.dim() == k || s.dim() == k + 1).cloned().collect();
            let dense = restrict_square(&op, &keep);
            return Ok(LevelOperator::from_dense(keep.clone(), keep, &dense, Grading::Mixed, Grading::Mixed, conv));
        }
        return Ok(op);
    }
    match spec.dim {
        Some(k) => {
            let (idx, m) = level_block(t, spec.flavor, spec.bc, k)?;
            Ok(LevelOperator::from_dense(idx.clone(), idx, &m, Grading::Level(k), Grading::Level(k), conv))
        }
        None => {
            let mut blocks = Vec::new();
            let lo = t.dims().first().copied().unwrap_or(0);
            let hi = t.ambient.dim();
            for k in lo..=hi {
                blocks.push(level_block(t, spec.flavor, spec.bc, k)?);
            }
            let idx: Vec<Simplex> = blocks.iter().flat_map(|b| b.0.iter().cloned()).collect();
            let mut m = DMatrix::zeros(idx.len(), idx.len());
            let mut off = 0;
            for (i, b) in &blocks {
                m.view_mut((off, off), (i.len(), i.len())).copy_from(b);
                off += i.len();
            }
            Ok(LevelOperator::from_dense(idx.clone(), idx, &m, Grading::Mixed, Grading::Mixed, conv))
        }
    }
}

fn restrict_square(op: &LevelOperator, keep: &[Simplex]) -> DMatrix<f64> {
    let full = op.to_dense();
    let idx: Vec<usize> = keep.iter().map(|s| op.rows.iter().position(|r| r == s).expect("row")).collect();
    DMatrix::from_fn(idx.len(), idx.len(), |i, j| full[(idx[i], idx[j])])
}

/// Intrinsic Laplacian of a finite complex at level `k`.
pub fn laplacian(wc: &WeightedComplex, flavor: LaplacianFlavor, k: isize) -> Result<LevelOperator> {
    assemble(&Truncation::whole(wc), &LaplacianSpec::intrinsic(flavor, k))
}

/// S = M^{1/2} A M^{−1/2}; rejects operators that are not m-symmetric.
pub fn symmetrize_to_euclidean(op: &LevelOperator, wc: &WeightedComplex) -> Result<DMatrix<f64>> {
    if op.rows != op.cols {
        return Err(Error::Unsupported("symmetrization needs a square operator on one index set".into()));
    }
    let a = op.to_dense();
    let sq: Vec<f64> = op.rows.iter().map(|s| wc.m(s).sqrt()).collect();
    let s = DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| sq[i] * a[(i, j)] / sq[j]);
    let asym = (&s - s.transpose()).norm();
    let scale = s.norm().max(f64::MIN_POSITIVE);
    if asym > 1e-12 * scale {
        return Err(Error::NotSymmetric(asym / scale));
    }
    Ok((&s + s.transpose()) * 0.5)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct GaussBonnetReport {
    /// ‖(δ+∂)² − H^H‖ with H^H built from the Schrödinger data.
    pub vs_hodge: f64,
    /// ‖(δ+∂)² − (Δ⁺ + Δ⁻)‖.
    pub vs_sum: f64,
}

pub fn gauss_bonnet_square_check(wc: &WeightedComplex) -> GaussBonnetReport {
    let g = gauss_bonnet(wc).to_dense();
    let g2 = &g * &g;
    let hh = h_matrix(&schrodinger_data(wc, Flavor::Hodge), wc).to_dense();
    let d = crate::operators::coboundary_global(wc).to_dense();
    let b = crate::operators::boundary_global(wc).to_dense();
    let sum = &b * &d + &d * &b;
    GaussBonnetReport { vs_hodge: (&g2 - hh).norm(), vs_sum: (&g2 - sum).norm() }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct FactorizationReport {
    /// ‖Δ⁺Δ⁻‖ and ‖Δ⁻Δ⁺‖.
    pub up_down: f64,
    pub down_up: f64,
    /// Max over λ of ‖(Δ⁺+Δ⁻−λ) + λ⁻¹(Δ⁺−λ)(Δ⁻−λ)‖ / (1 + ‖Δ⁺‖‖Δ⁻‖ + λ²).
    pub identity_residual: f64,
    pub lambdas: Vec<f64>,
}

/// Checks the product identities for Δ⁺ and Δ⁻ on the same index set.
pub fn factorization_check(up: &DMatrix<f64>, down: &DMatrix<f64>, seed: u64) -> FactorizationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lambdas = vec![-1.0, 0.5, 2.0];
    for _ in 0..3 {
        lambdas.push(rng.gen_range(0.0..10.0_f64).max(1e-3));
    }
    let n = up.nrows();
    let id = DMatrix::<f64>::identity(n, n);
    let scale = up.norm() * down.norm();
    let mut r = FactorizationReport {
        up_down: (up * down).norm(),
        down_up: (down * up).norm(),
        identity_residual: 0.0,
        lambdas: lambdas.clone(),
    };
    for &l in &lambdas {
        let lhs = up + down - &id * l;
        let rhs = -(up - &id * l) * (down - &id * l) / l;
        r.identity_residual = r.identity_residual.max((lhs - rhs).norm() / (1.0 + scale + l * l));
    }
    r
}
