//! Finite diagnostics for the uniqueness and boundedness criteria.
//!
//! Everything here is evaluated over what is materialized. A report on a
//! truncation says nothing about the infinite complex beyond "holds on sample".

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laplacian::laplacian;
use crate::laplacian::LaplacianFlavor;
use crate::local::{LocalComplex, PartialSum, Trend};
use crate::schrodinger::{forman_curvature, gamma_plus, schrodinger_data, Flavor};
use crate::simplex::Simplex;
use crate::spectral::operator_spectrum;
use crate::weighted::WeightedComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// A finite complex: the quantity is trivially bounded.
    Finite,
    /// Across a sequence of truncations the quantity keeps growing.
    UnboundedTrend,
    /// Across a sequence of truncations the quantity is stable.
    BoundedTrend,
    HypothesesHoldOnSample,
    UniformPositivityFails,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundednessReport {
    /// sup γ⁺/m.
    pub sup_gamma_over_m: f64,
    /// sup (dim+1)γ⁺/m.
    pub sup_dim_weighted: f64,
    /// 2·sup (dim+2)γ⁺/m, an upper bound for ‖Δ⁺‖.
    pub norm_bound: f64,
    pub argmax: Option<String>,
    /// Largest eigenvalue of Δ⁺ over all levels.
    pub lambda_max: Option<f64>,
    pub verdict: Verdict,
}

pub fn boundedness_report(wc: &WeightedComplex) -> Result<BoundednessReport> {
    let mut sup = 0.0_f64;
    let mut sup_dim = 0.0_f64;
    let mut sup_bound = 0.0_f64;
    let mut argmax = None;
    for tau in wc.complex().simplices() {
        let r = gamma_plus(wc, tau) / wc.m(tau);
        let k = tau.dim() as f64;
        if r > sup {
            sup = r;
            argmax = Some(tau.key());
        }
        sup_dim = sup_dim.max((k + 1.0) * r);
        sup_bound = sup_bound.max((k + 2.0) * r);
    }
    let mut lambda_max: f64 = 0.0;
    for k in wc.complex().dims() {
        if wc.level(k).is_empty() {
            continue;
        }
        let op = laplacian(wc, LaplacianFlavor::Up, k)?;
        lambda_max = lambda_max.max(operator_spectrum(&op, wc, "up")?.max());
    }
    Ok(BoundednessReport {
        sup_gamma_over_m: sup,
        sup_dim_weighted: sup_dim,
        norm_bound: 2.0 * sup_bound,
        argmax,
        lambda_max: Some(lambda_max),
        verdict: Verdict::Finite,
    })
}

/// Classifies a quantity sampled on growing truncations.
///
/// Growth means the last three samples increase, each by at least 10%.
pub fn sequence_trend(values: &[f64]) -> Verdict {
    let n = values.len();
    if n >= 3 && values[n - 3..].windows(2).all(|w| w[1] > 1.1 * w[0]) {
        Verdict::UnboundedTrend
    } else {
        Verdict::BoundedTrend
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureReport {
    /// inf c^H/m.
    pub inf_forman: f64,
    pub argmin_forman: Option<String>,
    pub inf_m: f64,
    pub argmin_m: Option<String>,
    pub verdict: Verdict,
}

pub fn curvature_criterion(wc: &WeightedComplex) -> CurvatureReport {
    let forman = forman_curvature(wc);
    let (mut inf_forman, mut argmin_forman) = (f64::INFINITY, None);
    for (s, &v) in &forman {
        if v < inf_forman {
            inf_forman = v;
            argmin_forman = Some(s.key());
        }
    }
    let (mut inf_m, mut argmin_m) = (f64::INFINITY, None);
    for (s, m) in wc.weights().iter() {
        if m < inf_m {
            inf_m = m;
            argmin_m = Some(s.key());
        }
    }
    CurvatureReport { inf_forman, argmin_forman, inf_m, argmin_m, verdict: Verdict::HypothesesHoldOnSample }
}

/// Uniform positivity of m across truncations: fails when inf m keeps shrinking.
pub fn curvature_trend(reports: &[CurvatureReport]) -> Verdict {
    let inv: Vec<f64> = reports.iter().map(|r| 1.0 / r.inf_m).collect();
    match sequence_trend(&inv) {
        Verdict::UnboundedTrend => Verdict::UniformPositivityFails,
        _ => Verdict::HypothesesHoldOnSample,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Up,
    Down,
    Hodge,
    /// Hop weight max(deg)^{-1/2} under unit weights.
    Degree,
}

impl From<Flavor> for MetricKind {
    fn from(f: Flavor) -> Self {
        match f {
            Flavor::Up => MetricKind::Up,
            Flavor::Down => MetricKind::Down,
            Flavor::Hodge => MetricKind::Hodge,
        }
    }
}

/// Edge weights of a path pseudo-metric on the vertices.
#[derive(Clone, Debug, Serialize)]
pub struct MetricWeights {
    pub flavor: MetricKind,
    /// Keyed by (x, x') with x < x'. `inf` when no simplex bounds the pair.
    pub edge_weights: BTreeMap<(usize, usize), f64>,
}

impl MetricWeights {
    pub fn weight(&self, x: usize, y: usize) -> Option<f64> {
        self.edge_weights.get(&(x.min(y), x.max(y))).copied()
    }

    fn adjacency(&self) -> BTreeMap<usize, Vec<(usize, f64)>> {
        let mut adj: BTreeMap<usize, Vec<(usize, f64)>> = BTreeMap::new();
        for (&(a, b), &w) in &self.edge_weights {
            adj.entry(a).or_default().push((b, w));
            adj.entry(b).or_default().push((a, w));
        }
        adj
    }
}

fn vertex_edges(wc: &WeightedComplex) -> Vec<(usize, usize)> {
    wc.level(1).iter().map(|e| (e.vertices()[0], e.vertices()[1])).collect()
}

fn single_flavor_weights(wc: &WeightedComplex, flavor: Flavor) -> BTreeMap<(usize, usize), f64> {
    let data = schrodinger_data(wc, flavor);
    let lambda = if flavor == Flavor::Down { 0.5 } else { 1.0 };
    // best(v) = inf over τ ∋ v of λ (row(τ)/m(τ))^{-1/2}; a zero row contributes +inf.
    let mut best: BTreeMap<usize, f64> = BTreeMap::new();
    for tau in wc.complex().simplices() {
        let row = data.row_sum(tau);
        let r = if row > 0.0 { lambda * (wc.m(tau) / row).sqrt() } else { f64::INFINITY };
        for &v in tau.vertices() {
            let e = best.entry(v).or_insert(f64::INFINITY);
            *e = e.min(r);
        }
    }
    vertex_edges(wc).into_iter().map(|(a, b)| ((a, b), best[&a].min(best[&b]))).collect()
}

/// w⁺ and w⁻ (λ₊ = 1, λ₋ = 1/2), or w^H = min(w⁺, w⁻)/√2.
pub fn metric_weights(wc: &WeightedComplex, flavor: Flavor) -> MetricWeights {
    let edge_weights = match flavor {
        Flavor::Hodge => {
            let up = single_flavor_weights(wc, Flavor::Up);
            let down = single_flavor_weights(wc, Flavor::Down);
            up.iter().map(|(k, &u)| (*k, u.min(down[k]) / std::f64::consts::SQRT_2)).collect()
        }
        f => single_flavor_weights(wc, f),
    };
    MetricWeights { flavor: flavor.into(), edge_weights }
}

fn degrees(wc: &WeightedComplex) -> BTreeMap<usize, usize> {
    let mut deg: BTreeMap<usize, usize> = wc.complex().vertices().into_iter().map(|v| (v, 0)).collect();
    for (a, b) in vertex_edges(wc) {
        *deg.get_mut(&a).expect("vertex") += 1;
        *deg.get_mut(&b).expect("vertex") += 1;
    }
    deg
}

/// Hop weights max(deg(x), deg(x'))^{-1/2}; the weights of `wc` are ignored.
pub fn degree_metric_weights(wc: &WeightedComplex) -> MetricWeights {
    let deg = degrees(wc);
    let edge_weights =
        vertex_edges(wc).into_iter().map(|(a, b)| ((a, b), (deg[&a].max(deg[&b]) as f64).powf(-0.5))).collect();
    MetricWeights { flavor: MetricKind::Degree, edge_weights }
}

#[derive(Clone, Copy, PartialEq)]
struct Label {
    dist: f64,
    vertex: usize,
}

impl Eq for Label {}

impl Ord for Label {
    // Min-heap on distance, then on vertex id.
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source shortest paths; unreachable vertices are absent.
pub fn distances_from(mw: &MetricWeights, source: usize) -> BTreeMap<usize, f64> {
    let adj = mw.adjacency();
    let mut dist: BTreeMap<usize, f64> = BTreeMap::new();
    let mut heap = BinaryHeap::from([Label { dist: 0.0, vertex: source }]);
    while let Some(Label { dist: d, vertex }) = heap.pop() {
        if dist.contains_key(&vertex) {
            continue;
        }
        dist.insert(vertex, d);
        for &(u, w) in adj.get(&vertex).map(Vec::as_slice).unwrap_or(&[]) {
            if !dist.contains_key(&u) && w.is_finite() {
                heap.push(Label { dist: d + w, vertex: u });
            }
        }
    }
    dist
}

/// d(v, v'), `inf` if disconnected.
pub fn path_metric(mw: &MetricWeights, v: usize, w: usize) -> f64 {
    distances_from(mw, v).get(&w).copied().unwrap_or(f64::INFINITY)
}

/// Degree path metric ρ(v, v').
pub fn degree_path_metric(wc: &WeightedComplex, v: usize, w: usize) -> f64 {
    path_metric(&degree_metric_weights(wc), v, w)
}

/// All-pairs distances for the vertices of a finite complex.
pub fn distance_table(mw: &MetricWeights, vertices: &[usize]) -> BTreeMap<usize, BTreeMap<usize, f64>> {
    vertices.iter().map(|&v| (v, distances_from(mw, v))).collect()
}

fn lookup(table: &BTreeMap<usize, BTreeMap<usize, f64>>, a: usize, b: usize) -> f64 {
    table.get(&a).and_then(|row| row.get(&b)).copied().unwrap_or(f64::INFINITY)
}

fn directed_hausdorff(d: &dyn Fn(usize, usize) -> f64, a: &Simplex, b: &Simplex) -> f64 {
    a.vertices()
        .iter()
        .map(|&v| b.vertices().iter().map(|&w| d(v, w)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// Hausdorff distance between the vertex sets of τ and τ'.
pub fn hausdorff_lift(mw: &MetricWeights, tau: &Simplex, tp: &Simplex) -> f64 {
    let verts: BTreeSet<usize> = tau.vertices().iter().chain(tp.vertices()).copied().collect();
    let table = distance_table(mw, &verts.into_iter().collect::<Vec<_>>());
    hausdorff_with(&|a, b| lookup(&table, a, b), tau, tp)
}

fn hausdorff_with(d: &dyn Fn(usize, usize) -> f64, tau: &Simplex, tp: &Simplex) -> f64 {
    if tau == tp {
        return 0.0;
    }
    if tau.is_empty() || tp.is_empty() {
        return f64::INFINITY;
    }
    directed_hausdorff(d, tau, tp).max(directed_hausdorff(d, tp, tau))
}

#[derive(Clone, Debug, Serialize)]
pub struct IntrinsicReport {
    pub flavor: Flavor,
    /// max over τ of (1/m(τ)) Σ_{τ'} b(τ,τ') d_h(τ,τ')².
    pub max_row_ratio: f64,
    pub argmax: Option<String>,
}

pub fn intrinsic_check(wc: &WeightedComplex, flavor: Flavor) -> IntrinsicReport {
    let mw = metric_weights(wc, flavor);
    let table = distance_table(&mw, &wc.complex().vertices());
    let d = |a: usize, b: usize| if a == b { 0.0 } else { lookup(&table, a, b) };
    let data = schrodinger_data(wc, flavor);
    let mut report = IntrinsicReport { flavor, max_row_ratio: 0.0, argmax: None };
    for tau in wc.complex().simplices() {
        let row: f64 = data
            .couplings(tau)
            .iter()
            .map(|x| {
                let h = hausdorff_with(&d, tau, &x.neighbor);
                x.b * h * h
            })
            .sum::<f64>()
            / wc.m(tau);
        if row > report.max_row_ratio {
            report.max_row_ratio = row;
            report.argmax = Some(tau.key());
        }
    }
    report
}

pub const DEFAULT_BALL_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeMetric {
    /// Every edge has length 1.
    Hop,
    Degree,
}

#[derive(Clone, Debug, Serialize)]
pub struct BallProbe {
    pub metric: ProbeMetric,
    pub root: usize,
    pub radius: f64,
    pub count: usize,
    pub expansions: usize,
    /// Some neighbourhood could not be listed, or the expansion budget ran out.
    pub budget_exceeded: bool,
}

fn vertex_neighbors<L: LocalComplex + ?Sized>(lc: &L, v: usize, budget: usize) -> (Vec<usize>, bool) {
    let cof = lc.cofaces(&Simplex::vertex(v), budget);
    let out = cof.simplices.iter().filter(|e| e.dim() == 1).filter_map(|e| e.vertices().iter().copied().find(|&u| u != v)).collect();
    (out, cof.complete)
}

/// Counts the vertices within `radius` of `root`, discovering the 1-skeleton lazily.
///
/// Evidence only: a finite count under a budget proves nothing about the full ball.
pub fn ball_probe<L: LocalComplex + ?Sized>(lc: &L, metric: ProbeMetric, root: usize, radius: f64, budget: usize) -> BallProbe {
    let mut exceeded = false;
    let mut degree_cache: BTreeMap<usize, usize> = BTreeMap::new();
    let mut degree = |v: usize, exceeded: &mut bool| -> usize {
        *degree_cache.entry(v).or_insert_with(|| {
            let (n, complete) = vertex_neighbors(lc, v, budget);
            *exceeded |= !complete;
            n.len()
        })
    };
    let mut settled: BTreeMap<usize, f64> = BTreeMap::new();
    let mut heap = BinaryHeap::from([Label { dist: 0.0, vertex: root }]);
    let mut expansions = 0;
    while let Some(Label { dist: d, vertex }) = heap.pop() {
        if settled.contains_key(&vertex) {
            continue;
        }
        if expansions >= budget {
            exceeded = true;
            break;
        }
        expansions += 1;
        settled.insert(vertex, d);
        let (nbrs, complete) = vertex_neighbors(lc, vertex, budget);
        exceeded |= !complete;
        for u in nbrs {
            if settled.contains_key(&u) {
                continue;
            }
            let w = match metric {
                ProbeMetric::Hop => 1.0,
                ProbeMetric::Degree => {
                    let a = degree(vertex, &mut exceeded);
                    let b = degree(u, &mut exceeded);
                    (a.max(b) as f64).powf(-0.5)
                }
            };
            if d + w <= radius {
                heap.push(Label { dist: d + w, vertex: u });
            }
        }
    }
    BallProbe { metric, root, radius, count: settled.len(), expansions, budget_exceeded: exceeded }
}

/// Partial sums of Σ_n m(τ_n) Π_{j<n} (1 + (c(τ_j) − αm(τ_j))/(γ(τ_j) − c(τ_j)))².
#[derive(Clone, Debug, Serialize)]
pub struct PathDiagnostic {
    pub flavor: Flavor,
    pub path: Vec<String>,
    pub alpha: f64,
    pub partial_sums: Vec<f64>,
    pub trend: Trend,
}

pub fn path_product_sums(wc: &WeightedComplex, flavor: Flavor, path: &[Simplex], alpha: f64) -> Result<PathDiagnostic> {
    for s in path {
        if !wc.complex().contains(s) {
            return Err(Error::NotInComplex(s.clone()));
        }
    }
    let data = schrodinger_data(wc, flavor);
    for w in path.windows(2) {
        if data.b(&w[0], &w[1]) <= 0.0 {
            return Err(Error::NotAdjacent(w[0].clone(), w[1].clone()));
        }
    }
    let mut terms = Vec::new();
    let mut product = 1.0;
    for (j, tau) in path.iter().enumerate().take(path.len().saturating_sub(1)) {
        let denom = data.gamma(tau) - data.c(tau);
        if denom <= 0.0 {
            return Err(Error::IsolatedPathElement(j));
        }
        let f = 1.0 + (data.c(tau) - alpha * wc.m(tau)) / denom;
        product *= f * f;
        terms.push(wc.m(&path[j + 1]) * product);
    }
    let sums = PartialSum::from_terms(terms, false);
    Ok(PathDiagnostic {
        flavor,
        path: path.iter().map(Simplex::key).collect(),
        alpha,
        trend: sums.trend(),
        partial_sums: sums.partial_sums,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::generators::{fan, FanFamily};

    fn wc(max: &[&[usize]], empty: bool) -> WeightedComplex {
        WeightedComplex::combinatorial(SimplicialComplex::from_maximal(max.iter().map(|v| Simplex::from(*v)), empty).unwrap())
    }

    #[test]
    fn hollow_triangle_bound() {
        let r = boundedness_report(&wc(&[&[0, 1], &[1, 2], &[0, 2]], false)).unwrap();
        assert_eq!(r.sup_gamma_over_m, 2.0);
        assert_eq!(r.norm_bound, 8.0);
        assert!((r.lambda_max.unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn single_vertex_is_trivial() {
        let r = boundedness_report(&wc(&[&[0]], false)).unwrap();
        assert_eq!(r.norm_bound, 0.0);
        assert_eq!(r.lambda_max, Some(0.0));
    }

    #[test]
    fn fan_bound_grows() {
        let sups: Vec<f64> = (2..6).map(|n| boundedness_report(&fan(n).unwrap().complex).unwrap().sup_gamma_over_m).collect();
        assert_eq!(sequence_trend(&sups), Verdict::UnboundedTrend);
        let reps: Vec<_> = (2..6).map(|n| curvature_criterion(&fan(n).unwrap().complex)).collect();
        assert_eq!(curvature_trend(&reps), Verdict::UniformPositivityFails);
    }

    #[test]
    fn metric_examples() {
        let edge = wc(&[&[0, 1]], false);
        assert_eq!(metric_weights(&edge, Flavor::Up).weight(0, 1), Some(1.0));
        let solid = wc(&[&[0, 1, 2]], false);
        let w = metric_weights(&solid, Flavor::Up);
        assert!((w.weight(0, 1).unwrap() - 0.5_f64.sqrt()).abs() < 1e-15);
        let up = metric_weights(&solid, Flavor::Up);
        let down = metric_weights(&solid, Flavor::Down);
        let h = metric_weights(&solid, Flavor::Hodge);
        for (k, &x) in &h.edge_weights {
            assert_eq!(x, up.edge_weights[k].min(down.edge_weights[k]) / std::f64::consts::SQRT_2);
        }
        let tri = path_metric(&w, 0, 1);
        assert!(tri <= w.weight(0, 1).unwrap());
    }

    #[test]
    fn degree_metric_on_path() {
        let p = wc(&[&[0, 1], &[1, 2]], false);
        assert!((degree_path_metric(&p, 0, 2) - 2.0_f64.sqrt()).abs() < 1e-15);
        assert_eq!(degree_path_metric(&wc(&[&[0, 1]], false), 0, 1), 1.0);
        assert_eq!(degree_path_metric(&wc(&[&[0, 1], &[2, 3]], false), 0, 3), f64::INFINITY);
    }

    #[test]
    fn intrinsic_on_solid_triangle() {
        let solid = wc(&[&[0, 1, 2]], false);
        for f in Flavor::ALL {
            assert!(intrinsic_check(&solid, f).max_row_ratio <= 1.0 + 1e-12);
        }
        let w = metric_weights(&solid, Flavor::Down);
        let t = Simplex::from([0, 1]);
        assert_eq!(hausdorff_lift(&w, &t, &t), 0.0);
    }

    #[test]
    fn fan_ball_is_flagged() {
        let small = ball_probe(&FanFamily, ProbeMetric::Degree, 0, 1.0, 100);
        let big = ball_probe(&FanFamily, ProbeMetric::Degree, 0, 1.0, 1000);
        assert!(small.budget_exceeded && big.budget_exceeded);
        assert!(big.count > small.count);
        let finite = wc(&[&[0, 1], &[1, 2]], false);
        let b = ball_probe(&finite, ProbeMetric::Hop, 0, 1.0, DEFAULT_BALL_BUDGET);
        assert_eq!(b.count, 2);
        assert!(!b.budget_exceeded);
    }

    #[test]
    fn path_products() {
        let f = fan(8).unwrap().complex;
        let path: Vec<Simplex> = (1..=6).map(FanFamily::spoke).collect();
        let d = path_product_sums(&f, Flavor::Up, &path, 0.0).unwrap();
        assert_eq!(d.partial_sums.len(), 5);
        assert!(d.partial_sums.windows(2).all(|w| w[1] >= w[0]));
        let bad = [FanFamily::spoke(1), FanFamily::spoke(3)];
        assert!(matches!(path_product_sums(&f, Flavor::Up, &bad, 0.0), Err(Error::NotAdjacent(..))));
    }
}
