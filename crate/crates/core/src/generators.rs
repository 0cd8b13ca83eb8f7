//! Built-in complexes and weight schemes.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::function::GradedFunction;
use crate::laplacian::Truncation;
use crate::local::{boundary_at, coboundary_at, Cofaces, LocalComplex, PartialSum};
use crate::orientation::OrientationAssignment;
use crate::simplex::Simplex;
use crate::weighted::WeightedComplex;
use crate::weights::{WeightAssignment, WeightScheme};

/// The infinite fan: triangles τ_n = {0, n, n+1} for n ≥ 1, no empty simplex.
///
/// Weights: m({n}) = 1, m({0,n}) = 1/n², m({n,n+1}) = n², m(τ_n) = n².
/// Signs: θ({a},{a,b}) = +1 and θ({b},{a,b}) = −1 for a < b;
/// θ({0,n},τ_n) = θ({n,n+1},τ_n) = +1 and θ({0,n+1},τ_n) = −1.
#[derive(Clone, Copy, Debug, Default)]
pub struct FanFamily;

fn sq(n: usize) -> f64 {
    (n * n) as f64
}

impl FanFamily {
    pub fn contains(&self, s: &Simplex) -> bool {
        match s.vertices() {
            [_] => true,
            [0, n] => *n >= 1,
            [a, b] => *a >= 1 && *b == a + 1,
            [0, n, m] => *n >= 1 && *m == n + 1,
            _ => false,
        }
    }

    /// τ_n.
    pub fn triangle(n: usize) -> Simplex {
        Simplex::from([0, n, n + 1])
    }

    /// ρ_n = {0, n}.
    pub fn spoke(n: usize) -> Simplex {
        Simplex::from([0, n])
    }

    /// ω₀ = 1_{0} + Σ_n n⁻² 1_{τ_n}.
    pub fn omega0(&self, s: &Simplex) -> f64 {
        match s.vertices() {
            [0] => 1.0,
            [0, n, m] if *m == n + 1 => 1.0 / sq(*n),
            _ => 0.0,
        }
    }

    /// ∂∂ω₀ at vertex 0, evaluated locally over the spokes ρ_1 … ρ_budget.
    pub fn dd_omega0_at_root(&self, budget: usize) -> PartialSum {
        let inner = |rho: &Simplex| boundary_at(self, &|s: &Simplex| self.omega0(s), rho, usize::MAX).value;
        boundary_at(self, &inner, &Simplex::vertex(0), budget)
    }

    /// ⟨δω₀, ∂ω₀⟩_m summed over the simplices of `fan(n)`, each value evaluated
    /// in the infinite family.
    pub fn omega0_cross_term(&self, n: usize) -> f64 {
        let f = |s: &Simplex| self.omega0(s);
        fan_closure(n)
            .iter()
            .map(|s| {
                let d = coboundary_at(self, &f, s);
                let b = boundary_at(self, &f, s, n + 2).value;
                self.weight(s) * d * b
            })
            .sum()
    }
}

impl LocalComplex for FanFamily {
    fn weight(&self, s: &Simplex) -> f64 {
        match s.vertices() {
            [_] => 1.0,
            [0, n] => 1.0 / sq(*n),
            [a, _] => sq(*a),
            [0, n, _] => sq(*n),
            _ => panic!("{s} is not in the fan"),
        }
    }

    fn theta(&self, face: &Simplex, coface: &Simplex) -> f64 {
        if !face.is_face_of(coface) || !self.contains(coface) {
            return 0.0;
        }
        match (face.vertices(), coface.vertices()) {
            ([v], [a, _]) => {
                if v == a {
                    1.0
                } else {
                    -1.0
                }
            }
            ([0, x], [0, n, _]) => {
                if x == n {
                    1.0
                } else {
                    -1.0
                }
            }
            (_, [0, _, _]) => 1.0,
            _ => 0.0,
        }
    }

    fn faces(&self, s: &Simplex) -> Vec<Simplex> {
        if s.dim() <= 0 {
            return Vec::new();
        }
        s.boundary_faces()
    }

    fn cofaces(&self, s: &Simplex, budget: usize) -> Cofaces {
        let mut out = match s.vertices() {
            [0] => {
                return Cofaces { simplices: (1..=budget.min(1 << 24)).map(Self::spoke).collect(), complete: false };
            }
            [n] => {
                let mut v = vec![Self::spoke(*n)];
                if *n >= 2 {
                    v.push(Simplex::from([n - 1, *n]));
                }
                v.push(Simplex::from([*n, n + 1]));
                v
            }
            [0, n] => {
                let mut v = Vec::new();
                if *n >= 2 {
                    v.push(Self::triangle(n - 1));
                }
                v.push(Self::triangle(*n));
                v
            }
            [a, b] if *a >= 1 && *b == a + 1 => vec![Self::triangle(*a)],
            _ => Vec::new(),
        };
        out.sort();
        let complete = out.len() <= budget;
        out.truncate(budget);
        Cofaces { simplices: out, complete }
    }
}

fn fan_closure(n: usize) -> Vec<Simplex> {
    let set: BTreeSet<Simplex> =
        (1..=n).flat_map(|i| { let t = FanFamily::triangle(i); let mut v = t.boundary_faces(); v.extend(t.boundary_faces().iter().flat_map(|e| e.boundary_faces())); v.push(t); v }).collect();
    let mut out: Vec<Simplex> = set.into_iter().collect();
    out.sort_by(|a, b| (a.dim(), a).cmp(&(b.dim(), b)));
    out
}

/// A finite piece of the fan.
#[derive(Clone, Debug)]
pub struct FanInstance {
    pub n: usize,
    pub complex: WeightedComplex,
    /// ω₀ restricted to the materialized simplices.
    pub omega0: GradedFunction,
}

/// Closure of τ_1 … τ_N with the family's weights and signs.
pub fn fan(n: usize) -> Result<FanInstance> {
    if n == 0 {
        return Err(Error::Unsupported("fan needs N ≥ 1".into()));
    }
    let family = FanFamily;
    let c = SimplicialComplex::from_maximal((1..=n).map(FanFamily::triangle), false)?;
    let weights = c.simplices().map(|s| (s.clone(), family.weight(s))).collect();
    let weights = WeightAssignment::new(&c, weights, WeightScheme::Explicit)?;
    let mut signs = BTreeMap::new();
    for sigma in c.simplices() {
        for tau in c.faces(sigma)? {
            signs.insert((tau.clone(), sigma.clone()), family.theta(tau, sigma) as i8);
        }
    }
    let omega0 = c.simplices().map(|s| (s.clone(), family.omega0(s))).collect();
    let complex = WeightedComplex::new(c, weights, OrientationAssignment::Explicit(signs))?;
    Ok(FanInstance { n, complex, omega0 })
}

/// Inner = closure of τ_1 … τ_R inside the ambient fan(R+1). The halo is
/// {0,R+2}, {R+1,R+2} and τ_{R+1}.
pub fn fan_truncation(radius: usize) -> Result<Truncation> {
    if radius == 0 {
        return Err(Error::EmptyTruncation);
    }
    let ambient = fan(radius + 1)?.complex;
    let mut t = Truncation::from_inner(&ambient, |s| s.vertices().iter().all(|&v| v <= radius + 1))?;
    t.radius = Some(radius);
    t.root = Some(0);
    Ok(t)
}

/// All cliques of the graph with at most `max_dim + 1` vertices.
pub fn clique_complex(n_vertices: usize, edges: &[(usize, usize)], max_dim: usize, include_empty: bool) -> Result<SimplicialComplex> {
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = (0..n_vertices).map(|v| (v, BTreeSet::new())).collect();
    for &(a, b) in edges {
        if a == b {
            return Err(Error::InvalidSimplex(format!("self-loop at {a}")));
        }
        adj.entry(a).or_default().insert(b);
        adj.entry(b).or_default().insert(a);
    }
    let mut all: BTreeSet<Simplex> = BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> = adj.keys().map(|&v| vec![v]).collect();
    while let Some(clique) = frontier.pop() {
        let last = *clique.last().expect("non-empty");
        if clique.len() <= max_dim {
            for &u in adj[&last].range(last + 1..) {
                if clique.iter().all(|v| adj[v].contains(&u)) {
                    let mut next = clique.clone();
                    next.push(u);
                    frontier.push(next);
                }
            }
        }
        all.insert(Simplex::from_sorted(clique));
    }
    if all.is_empty() {
        return Err(Error::EmptyComplex);
    }
    if include_empty {
        all.insert(Simplex::empty());
    }
    Ok(SimplicialComplex::from_closed_set(all, include_empty))
}

/// Clique complex of a G(n, p) graph; deterministic in `seed`.
pub fn random_complex(n_vertices: usize, edge_prob: f64, max_dim: usize, seed: u64, include_empty: bool) -> Result<SimplicialComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n_vertices {
        for b in a + 1..n_vertices {
            if rng.gen_bool(edge_prob.clamp(0.0, 1.0)) {
                edges.push((a, b));
            }
        }
    }
    clique_complex(n_vertices, &edges, max_dim, include_empty)
}

/// Closure of the full simplex on `dim + 1` vertices.
pub fn simplex_closure(dim: usize, include_empty: bool) -> Result<SimplicialComplex> {
    SimplicialComplex::from_maximal([Simplex::from_sorted((0..=dim).collect())], include_empty)
}

/// The hollow `n`-gon.
pub fn cycle(n: usize, include_empty: bool) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(Error::Unsupported("a cycle needs at least 3 vertices".into()));
    }
    SimplicialComplex::from_maximal((0..n).map(|i| Simplex::new(vec![i, (i + 1) % n]).expect("distinct")), include_empty)
}

/// m⁺(τ) = Σ_{σ≻τ} m⁺(σ), starting from `top` on the maximal simplices (unit when `None`).
pub fn normalizing_weights(c: &SimplicialComplex, top: Option<&BTreeMap<Simplex, f64>>) -> Result<WeightAssignment> {
    let mut w: BTreeMap<Simplex, f64> = BTreeMap::new();
    if let Some(top) = top {
        for s in top.keys() {
            if !c.contains(s) {
                return Err(Error::UnknownWeight(s.clone()));
            }
            if !c.is_maximal(s) {
                return Err(Error::InvalidSimplex(format!("{s} is not maximal")));
            }
        }
    }
    for k in (-1..=c.dim()).rev() {
        for s in c.level(k) {
            let cof = c.cofaces(s)?;
            let m = if cof.is_empty() {
                match top {
                    None => 1.0,
                    Some(t) => *t.get(s).ok_or_else(|| Error::MissingWeight(s.clone()))?,
                }
            } else {
                cof.iter().map(|x| w[*x]).sum()
            };
            w.insert(s.clone(), m);
        }
    }
    WeightAssignment::new(c, w, WeightScheme::Normalizing)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Root {
    /// (1 + √(1−4AB)) / 2A, continuous at B = 0 where it equals 1/A.
    #[default]
    Larger,
    Smaller,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Infeasible {
    pub simplex: String,
    pub a: f64,
    pub b: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstantDiagonal {
    pub weights: BTreeMap<Simplex, f64>,
    pub infeasible: Vec<Infeasible>,
}

/// Root of m²A − m + B = 0, or `None` when no positive root exists.
///
/// A = 0 leaves the linear equation m = B.
pub fn constant_diagonal_root(a: f64, b: f64, root: Root) -> Option<f64> {
    if a == 0.0 {
        return (b > 0.0).then_some(b);
    }
    let disc = 1.0 - 4.0 * a * b;
    if disc < 0.0 {
        return None;
    }
    let m = match root {
        Root::Larger => (1.0 + disc.sqrt()) / (2.0 * a),
        // Rationalized form avoids cancellation for small AB.
        Root::Smaller => 2.0 * b / (1.0 + disc.sqrt()),
    };
    (m > 0.0).then_some(m)
}

/// Weights on Σ_k making diag Δ^H_k ≡ 1, given the current weights on Σ_{k±1}.
pub fn constant_diagonal_weights(wc: &WeightedComplex, k: isize, root: Root) -> ConstantDiagonal {
    let mut weights = BTreeMap::new();
    let mut infeasible = Vec::new();
    for tau in wc.level(k) {
        let a: f64 = wc.faces(tau).iter().map(|r| 1.0 / wc.m(r)).sum();
        let b: f64 = wc.cofaces(tau).iter().map(|s| wc.m(s)).sum();
        match constant_diagonal_root(a, b, root) {
            Some(m) => {
                weights.insert(tau.clone(), m);
            }
            None => infeasible.push(Infeasible { simplex: tau.key(), a, b }),
        }
    }
    ConstantDiagonal { weights, infeasible }
}

/// Replaces the level-`k` weights of `wc` by the constant-diagonal solution.
pub fn with_constant_diagonal(wc: &WeightedComplex, k: isize, root: Root) -> Result<(WeightedComplex, Vec<Infeasible>)> {
    let cd = constant_diagonal_weights(wc, k, root);
    if !cd.infeasible.is_empty() {
        return Ok((wc.clone(), cd.infeasible));
    }
    let mut map: BTreeMap<Simplex, f64> = wc.weights().iter().map(|(s, m)| (s.clone(), m)).collect();
    map.extend(cd.weights);
    let w = WeightAssignment::new(wc.complex(), map, WeightScheme::ConstantDiagonal)?;
    Ok((wc.with_weights(w)?, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local::check_local_summability;

    #[test]
    fn fan_one() {
        let f = fan(1).unwrap();
        let c = &f.complex;
        assert_eq!(c.complex().len(), 7);
        assert_eq!(c.m(&Simplex::from([1, 2])), 1.0);
        assert_eq!(c.m(&Simplex::from([0, 1])), 1.0);
        assert_eq!(c.m(&Simplex::from([0, 2])), 0.25);
        assert_eq!(c.m(&FanFamily::triangle(1)), 1.0);
        assert!(!c.complex().includes_empty());
    }

    #[test]
    fn fan_three_weights_and_cofaces() {
        let f = fan(3).unwrap();
        let c = &f.complex;
        assert_eq!(c.m(&Simplex::from([0, 3])), 1.0 / 9.0);
        assert_eq!(c.m(&Simplex::from([3, 4])), 9.0);
        assert_eq!(c.m(&FanFamily::triangle(3)), 9.0);
        let cof: Vec<String> = c.cofaces(&Simplex::vertex(0)).iter().map(|s| s.key()).collect();
        assert_eq!(cof, vec!["0,1", "0,2", "0,3", "0,4"]);
    }

    #[test]
    fn fan_signs() {
        let fam = FanFamily;
        for n in 1..5 {
            let t = FanFamily::triangle(n);
            assert_eq!(fam.theta(&FanFamily::spoke(n), &t), 1.0);
            assert_eq!(fam.theta(&FanFamily::spoke(n + 1), &t), -1.0);
            assert_eq!(fam.theta(&Simplex::from([n, n + 1]), &t), 1.0);
        }
    }

    #[test]
    fn fan_local_values() {
        let fam = FanFamily;
        let f = |s: &Simplex| fam.omega0(s);
        assert_eq!(boundary_at(&fam, &f, &FanFamily::spoke(1), 10).value, 1.0);
        for n in 2..20 {
            assert!(boundary_at(&fam, &f, &FanFamily::spoke(n), 10).value.abs() < 1e-12 * (n * n) as f64);
        }
        for n in [1, 5, 50] {
            assert!((fam.dd_omega0_at_root(n).value - 1.0).abs() < 1e-12);
            assert!((fam.omega0_cross_term(n) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn fan_summability_at_root() {
        let r = check_local_summability(&FanFamily, [Simplex::vertex(0)], 2000);
        let e = &r.entries[0];
        assert!(!e.coface_sum.complete);
        let pi2_6 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((e.coface_sum.value - pi2_6).abs() < 1e-3);
        assert_eq!(e.coface_trend, crate::local::Trend::Settling);
        assert_eq!(e.strong_trend, crate::local::Trend::Growing);
        assert_eq!(e.strong_sum.partial_sums[0], 1.0);
        assert_eq!(e.strong_sum.partial_sums[1], 1.0 + 1.0 + 4.0);
    }

    #[test]
    fn cliques() {
        let tri = [(0, 1), (1, 2), (0, 2)];
        assert_eq!(clique_complex(3, &tri, 2, false).unwrap().len(), 7);
        assert_eq!(clique_complex(3, &tri, 1, false).unwrap().len(), 6);
        let k4: Vec<(usize, usize)> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        let c = clique_complex(4, &k4, 3, false).unwrap();
        assert_eq!((0..4).map(|k| c.level(k).len()).collect::<Vec<_>>(), vec![4, 6, 4, 1]);
    }

    #[test]
    fn random_complex_extremes() {
        let c = random_complex(5, 0.0, 3, 1, false).unwrap();
        assert_eq!(c.len(), 5);
        let c = random_complex(5, 1.0, 2, 1, false).unwrap();
        assert_eq!(c.level(2).len(), 10);
        assert_eq!(c.dim(), 2);
        let a = random_complex(8, 0.5, 3, 42, false).unwrap();
        let b = random_complex(8, 0.5, 3, 42, false).unwrap();
        assert_eq!(a.simplices().collect::<Vec<_>>(), b.simplices().collect::<Vec<_>>());
    }

    #[test]
    fn normalizing_on_triangles() {
        let solid = simplex_closure(2, true).unwrap();
        let w = normalizing_weights(&solid, None).unwrap();
        assert_eq!(w.m(&Simplex::from([0, 1])), 1.0);
        assert_eq!(w.m(&Simplex::vertex(0)), 2.0);
        assert_eq!(w.m(&Simplex::empty()), 6.0);
        let hollow = cycle(3, false).unwrap();
        assert_eq!(normalizing_weights(&hollow, None).unwrap().m(&Simplex::vertex(1)), 2.0);
        let mut top = BTreeMap::new();
        top.insert(Simplex::from([0, 1]), 1.0);
        assert!(normalizing_weights(&solid, Some(&top)).is_err());
    }

    #[test]
    fn constant_diagonal_roots() {
        assert_eq!(constant_diagonal_root(2.0, 0.0, Root::Larger), Some(0.5));
        let small = constant_diagonal_root(1.0, 0.125, Root::Smaller).unwrap();
        assert!((small - (1.0 - 0.5_f64.sqrt()) / 2.0).abs() < 1e-15);
        assert!((small - 0.1464).abs() < 1e-4);
        assert_eq!(constant_diagonal_root(1.0, 1.0, Root::Larger), None);
        assert_eq!(constant_diagonal_root(0.0, 3.0, Root::Larger), Some(3.0));
    }
}
