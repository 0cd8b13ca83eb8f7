//! Signed Schrödinger form of the Laplacians: edge weights `b`, signs `o`,
//! potential `c` and the diagonal `γ`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::function::GradedFunction;
use crate::operators::{boundary_global, coboundary_global, Convention, Grading, LevelOperator};
use crate::simplex::Simplex;
use crate::weighted::WeightedComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Up,
    Down,
    Hodge,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Up, Flavor::Down, Flavor::Hodge];
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Up => "up",
            Flavor::Down => "down",
            Flavor::Hodge => "hodge",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "up" | "+" => Ok(Flavor::Up),
            "down" | "-" => Ok(Flavor::Down),
            "hodge" | "H" => Ok(Flavor::Hodge),
            _ => Err(Error::Document { key: "flavor".into(), reason: format!("unknown flavor `{s}`") }),
        }
    }
}

/// One off-diagonal coefficient `b(τ,τ')` with its sign `o(τ,τ')`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coupling {
    pub neighbor: Simplex,
    pub b: f64,
    pub o: i8,
}

#[derive(Clone, Debug)]
pub struct SchrodingerData {
    pub flavor: Flavor,
    rows: BTreeMap<Simplex, Vec<Coupling>>,
    c: BTreeMap<Simplex, f64>,
    gamma: BTreeMap<Simplex, f64>,
}

#[derive(Default, Clone, Copy)]
struct PairData {
    b_plus: f64,
    o_plus: i8,
    b_minus: f64,
    o_minus: i8,
    common_face: bool,
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

fn pair_table(wc: &WeightedComplex, tau: &Simplex) -> BTreeMap<Simplex, PairData> {
    let mut pairs: BTreeMap<Simplex, PairData> = BTreeMap::new();
    for sigma in wc.cofaces(tau) {
        for tp in wc.faces(sigma) {
            if tp == tau {
                continue;
            }
            let e = pairs.entry(tp.clone()).or_default();
            e.b_plus = wc.m(sigma);
            e.o_plus = -((wc.theta(tau, sigma) * wc.theta(tp, sigma)) as i8);
        }
    }
    for rho in wc.faces(tau) {
        for tp in wc.cofaces(rho) {
            if tp == tau {
                continue;
            }
            let e = pairs.entry(tp.clone()).or_default();
            e.b_minus = wc.m(tau) * wc.m(tp) / wc.m(rho);
            e.o_minus = -((wc.theta(rho, tau) * wc.theta(rho, tp)) as i8);
            e.common_face = true;
        }
    }
    pairs
}

/// γ⁺(τ) = ‖δ1_τ‖² = Σ_{σ≻τ} m(σ).
pub fn gamma_plus(wc: &WeightedComplex, tau: &Simplex) -> f64 {
    wc.cofaces(tau).iter().map(|s| wc.m(s)).sum()
}

/// γ⁻(τ) = ‖∂1_τ‖² = Σ_{ρ≺τ} m(τ)²/m(ρ).
pub fn gamma_minus(wc: &WeightedComplex, tau: &Simplex) -> f64 {
    let m = wc.m(tau);
    wc.faces(tau).iter().map(|r| m * m / wc.m(r)).sum()
}

/// Builds `b`, `o`, `c`, `γ` for every simplex of a finite complex.
///
/// The signs are those for which `H` reproduces ∂δ, δ∂ and ∂δ+δ∂ exactly:
/// `o⁺ = −θ(τ,σ)θ(τ',σ)`, `o⁻ = −θ(ρ,τ)θ(ρ,τ')`. For the Hodge flavour a pair
/// with a coface but no common face (vertices without `∅`) keeps `o⁺`.
pub fn schrodinger_data(wc: &WeightedComplex, flavor: Flavor) -> SchrodingerData {
    let mut rows = BTreeMap::new();
    let mut c = BTreeMap::new();
    let mut gamma = BTreeMap::new();
    for tau in wc.complex().simplices() {
        let g = match flavor {
            Flavor::Up => gamma_plus(wc, tau),
            Flavor::Down => gamma_minus(wc, tau),
            Flavor::Hodge => gamma_plus(wc, tau) + gamma_minus(wc, tau),
        };
        let mut row = Vec::new();
        for (tp, p) in pair_table(wc, tau) {
            let (b, o) = match flavor {
                Flavor::Up => (p.b_plus, p.o_plus),
                Flavor::Down => (p.b_minus, p.o_minus),
                Flavor::Hodge => {
                    let diff = p.b_minus - p.b_plus;
                    if diff.abs() <= 1e-14 * p.b_minus.max(p.b_plus) {
                        (0.0, 0)
                    } else {
                        let base = if p.common_face { p.o_minus } else { -p.o_plus };
                        (diff.abs(), base * sign(diff))
                    }
                }
            };
            if b > 0.0 {
                row.push(Coupling { neighbor: tp, b, o });
            }
        }
        let bsum: f64 = row.iter().map(|x| x.b).sum();
        c.insert(tau.clone(), g - bsum);
        gamma.insert(tau.clone(), g);
        rows.insert(tau.clone(), row);
    }
    SchrodingerData { flavor, rows, c, gamma }
}

impl SchrodingerData {
    pub fn couplings(&self, tau: &Simplex) -> &[Coupling] {
        self.rows.get(tau).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn b(&self, tau: &Simplex, tp: &Simplex) -> f64 {
        self.couplings(tau).iter().find(|x| &x.neighbor == tp).map(|x| x.b).unwrap_or(0.0)
    }

    pub fn o(&self, tau: &Simplex, tp: &Simplex) -> i8 {
        self.couplings(tau).iter().find(|x| &x.neighbor == tp).map(|x| x.o).unwrap_or(0)
    }

    pub fn c(&self, tau: &Simplex) -> f64 {
        self.c.get(tau).copied().unwrap_or(0.0)
    }

    pub fn gamma(&self, tau: &Simplex) -> f64 {
        self.gamma.get(tau).copied().unwrap_or(0.0)
    }

    /// Σ_{τ'} b(τ,τ').
    pub fn row_sum(&self, tau: &Simplex) -> f64 {
        self.couplings(tau).iter().map(|x| x.b).sum()
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.rows.keys()
    }
}

/// Hω(τ) = (1/m(τ)) Σ b(τ,τ')(ω(τ) − o(τ,τ')ω(τ')) + (c(τ)/m(τ))ω(τ).
pub fn apply_h(data: &SchrodingerData, wc: &WeightedComplex, omega: &GradedFunction) -> GradedFunction {
    let mut out = GradedFunction::new();
    for tau in data.simplices() {
        let w = omega.get(tau);
        let mut acc = data.c(tau) * w;
        for x in data.couplings(tau) {
            acc += x.b * (w - x.o as f64 * omega.get(&x.neighbor));
        }
        out.set(tau.clone(), acc / wc.m(tau));
    }
    out
}

/// `H` as a matrix over all simplices in graded order.
pub fn h_matrix(data: &SchrodingerData, wc: &WeightedComplex) -> LevelOperator {
    let all: Vec<Simplex> = wc.complex().simplices().cloned().collect();
    let pos: BTreeMap<&Simplex, usize> = all.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut entries = Vec::new();
    for (i, tau) in all.iter().enumerate() {
        let m = wc.m(tau);
        entries.push((i, i, (data.row_sum(tau) + data.c(tau)) / m));
        for x in data.couplings(tau) {
            entries.push((i, pos[&x.neighbor], -x.b * x.o as f64 / m));
        }
    }
    LevelOperator::from_triplets(all.clone(), all, entries, Grading::Mixed, Grading::Mixed, Convention::Formal)
}

/// ½ Σ b(τ,τ')(ω(τ) − o ω(τ'))² + Σ c ω².
pub fn quadratic_form_via_boc(data: &SchrodingerData, omega: &GradedFunction) -> f64 {
    let mut q = 0.0;
    for tau in data.simplices() {
        let w = omega.get(tau);
        q += data.c(tau) * w * w;
        for x in data.couplings(tau) {
            let d = w - x.o as f64 * omega.get(&x.neighbor);
            q += 0.5 * x.b * d * d;
        }
    }
    q
}

/// ‖δω‖², ‖∂ω‖² or ‖(δ+∂)ω‖² in the weighted inner product.
pub fn direct_energy(wc: &WeightedComplex, flavor: Flavor, omega: &GradedFunction) -> f64 {
    let w = wc.weights();
    let d = coboundary_global(wc).apply(omega);
    let b = boundary_global(wc).apply(omega);
    match flavor {
        Flavor::Up => d.norm_sq(w),
        Flavor::Down => b.norm_sq(w),
        Flavor::Hodge => d.plus(&b).norm_sq(w),
    }
}

/// Σ_{τ'} m(τ')(b(τ,τ')/m(τ'))².
pub fn phi_tau_norm(data: &SchrodingerData, wc: &WeightedComplex, tau: &Simplex) -> f64 {
    data.couplings(tau).iter().map(|x| x.b * x.b / wc.m(&x.neighbor)).sum()
}

/// c^H/m per simplex.
pub fn forman_curvature(wc: &WeightedComplex) -> BTreeMap<Simplex, f64> {
    let data = schrodinger_data(wc, Flavor::Hodge);
    wc.complex().simplices().map(|s| (s.clone(), data.c(s) / wc.m(s))).collect()
}

/// Closed form of c^H under unit weights.
///
/// With every face present this is 2(k+1) + (k+2)·#cofaces − Σ_{ρ≺τ} #cofaces(ρ).
/// A simplex with no stored faces (a vertex when `∅` is absent, or `∅`) only
/// couples through cofaces, which gives −k·#cofaces.
pub fn combinatorial_forman(wc: &WeightedComplex, tau: &Simplex) -> f64 {
    let k = tau.dim() as f64;
    let cof = wc.cofaces(tau).len() as f64;
    let faces = wc.faces(tau);
    if faces.is_empty() {
        return -k * cof;
    }
    let face_cof: usize = faces.iter().map(|r| wc.cofaces(r).len()).sum();
    2.0 * (k + 1.0) + (k + 2.0) * cof - face_cof as f64
}
