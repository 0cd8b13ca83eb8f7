//! Lazy, neighbourhood-only evaluation for complexes that may be infinite.
//!
//! A [`LocalComplex`] only answers local questions (weights, signs, faces,
//! a budgeted list of cofaces), which is enough to evaluate δ and ∂ at a
//! single simplex without materializing the whole complex.

use serde::Serialize;

use crate::simplex::Simplex;
use crate::weighted::WeightedComplex;

/// Cofaces enumerated up to a budget.
#[derive(Clone, Debug, PartialEq)]
pub struct Cofaces {
    pub simplices: Vec<Simplex>,
    /// False when the budget cut the enumeration short.
    pub complete: bool,
}

pub trait LocalComplex {
    fn weight(&self, s: &Simplex) -> f64;
    fn theta(&self, face: &Simplex, coface: &Simplex) -> f64;
    fn faces(&self, s: &Simplex) -> Vec<Simplex>;
    fn cofaces(&self, s: &Simplex, budget: usize) -> Cofaces;
}

impl LocalComplex for WeightedComplex {
    fn weight(&self, s: &Simplex) -> f64 {
        self.m(s)
    }

    fn theta(&self, face: &Simplex, coface: &Simplex) -> f64 {
        WeightedComplex::theta(self, face, coface)
    }

    fn faces(&self, s: &Simplex) -> Vec<Simplex> {
        WeightedComplex::faces(self, s).into_iter().cloned().collect()
    }

    fn cofaces(&self, s: &Simplex, budget: usize) -> Cofaces {
        let all = WeightedComplex::cofaces(self, s);
        let complete = all.len() <= budget;
        Cofaces { simplices: all.into_iter().take(budget).cloned().collect(), complete }
    }
}

/// A sum over a possibly infinite index set, evaluated term by term.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartialSum {
    pub value: f64,
    pub terms: usize,
    pub last_increment: f64,
    pub complete: bool,
    pub partial_sums: Vec<f64>,
}

/// What the partial sums look like at the budget. Never a convergence verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    /// Every term was summed.
    Exact,
    /// Increments are shrinking below their running mean.
    Settling,
    /// Increments are not shrinking; the sum keeps growing.
    Growing,
}

impl PartialSum {
    pub fn from_terms(terms: impl IntoIterator<Item = f64>, complete: bool) -> Self {
        let mut value = 0.0;
        let mut last = 0.0;
        let mut partial_sums = Vec::new();
        for t in terms {
            value += t;
            last = t;
            partial_sums.push(value);
        }
        PartialSum { value, terms: partial_sums.len(), last_increment: last, complete, partial_sums }
    }

    pub fn trend(&self) -> Trend {
        if self.complete {
            return Trend::Exact;
        }
        let mean = if self.terms == 0 { 0.0 } else { self.value / self.terms as f64 };
        if self.last_increment.abs() >= mean.abs() && self.last_increment != 0.0 {
            Trend::Growing
        } else {
            Trend::Settling
        }
    }
}

/// δf(σ) = Σ_{τ≺σ} f(τ)θ(τ,σ). Faces are always finite.
pub fn coboundary_at<L: LocalComplex + ?Sized>(lc: &L, f: &dyn Fn(&Simplex) -> f64, sigma: &Simplex) -> f64 {
    lc.faces(sigma).iter().map(|tau| f(tau) * lc.theta(tau, sigma)).sum()
}

/// ∂f(ρ) = (1/m(ρ)) Σ_{τ≻ρ} m(τ)f(τ)θ(ρ,τ), summed over at most `budget` cofaces.
pub fn boundary_at<L: LocalComplex + ?Sized>(lc: &L, f: &dyn Fn(&Simplex) -> f64, rho: &Simplex, budget: usize) -> PartialSum {
    let cof = lc.cofaces(rho, budget);
    let mr = lc.weight(rho);
    PartialSum::from_terms(cof.simplices.iter().map(|tau| lc.weight(tau) * f(tau) * lc.theta(rho, tau) / mr), cof.complete)
}

#[derive(Clone, Debug, Serialize)]
pub struct SummabilityEntry {
    pub simplex: String,
    /// Σ_{σ≻τ} m(σ).
    pub coface_sum: PartialSum,
    pub coface_trend: Trend,
    /// Σ_{τ'≻τ} Σ_{σ≻τ'} m(σ).
    pub strong_sum: PartialSum,
    pub strong_trend: Trend,
}

#[derive(Clone, Debug, Serialize)]
pub struct SummabilityReport {
    pub budget: usize,
    pub entries: Vec<SummabilityEntry>,
    /// Every coface sum finished within the budget.
    pub locally_summable: bool,
    /// Every two-step sum finished within the budget as well.
    pub strongly_locally_summable: bool,
}

/// Coface-weight sums at each listed simplex. On a finite complex every sum is exact.
pub fn check_local_summability<L: LocalComplex + ?Sized>(
    lc: &L,
    simplices: impl IntoIterator<Item = Simplex>,
    budget: usize,
) -> SummabilityReport {
    let mut entries = Vec::new();
    for tau in simplices {
        let cof = lc.cofaces(&tau, budget);
        let coface_sum = PartialSum::from_terms(cof.simplices.iter().map(|s| lc.weight(s)), cof.complete);
        let mut complete = cof.complete;
        let mut terms = Vec::new();
        for t in &cof.simplices {
            let inner = lc.cofaces(t, budget);
            complete &= inner.complete;
            terms.push(inner.simplices.iter().map(|s| lc.weight(s)).sum::<f64>());
        }
        let strong_sum = PartialSum::from_terms(terms, complete);
        entries.push(SummabilityEntry {
            simplex: tau.key(),
            coface_trend: coface_sum.trend(),
            strong_trend: strong_sum.trend(),
            coface_sum,
            strong_sum,
        });
    }
    let locally_summable = entries.iter().all(|e| e.coface_sum.complete);
    let strongly_locally_summable = locally_summable && entries.iter().all(|e| e.strong_sum.complete);
    SummabilityReport { budget, entries, locally_summable, strongly_locally_summable }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BalanceReport {
    /// sup over τ≺σ of m(σ)/m(τ); 0 when no incident pair exists.
    pub sup_ratio: f64,
    pub argmax: Option<(String, String)>,
}

pub fn is_balanced(wc: &WeightedComplex) -> BalanceReport {
    let mut best = BalanceReport { sup_ratio: 0.0, argmax: None };
    for sigma in wc.complex().simplices() {
        for tau in wc.faces(sigma) {
            let r = wc.m(sigma) / wc.m(tau);
            if r > best.sup_ratio {
                best = BalanceReport { sup_ratio: r, argmax: Some((tau.key(), sigma.key())) };
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    #[test]
    fn finite_complex_sums_are_exact() {
        let wc = WeightedComplex::combinatorial(SimplicialComplex::from_maximal([Simplex::from([0, 1, 2])], false).unwrap());
        let r = check_local_summability(&wc, wc.complex().simplices().cloned().collect::<Vec<_>>(), 10);
        assert!(r.locally_summable && r.strongly_locally_summable);
        let v0 = &r.entries[0];
        assert_eq!(v0.simplex, "0");
        assert_eq!(v0.coface_sum.value, 2.0);
        assert_eq!(v0.strong_sum.value, 2.0);
        assert_eq!(is_balanced(&wc).sup_ratio, 1.0);
    }

    #[test]
    fn trend_classification() {
        let s = PartialSum::from_terms((1..100).map(|n| 1.0 / (n * n) as f64), false);
        assert_eq!(s.trend(), Trend::Settling);
        let s = PartialSum::from_terms((1..100).map(|n| (n * n) as f64), false);
        assert_eq!(s.trend(), Trend::Growing);
    }
}
