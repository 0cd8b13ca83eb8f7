//! Invariant suites run by `sc check`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::criteria::{boundedness_report, intrinsic_check};
use crate::error::Result;
use crate::laplacian::{factorization_check, gauss_bonnet_square_check, laplacian, LaplacianFlavor};
use crate::operators::{boundary_global, coboundary_global, random_function, verify_dd_zero, verify_stokes};
use crate::schrodinger::{direct_energy, h_matrix, quadratic_form_via_boc, schrodinger_data, Flavor};
use crate::spectral::{betti, verify_spectrum_identities, BettiMode};
use crate::weighted::WeightedComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    DdZero,
    Stokes,
    Schrodinger,
    Factorization,
    GaussBonnet,
    Spectral,
    Betti,
    Intrinsic,
    NormBound,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::DdZero,
        Suite::Stokes,
        Suite::Schrodinger,
        Suite::Factorization,
        Suite::GaussBonnet,
        Suite::Spectral,
        Suite::Betti,
        Suite::Intrinsic,
        Suite::NormBound,
    ];
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub passed: bool,
    /// Worst residual seen; compared against `tolerance`.
    pub value: f64,
    pub tolerance: f64,
    pub note: Option<String>,
}

fn result(suite: Suite, value: f64, tolerance: f64) -> SuiteResult {
    SuiteResult { suite, passed: value <= tolerance, value, tolerance, note: None }
}

/// max over flavours of ‖H − composed‖, with H from the Schrödinger data.
pub fn h_vs_composed(wc: &WeightedComplex) -> f64 {
    let d = coboundary_global(wc).to_dense();
    let b = boundary_global(wc).to_dense();
    let up = &b * &d;
    let down = &d * &b;
    let hodge = &up + &down;
    let mut worst: f64 = 0.0;
    for (flavor, target) in [(Flavor::Up, &up), (Flavor::Down, &down), (Flavor::Hodge, &hodge)] {
        let h = h_matrix(&schrodinger_data(wc, flavor), wc).to_dense();
        worst = worst.max((h - target).amax());
    }
    worst
}

/// max relative gap between the b/o/c quadratic form and ‖δω‖², ‖∂ω‖², ‖(δ+∂)ω‖².
pub fn boc_vs_energy(wc: &WeightedComplex, trials: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<_> = Flavor::ALL.iter().map(|&f| (f, schrodinger_data(wc, f))).collect();
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let omega = random_function(wc, &mut rng);
        for (f, d) in &data {
            let q = quadratic_form_via_boc(d, &omega);
            let e = direct_energy(wc, *f, &omega);
            worst = worst.max((q - e).abs() / e.abs().max(1.0));
        }
    }
    worst
}

pub fn run_suite(wc: &WeightedComplex, suite: Suite, seed: u64) -> Result<SuiteResult> {
    let dims: Vec<isize> = wc.complex().dims().collect();
    Ok(match suite {
        Suite::DdZero => {
            let r = verify_dd_zero(wc);
            let mut out = result(suite, r.pp_residual, 1e-12);
            out.passed &= r.dd_residual == 0.0;
            out.value = out.value.max(r.dd_residual);
            out
        }
        Suite::Stokes => result(suite, verify_stokes(wc, 20, seed).max(), 1e-12),
        Suite::Schrodinger => {
            let mut out = result(suite, h_vs_composed(wc), 1e-12);
            let e = boc_vs_energy(wc, 10, seed);
            out.passed &= e <= 1e-10;
            out.note = Some(format!("energy gap {e:e}"));
            out
        }
        Suite::Factorization => {
            let mut worst: f64 = 0.0;
            for &k in &dims {
                let up = laplacian(wc, LaplacianFlavor::Up, k)?.to_dense();
                let down = laplacian(wc, LaplacianFlavor::Down, k)?.to_dense();
                let r = factorization_check(&up, &down, seed);
                worst = worst.max(r.up_down).max(r.down_up).max(r.identity_residual);
            }
            result(suite, worst, 1e-10)
        }
        Suite::GaussBonnet => {
            let r = gauss_bonnet_square_check(wc);
            result(suite, r.vs_hodge.max(r.vs_sum), 1e-10)
        }
        Suite::Spectral => {
            let r = verify_spectrum_identities(wc, &dims)?;
            SuiteResult { suite, passed: r.passed, value: r.max_gap, tolerance: 1e-9, note: None }
        }
        Suite::Betti => {
            let mut bad = Vec::new();
            let mut numbers = Vec::new();
            for &k in &dims {
                let a = betti(wc, k, BettiMode::KernelDim)?;
                let b = betti(wc, k, BettiMode::RankQuotient)?;
                if a != b {
                    bad.push(k);
                }
                numbers.push(a);
            }
            SuiteResult {
                suite,
                passed: bad.is_empty(),
                value: bad.len() as f64,
                tolerance: 0.0,
                note: Some(format!("betti {numbers:?}")),
            }
        }
        Suite::Intrinsic => {
            if wc.complex().includes_empty() {
                // Vertices coupled through ∅ need not be joined by an edge.
                let mut out = result(suite, 0.0, 1.0 + 1e-12);
                out.note = Some("skipped: complex contains the empty simplex".into());
                out
            } else {
                let worst = Flavor::ALL.iter().map(|&f| intrinsic_check(wc, f).max_row_ratio).fold(0.0, f64::max);
                result(suite, worst, 1.0 + 1e-12)
            }
        }
        Suite::NormBound => {
            let r = boundedness_report(wc)?;
            let lmax = r.lambda_max.unwrap_or(0.0);
            let mut out = result(suite, lmax - r.norm_bound, 1e-9);
            out.note = Some(format!("lambda_max {lmax} <= bound {}", r.norm_bound));
            out
        }
    })
}

pub fn run_all(wc: &WeightedComplex, seed: u64) -> Result<Vec<SuiteResult>> {
    Suite::ALL.iter().map(|&s| run_suite(wc, s, seed)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::simplex_closure;

    #[test]
    fn tetrahedron_passes_everything() {
        for empty in [false, true] {
            let wc = WeightedComplex::combinatorial(simplex_closure(3, empty).unwrap());
            for r in run_all(&wc, 1).unwrap() {
                assert!(r.passed, "{r:?}");
            }
        }
    }
}
