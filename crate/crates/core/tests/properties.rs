use proptest::prelude::*;

use hodge_complex::bridge::{h_sign, OrientedSimplex};
use hodge_complex::criteria::{metric_weights, path_metric};
use hodge_complex::generators::{constant_diagonal_weights, random_complex, with_constant_diagonal, normalizing_weights, Root};
use hodge_complex::laplacian::{symmetrize_to_euclidean, up_block, laplacian, BoundaryCondition, LaplacianFlavor, Truncation};
use hodge_complex::schrodinger::{apply_h, gamma_plus, schrodinger_data, Flavor};
use hodge_complex::spectral::{compare_default, eigenvalues};
use hodge_complex::operators::random_function;
use hodge_complex::{OrientationAssignment, WeightedComplex};
use rand::SeedableRng;

fn complex(n: usize, p: f64, seed: u64, empty: bool) -> WeightedComplex {
    WeightedComplex::combinatorial(random_complex(n, p, 3, seed, empty).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn path_metric_is_a_pseudo_metric(n in 3usize..8, p in 0.3f64..0.9, seed in 0u64..1000) {
        let wc = complex(n, p, seed, false);
        for f in Flavor::ALL {
            let mw = metric_weights(&wc, f);
            let vs = wc.complex().vertices();
            for &a in &vs {
                for &b in &vs {
                    prop_assert_eq!(path_metric(&mw, a, b), path_metric(&mw, b, a));
                    for &c in &vs {
                        let (ab, bc, ac) = (path_metric(&mw, a, b), path_metric(&mw, b, c), path_metric(&mw, a, c));
                        prop_assert!(ac <= ab + bc + 1e-12 || ab.is_infinite() || bc.is_infinite());
                    }
                }
            }
        }
        let (up, down, h) = (metric_weights(&wc, Flavor::Up), metric_weights(&wc, Flavor::Down), metric_weights(&wc, Flavor::Hodge));
        for (k, &w) in &h.edge_weights {
            prop_assert!(w <= up.edge_weights[k] / 2f64.sqrt() && w <= down.edge_weights[k] / 2f64.sqrt());
        }
    }

    #[test]
    fn h_alternates_under_transpositions(perm in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(), len in 2usize..6, i in 0usize..4) {
        let seq: Vec<usize> = perm.into_iter().take(len).collect();
        let i = i % (len - 1);
        let mut swapped = seq.clone();
        swapped.swap(i, i + 1);
        let lex = OrientationAssignment::Lexicographic;
        let a = h_sign(&lex, &OrientedSimplex::new(seq).unwrap()).unwrap();
        let b = h_sign(&lex, &OrientedSimplex::new(swapped).unwrap()).unwrap();
        prop_assert_eq!(a, -b);
    }

    #[test]
    fn normalizing_weights_are_coface_sums(n in 3usize..8, p in 0.3f64..0.9, seed in 0u64..1000, empty: bool) {
        let wc = complex(n, p, seed, empty);
        let w = normalizing_weights(wc.complex(), None).unwrap();
        let nw = wc.with_weights(w).unwrap();
        for s in nw.complex().simplices() {
            if !nw.complex().is_maximal(s) {
                prop_assert!((gamma_plus(&nw, s) - nw.m(s)).abs() <= 1e-12 * nw.m(s));
            }
        }
    }

    #[test]
    fn constant_diagonal_where_feasible(n in 3usize..8, p in 0.3f64..0.9, seed in 0u64..1000, k in 0isize..2) {
        let wc = complex(n, p, seed, true);
        let cd = constant_diagonal_weights(&wc, k, Root::Larger);
        if cd.infeasible.is_empty() && !wc.level(k).is_empty() {
            let (re, bad) = with_constant_diagonal(&wc, k, Root::Larger).unwrap();
            prop_assert!(bad.is_empty());
            let h = laplacian(&re, LaplacianFlavor::Hodge, k).unwrap().to_dense();
            for i in 0..h.nrows() {
                prop_assert!((h[(i, i)] - 1.0).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn schrodinger_rows_and_green_symmetry(n in 3usize..8, p in 0.3f64..0.9, seed in 0u64..1000, empty: bool) {
        let wc = complex(n, p, seed, empty);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for f in Flavor::ALL {
            let d = schrodinger_data(&wc, f);
            for s in wc.complex().simplices() {
                let row = d.gamma(s) - d.c(s);
                prop_assert!((row - d.row_sum(s)).abs() <= 1e-12 && row >= 0.0);
            }
            let (a, b) = (random_function(&wc, &mut rng), random_function(&wc, &mut rng));
            let lhs = apply_h(&d, &wc, &a).inner(&b, wc.weights());
            let rhs = a.inner(&apply_h(&d, &wc, &b), wc.weights());
            prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()));
        }
    }

    #[test]
    fn laplacians_are_positive_and_hodge_matches(n in 3usize..8, p in 0.3f64..0.9, seed in 0u64..1000, empty: bool) {
        let wc = complex(n, p, seed, empty);
        for k in wc.complex().dims() {
            let mut spectra = Vec::new();
            for f in [LaplacianFlavor::Up, LaplacianFlavor::Down, LaplacianFlavor::Hodge] {
                let s = symmetrize_to_euclidean(&laplacian(&wc, f, k).unwrap(), &wc).unwrap();
                let ev = eigenvalues(&s).unwrap();
                prop_assert!(ev.iter().all(|&l| l >= -1e-10));
                spectra.push(ev);
            }
            let union: Vec<f64> = spectra[0].iter().chain(&spectra[1]).copied().collect();
            prop_assert!(compare_default(&spectra[2], &union).matched);
            prop_assert_eq!(compare_default(&spectra[0], &spectra[1]).matched, compare_default(&spectra[1], &spectra[0]).matched);
        }
    }

    #[test]
    fn dirichlet_dominates_neumann(n in 4usize..8, p in 0.4f64..0.9, seed in 0u64..1000) {
        let wc = complex(n, p, seed, false);
        let t = Truncation::ball(&wc, 0, 1).unwrap();
        for k in t.dims() {
            let (idx, d) = up_block(&t, k, BoundaryCondition::Dirichlet);
            let (_, nm) = up_block(&t, k, BoundaryCondition::Neumann);
            let sq: Vec<f64> = idx.iter().map(|s| wc.m(s).sqrt()).collect();
            let diff = d - nm;
            let s = nalgebra::DMatrix::from_fn(diff.nrows(), diff.ncols(), |i, j| sq[i] * diff[(i, j)] / sq[j]);
            let s = (&s + s.transpose()) * 0.5;
            prop_assert!(eigenvalues(&s).unwrap().iter().all(|&l| l >= -1e-10));
        }
    }
}
