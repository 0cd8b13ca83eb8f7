//! Normalizing and constant-diagonal weights.

use hodge_complex::generators::{constant_diagonal_root, normalizing_weights, random_complex, with_constant_diagonal, Root};
use hodge_complex::laplacian::laplacian;
use hodge_complex::spectral::normalizing_bound_check;
use hodge_complex::{LaplacianFlavor, WeightedComplex};

fn main() -> hodge_complex::Result<()> {
    let wc = WeightedComplex::combinatorial(random_complex(7, 0.7, 3, 2, true)?);
    let normalized = wc.with_weights(normalizing_weights(wc.complex(), None)?)?;
    for l in normalizing_bound_check(&normalized)?.levels {
        println!("k={:>2}: spectrum in [{:.3}, {:.3}] within [0, {}]", l.k, l.min_eigenvalue, l.max_eigenvalue, l.bound);
    }

    println!("roots for A=1, B=1/8: larger {:?}, smaller {:?}", constant_diagonal_root(1.0, 0.125, Root::Larger), constant_diagonal_root(1.0, 0.125, Root::Smaller));
    let (cd, infeasible) = with_constant_diagonal(&wc, 2, Root::Larger)?;
    if infeasible.is_empty() {
        let h = laplacian(&cd, LaplacianFlavor::Hodge, 2)?.to_dense();
        println!("diag of hodge_2 after rescaling: {:?}", h.diagonal().iter().map(|x| (x * 1e12).round() / 1e12 + 0.0).collect::<Vec<_>>());
    } else {
        println!("{} simplices have no positive root", infeasible.len());
    }
    Ok(())
}
