//! Hodge decomposition, Betti numbers and the spectral identities.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hodge_complex::generators::{cycle, random_complex};
use hodge_complex::operators::random_function;
use hodge_complex::spectral::{betti_checked, hodge_decompose, verify_spectrum_identities};
use hodge_complex::WeightedComplex;

fn main() -> hodge_complex::Result<()> {
    for empty in [false, true] {
        let wc = WeightedComplex::combinatorial(cycle(3, empty)?);
        let b: Vec<usize> = wc.complex().dims().map(|k| betti_checked(&wc, k)).collect::<Result<_, _>>()?;
        println!("hollow triangle, empty simplex {empty}: betti by level {b:?}");
    }

    let wc = WeightedComplex::combinatorial(random_complex(8, 0.5, 3, 7, false)?);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let omega = random_function(&wc, &mut rng);
    let w = wc.weights();
    let s = hodge_decompose(&wc, &omega, 1)?;
    println!(
        "|w|^2 = {:.4} = harmonic {:.4} + exact {:.4} + coexact {:.4}  (residual {:.1e})",
        omega.level(1).norm_sq(w),
        s.harmonic.norm_sq(w),
        s.exact.norm_sq(w),
        s.coexact.norm_sq(w),
        s.residual
    );

    let ks: Vec<isize> = wc.complex().dims().collect();
    let r = verify_spectrum_identities(&wc, &ks)?;
    println!("spectral identities: passed {} with max gap {:.1e}", r.passed, r.max_gap);
    Ok(())
}
