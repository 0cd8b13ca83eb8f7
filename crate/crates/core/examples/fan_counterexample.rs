//! The fan: ∂∂ω₀ ≠ 0 and ⟨δω₀, ∂ω₀⟩ ≠ 0 once the weights stop being summable.

use hodge_complex::generators::{fan, FanFamily};
use hodge_complex::local::{boundary_at, check_local_summability, is_balanced};
use hodge_complex::operators::boundary_global;
use hodge_complex::Simplex;

fn main() -> hodge_complex::Result<()> {
    for n in [1, 5, 50] {
        let dd = FanFamily.dd_omega0_at_root(n);
        println!("N = {n:>2}: ddw0(0) = {} over {} spokes, <dw0, bw0> = {}", dd.value, dd.terms, FanFamily.omega0_cross_term(n));
    }

    // On a finite piece the matrices see a boundary at the last triangle and the
    // value cancels; the local evaluation above uses the infinite family.
    let piece = fan(5)?;
    let b = boundary_global(&piece.complex);
    let bb = b.apply(&b.apply(&piece.omega0));
    println!("materialized fan(5): ddw0(0) = {}", bb.get(&Simplex::vertex(0)));

    let f = |s: &Simplex| FanFamily.omega0(s);
    for n in 1..=4 {
        println!("  bw0(rho_{n}) = {}", boundary_at(&FanFamily, &f, &FanFamily::spoke(n), 8).value);
    }

    let r = check_local_summability(&FanFamily, [Simplex::vertex(0)], 10_000);
    let e = &r.entries[0];
    println!(
        "coface sum at 0 after {} terms: {:.6} ({:?}); two-step sum {:.3e} ({:?})",
        e.coface_sum.terms, e.coface_sum.value, e.coface_trend, e.strong_sum.value, e.strong_trend
    );
    for n in [2, 4, 8] {
        println!("balance sup on fan({n}): {}", is_balanced(&fan(n)?.complex).sup_ratio);
    }
    Ok(())
}
