//! Functions on simplices versus alternating forms.

use hodge_complex::bridge::{classical_coboundary, h_sign, to_function, transported_coboundary, AlternatingForm, OrientedSimplex};
use hodge_complex::generators::simplex_closure;
use hodge_complex::WeightedComplex;

fn main() -> hodge_complex::Result<()> {
    let wc = WeightedComplex::combinatorial(simplex_closure(2, false)?);
    for seq in [vec![0, 1, 2], vec![1, 0, 2], vec![2, 0, 1]] {
        println!("h{seq:?} = {}", h_sign(wc.orientation(), &OrientedSimplex::new(seq.clone())?)?);
    }

    let mut omega = AlternatingForm::new();
    omega.set(&OrientedSimplex::new(vec![1, 2])?, 1.0);
    omega.set(&OrientedSimplex::new(vec![0])?, 0.5);
    let sigma = OrientedSimplex::new(vec![0, 1, 2])?;
    println!(
        "classical coboundary {} vs transported {}",
        classical_coboundary(&omega, &sigma),
        transported_coboundary(&wc, &omega, &sigma)?
    );
    let f = to_function(wc.orientation(), &omega)?;
    println!("norms: function {} form {}", f.norm_sq(wc.weights()), omega.norm_sq(wc.weights()));
    Ok(())
}
