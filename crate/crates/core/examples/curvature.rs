//! Signed Schrödinger data and Forman curvature.

use hodge_complex::generators::{cycle, simplex_closure};
use hodge_complex::io::curvature_csv;
use hodge_complex::schrodinger::{combinatorial_forman, forman_curvature, schrodinger_data, Flavor};
use hodge_complex::{Simplex, WeightedComplex};

fn main() -> hodge_complex::Result<()> {
    let solid = WeightedComplex::combinatorial(simplex_closure(2, false)?);
    let hollow = WeightedComplex::combinatorial(cycle(3, false)?);
    let e = Simplex::from([0, 1]);
    let other = Simplex::from([0, 2]);
    for (name, wc) in [("solid", &solid), ("hollow", &hollow)] {
        for f in Flavor::ALL {
            let d = schrodinger_data(wc, f);
            println!("{name:>6} {f:>5}: b = {}, o = {:>2}, c(e) = {}", d.b(&e, &other), d.o(&e, &other), d.c(&e));
        }
        println!("{name:>6} forman(e) = {} (closed form {})", forman_curvature(wc)[&e], combinatorial_forman(wc, &e));
    }
    print!("{}", curvature_csv(&WeightedComplex::combinatorial(simplex_closure(3, true)?)));
    Ok(())
}
