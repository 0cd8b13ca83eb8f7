#![allow(dead_code)]

use hodge_complex::generators::{cycle, fan, random_complex, simplex_closure};
use hodge_complex::{SimplicialComplex, WeightedComplex};

pub struct Named {
    pub name: String,
    pub wc: WeightedComplex,
    /// Combinatorial weights (m ≡ 1, including m(∅)).
    pub unit: bool,
}

fn named(name: impl Into<String>, c: SimplicialComplex) -> Named {
    Named { name: name.into(), wc: WeightedComplex::combinatorial(c), unit: true }
}

/// Edge, triangles and tetrahedron with and without ∅, fan pieces, and 24 random
/// clique complexes on at most 8 vertices.
pub fn corpus() -> Vec<Named> {
    let mut out = Vec::new();
    for empty in [false, true] {
        let tag = if empty { "+empty" } else { "" };
        out.push(named(format!("edge{tag}"), simplex_closure(1, empty).unwrap()));
        out.push(named(format!("hollow_triangle{tag}"), cycle(3, empty).unwrap()));
        out.push(named(format!("solid_triangle{tag}"), simplex_closure(2, empty).unwrap()));
        out.push(named(format!("tetrahedron{tag}"), simplex_closure(3, empty).unwrap()));
    }
    for n in [2, 3, 5] {
        out.push(Named { name: format!("fan({n})"), wc: fan(n).unwrap().complex, unit: false });
    }
    for seed in 0..24u64 {
        let n = 4 + (seed % 5) as usize;
        let p = 0.35 + 0.1 * (seed % 5) as f64;
        let c = random_complex(n, p, 3, seed, seed % 3 == 0).unwrap();
        out.push(named(format!("random(n={n}, p={p:.2}, seed={seed})"), c));
    }
    out
}
