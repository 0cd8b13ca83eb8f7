//! Up, down and Hodge Laplacians, and Dirichlet versus Neumann on a truncation.

use hodge_complex::generators::{cycle, fan_truncation};
use hodge_complex::laplacian::{assemble, down_block, laplacian};
use hodge_complex::spectral::{eigenvalues, operator_spectrum};
use hodge_complex::{BoundaryCondition, LaplacianFlavor, LaplacianSpec, WeightedComplex};

fn main() -> hodge_complex::Result<()> {
    let square = WeightedComplex::combinatorial(cycle(4, false)?);
    for flavor in [LaplacianFlavor::Up, LaplacianFlavor::Down, LaplacianFlavor::Hodge] {
        for k in 0..=1 {
            let op = laplacian(&square, flavor, k)?;
            let sp = operator_spectrum(&op, &square, flavor.to_string())?;
            println!("{flavor:>5} k={k}: {:?}", sp.eigenvalues.iter().map(|x| (x * 1e9).round() / 1e9 + 0.0).collect::<Vec<_>>());
        }
    }
    print!("up_0 of the square as triplets:\n{}", laplacian(&square, LaplacianFlavor::Up, 0)?.to_triplet_text());

    let t = fan_truncation(3)?;
    println!("fan truncation: {} inner, {} halo simplices", t.inner().len(), t.halo().len());
    for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
        let (idx, m) = down_block(&t, 1, bc);
        let sq: Vec<f64> = idx.iter().map(|s| t.ambient().m(s).sqrt()).collect();
        let s = nalgebra::DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| sq[i] * m[(i, j)] / sq[j]);
        let ev = eigenvalues(&((&s + s.transpose()) * 0.5))?;
        println!("down_1 {bc}: size {}, largest eigenvalue {:.4}", idx.len(), ev.last().unwrap());
    }
    let sigma = assemble(&t, &LaplacianSpec::new(LaplacianFlavor::Sigma, BoundaryCondition::Neumann, Some(1)))?;
    println!("sigma_1 on the truncation has {} nonzeros", sigma.nnz());
    Ok(())
}
