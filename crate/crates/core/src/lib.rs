//! Weighted simplicial complexes: coboundary and boundary operators, up, down
//! and Hodge Laplacians, signed Schrödinger data with Forman curvature, and
//! finite diagnostics for boundedness and self-adjointness criteria.
//!
//! ```
//! use hodge_complex::{generators, laplacian, spectral, WeightedComplex};
//!
//! let hollow = WeightedComplex::combinatorial(generators::cycle(3, false).unwrap());
//! let op = laplacian::laplacian(&hollow, laplacian::LaplacianFlavor::Up, 0).unwrap();
//! let sp = spectral::operator_spectrum(&op, &hollow, "up").unwrap();
//! assert_eq!(sp.zero_dim(), 1);
//! ```

pub mod bridge;
pub mod checks;
pub mod cli;
pub mod complex;
pub mod criteria;
pub mod error;
pub mod function;
pub mod generators;
pub mod io;
pub mod laplacian;
pub mod local;
pub mod operators;
pub mod orientation;
pub mod schrodinger;
pub mod simplex;
pub mod spectral;
pub mod weighted;
pub mod weights;

pub use complex::{EmptyPolicy, SimplicialComplex};
pub use error::{Error, Result};
pub use function::GradedFunction;
pub use laplacian::{BoundaryCondition, LaplacianFlavor, LaplacianSpec, Truncation};
pub use operators::LevelOperator;
pub use orientation::OrientationAssignment;
pub use schrodinger::Flavor;
pub use simplex::Simplex;
pub use weighted::{build_complex, WeightSpec, WeightedComplex};
pub use weights::{WeightAssignment, WeightScheme};
