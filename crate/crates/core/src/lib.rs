//! Exact state-sum torsion of balanced bipartite spatial graphs.

pub mod algebra;
pub mod diagram;
pub mod generate;
pub mod heegaard;
pub mod moves;
pub mod resolve;
pub mod torsion;

pub use algebra::{unit_equiv, unit_normalize, HomologyModel, LaurentPoly};
pub use diagram::{parse_diagram, GraphDiagram};

/// Laurent polynomial with machine integer coefficients.
pub type Poly = LaurentPoly<i64>;
/// Laurent polynomial with arbitrary precision coefficients.
pub type BigPoly = LaurentPoly<num_bigint::BigInt>;
