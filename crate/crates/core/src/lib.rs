//! Exact maximum-weight induced bipartite subgraph (equivalently, minimum
//! weight odd cycle transversal) on P5-free graphs.
//!
//! The solver builds a polynomial covering family of bipartite vertex sets
//! ([`covering`]), splits its members into connected parts, and picks a
//! maximum-weight collection of pairwise non-touching parts by solving
//! independent set on the resulting blob graph ([`blob`]).

pub mod blob;
pub mod covering;
pub mod graph;
pub mod mwis;
pub mod oracle;
pub mod structure;
mod vertex_set;

pub use blob::{solve_oct, ClassStatus, OctError, Solution, SolveOptions};
pub use graph::{Graph, GraphError, Relabel, Weights};
pub use mwis::{mwis_brute, mwis_exact, IsResult};
pub use oracle::{gen_p5free, is_p5_free, oct_brute, GenKind, GenModel, OracleError, P5Check};
pub use structure::{Bipartition, SeedDominator};
pub use vertex_set::VertexSet;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
