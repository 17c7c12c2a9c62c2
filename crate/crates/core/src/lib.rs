//! Exact computation of local-cohomology `a_i`-invariants and
//! Castelnuovo-Mumford regularity for powers of cover ideals of unimodular
//! hypergraphs.
//!
//! The crate is layered bottom-up:
//!
//! - [`exactlin`]: rational matrices, ranks, determinants and an exact simplex solver.
//! - [`hypergraph`]: hypergraphs, incidence matrices, total unimodularity, vertex covers.
//! - [`monomial`]: monomial ideals, cover ideals, ordinary and symbolic powers.
//! - [`complexes`]: simplicial complexes, degree complexes and reduced homology.
//! - [`polytopes`]: the parametric edge-sum polytopes and their optimal values.
//! - [`cohomology`]: graded local cohomology via degree complexes, `a_i`-invariants
//!   by brute-force scan and by edge patterns, regularity and linear fits.

pub mod checks;
pub mod cohomology;
pub mod complexes;
pub mod exactlin;
pub mod hypergraph;
pub mod monomial;
pub mod polytopes;

pub use cohomology::{AiValue, LinearFit, Method};
pub use complexes::{DegreeVector, SimplicialComplex};
pub use exactlin::{Field, LinearProgram, LpOutcome, Rational, RationalMatrix};
pub use hypergraph::{Hypergraph, VertexSet};
pub use monomial::{Monomial, MonomialIdeal};
pub use polytopes::EdgePattern;
