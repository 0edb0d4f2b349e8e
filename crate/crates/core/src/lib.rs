//! Exact computations with monomial ideals and simplicial complexes.
//!
//! The crate is organised around a few value types:
//!
//! - [`Monomial`] and [`MonomialIdeal`]: exponent vectors and minimal generating
//!   sets, with powers, colons, intersections and polarization.
//! - [`SimplicialComplex`]: facets over a labelled ground set, with the
//!   Stanley–Reisner correspondence, Alexander duality, links and deletions.
//! - [`Graph`]: edge ideals, cover ideals, independence complexes and the
//!   chordality, bipartiteness and matching invariants.
//!
//! Decision procedures return a [`Decision`] that carries a witness which can be
//! replayed independently: shedding trees for vertex decomposability, splitting
//! trees for vertex splittability, rational `λ` certificates for integral
//! closure membership and colon witnesses for associated primes.
//!
//! All arithmetic is exact; linear programs are solved over `BigRational`.

pub mod certificate;
pub mod complex;
pub mod constructions;
pub mod corpus;
pub mod decomp;
pub mod error;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod monomial;
pub mod normality;
pub mod report;

pub use certificate::Decision;
pub use complex::{alexander_dual, complex_of_ideal, SimplicialComplex};
pub use constructions::{
    build_delta_chi, build_i_chi, build_l, check_colouring, is_polymatroidal, is_weakly_polymatroidal, Colouring,
    OrderedIdeal,
};
pub use decomp::{
    is_vertex_decomposable, is_vertex_splittable, verify_shedding_tree, verify_splitting_tree, SheddingTree,
    SplittingTree,
};
pub use error::{Error, Result};
pub use graph::{Graph, GraphProfile};
pub use monomial::{default_vars, Monomial, MonomialIdeal};
pub use normality::{
    analytic_spread, associated_primes, closure_membership, closure_membership_oracle, integral_closure_power,
    is_normal_up_to, persistence_check, strong_persistence_check,
};
