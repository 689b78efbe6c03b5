//! Exact local commutative algebra for divisor germs at the origin.
//!
//! The crate computes over the subring Q[x] of the local ring at 0, with
//! arbitrary-precision rational coefficients, so every decision procedure is
//! exact and reproducible:
//!
//! - sparse polynomials under global and local monomial orderings,
//! - standard bases (Buchberger for global, Mora's tangent cone algorithm
//!   for local and mixed orderings), ideal membership, equality, sums,
//!   products, intersections via tag-variable elimination, leading ideals
//!   and radical membership,
//! - submodules of free modules, syzygies by lifted S-pair reductions, and
//!   Nakayama-minimal generating sets,
//! - the divisor-level procedures: splayedness by three equivalent
//!   criteria, logarithmic derivation modules, Saito's freeness criterion,
//!   normal crossings for unions of smooth components, Jacobian radicality
//!   status and cylinder directions,
//! - Hilbert-Samuel functions and polynomials with the hypersurface closed
//!   form and the additivity defect.
//!
//! All values are immutable after construction; cached standard bases use
//! single-assignment cells, so everything can be shared across threads.

mod engine;
mod error;

pub mod divisor;
pub mod hilbert;
pub mod ideal;
pub mod module;
pub mod poly;
pub mod ring;

pub use engine::Caps;
pub use error::Error;

pub use divisor::{
    multiplicity, Analyzer, CriterionEvidence, DivisorPair, FreenessReport,
    NormalCrossingReport, RadicalStatus, SplayedCriterion, SplayednessReport, Witness,
};
pub use hilbert::{
    additivity_defect, hs_function, hs_hypersurface_closed_form, hs_polynomial,
    AdditivityReport, HsOptions, HsPolynomial,
};
pub use ideal::{DivisionCertificate, Ideal, NormalFormResult};
pub use module::{syzygies, syzygies_with_caps, Submodule, VectorPolynomial};
pub use poly::{Polynomial, Term, DEFAULT_ORDERING};
pub use ring::{ModuleOrdering, Monomial, MonomialOrdering, Ring, RingContext};
