//! Exact-arithmetic workbench for finite-dimensional algebras given by
//! structure constants.
//!
//! The crate audits product identities (skew-symmetry, the Koszul-Vinberg
//! identity, Jacobi, the self-Leibniz rule, nested-product nilpotency),
//! generates and solves the polynomial systems those identities impose on
//! dim-2 skew products, and computes cohomology tables for two cochain
//! complexes of a product acting on itself: the alternating complex ([`ce`])
//! and the unrestricted multilinear complex ([`kv`]). Every scalar is an
//! arbitrary-precision rational, so ranks, kernels and betti numbers are
//! unconditional — no tolerance appears anywhere.
//!
//! Modules:
//! - [`exactla`]: rationals, dense matrices, Bareiss rank, nullspaces.
//! - [`algebra`]: structure-constant products, residuals, axiom audits.
//! - [`ce`] / [`kv`]: coboundary matrices and cohomology tables.
//! - [`poly`] / [`classify`]: constraint systems, exact dim-2 variety,
//!   grid-scan oracles, pencil closure checks.
//! - [`suite`]: the built-in verification battery used by the CLI.

pub mod algebra;
pub mod ce;
pub mod classify;
pub mod complex;
pub mod exactla;
pub mod kv;
pub mod poly;
pub mod suite;

pub use algebra::{AuditReport, Axiom, BilinearStructure};
pub use complex::{ComplexError, ComplexReport, DegreeRow};
pub use exactla::{Matrix, Rat};
