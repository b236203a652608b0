//! Exact invariant cohomology of finite-dimensional Lie algebras.
//!
//! Everything is computed on the Chevalley-Eilenberg complex of
//! left-invariant forms with exact rational (or Gaussian rational)
//! arithmetic: de Rham, Dolbeault, Bott-Chern and Aeppli groups for
//! integrable complex structures, the six refining subquotients between
//! them, harmonic-kernel cross-checks, cohomology subgroups cut out by
//! (p,q)-types for almost-complex and D-complex structures, and the
//! symplectic cohomologies attached to a nondegenerate closed 2-form.

pub mod scalar;
pub mod sympl;
pub mod linalg;
pub mod exterior;
pub mod catalog;
pub mod cohom;
pub mod complex;
pub mod dcx;
pub mod harmonic;
pub mod poly;
pub mod lie;
pub mod lizhang;

pub use scalar::{parse_scalar, Rat, Scalar};
pub use lie::{parse_salamon, LieAlgebra};
