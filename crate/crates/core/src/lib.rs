//! Symbolic engine for cohomology, support, and build relations of
//! differential graded modules over non-positive commutative DG-rings.
//!
//! The layers, bottom to top:
//!
//! - [`scalar`], [`monomial`], [`poly`], [`matrix`], [`parse`]: exact
//!   arithmetic over ℚ or 𝔽ₚ, sparse polynomials, dense polynomial
//!   matrices, and a small expression grammar.
//! - [`groebner`]: Buchberger's algorithm for ideals and submodules,
//!   syzygies and lifts through a tag block, radical membership.
//! - [`ring`]: finitely presented rings `k[x]/I` with canonical forms.
//! - [`complex`]: bounded complexes of free modules, cohomology
//!   presentations, truncation, tensor products, Fitting supports.
//! - [`dg`]: non-positive DG-algebras and DG-modules, tensor products,
//!   underlying complexes, degree-zero reduction.
//! - [`tate`]: semifree resolutions by stagewise generator adjunction and
//!   the dual coreduction functor.
//! - [`strata`]: small supports, amplitude, the builds / finitely-builds
//!   relations, thick-subcategory membership, and verdict certificates.
//! - [`oracle`]: independent cross-checking routes (point sampling, dense
//!   linear algebra, brute-force radical membership).

pub mod complex;
pub mod dg;
pub mod error;
pub mod groebner;
pub mod matrix;
pub mod monomial;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod strata;
pub mod tate;

pub use error::{Error, Result};
pub use scalar::{Coeff, FieldKind, Fp};

/// Polynomial with rational coefficients.
pub type QPoly = poly::Poly<num_rational::BigRational>;
/// Polynomial with prime-field coefficients.
pub type FpPoly = poly::Poly<scalar::Fp>;
/// Presented ring over the rationals.
pub type QRing = ring::PresentedRing<num_rational::BigRational>;
/// Presented ring over a prime field.
pub type FpRing = ring::PresentedRing<scalar::Fp>;
