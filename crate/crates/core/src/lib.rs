//! Exact computations around generalized Weyl algebras `A(v)`: normal-form
//! arithmetic, centers in characteristic `p`, coset bounds on Galois groups
//! of fixed rings, Weyl-algebra and Dunkl operator models, Calogero-Moser
//! matrix pairs, and prime searches for specializing parameters.
//!
//! Everything is generic over [`Field`]; the aliases below fix the two
//! coefficient fields used in practice.

pub mod arith;
pub mod center;
pub mod cheb;
pub mod cm;
mod error;
pub mod galois;
pub mod gwa;
pub mod operators;

pub use arith::{DenseMatrix, Field, FieldDescriptor, FieldElement, UPoly};
pub use cm::MatrixPair;
pub use error::{Error, Result};
pub use gwa::{GwaAlgebra, GwaElement, GwaGenerators, SymbolPoly};
pub use operators::WeylElement;

pub use num_rational::BigRational as Rational;

pub type Fq = FieldElement;
pub type RationalPoly = UPoly<Rational>;
pub type FqPoly = UPoly<Fq>;
pub type RationalMatrix = DenseMatrix<Rational>;
pub type FqMatrix = DenseMatrix<Fq>;
pub type FqGwa = GwaAlgebra<Fq>;
pub type RationalGwa = GwaAlgebra<Rational>;
pub type RationalWeyl = WeylElement<Rational>;
pub type RationalPair = MatrixPair<Rational>;
