//! Exact arithmetic: ℚ, F_p and F_q, univariate polynomials, dense linear
//! algebra.

pub mod factor;
pub mod field;
pub mod finite;
pub mod linalg;
pub mod poly;

pub use factor::{distinct_degree_profile, is_irreducible, FqPoly};
pub use field::{format_rational, parse_rational, rat, Field};
pub use finite::{enumerate_field, is_prime, make_extension_field, FieldDescriptor, FieldElement};
pub use linalg::DenseMatrix;
pub use poly::UPoly;
