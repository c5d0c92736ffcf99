//! Operator models: the first Weyl algebra, its cyclic fixed rings as
//! generalized Weyl algebras, and the rank-one Dunkl operator.

pub mod dunkl;
pub mod fixed_ring;
pub mod weyl;

pub use dunkl::{dunkl_apply, dunkl_verify, dunkl_verify_symbolic, DunklCertificate};
pub use fixed_ring::{build_fixed_ring_iso, FixedRingIso, ImageCheck};
pub use weyl::WeylElement;
