//! Finite-field recognition in matrix algebras over F_p, and the structure
//! of spread sets of Dembowski-Ostrom polynomials.
//!
//! The main entry points:
//!
//! - [`finite_field_decide`] decides whether the algebra generated by a set
//!   of invertible matrices is a field, without factoring `p^n - 1`.
//! - [`DOPoly`] models `sum u_ij x^(p^i + p^j)` over an explicit F_{p^n};
//!   [`DOPoly::is_planar`] and [`DOPoly::spread_basis`] expose its
//!   derivative matrices.
//! - [`quot_set`] and [`rcf_multiset`] build the quotient set of a spread set
//!   and its similarity-class multiset, which is invariant under linear
//!   equivalence.
//! - [`decide_x2`] tests linear equivalence to `x^2`.
//! - [`twisted`] checks the field structure inside quotient sets of the
//!   planar monomials `x^(p^k + 1)`.

pub mod dopoly;
pub mod error;
pub mod ext;
pub mod field;
pub mod format;
pub mod fp;
pub mod linearized;
pub mod matrix;
pub mod poly;
pub mod quot;
pub mod rcf;
pub mod twisted;

#[cfg(feature = "oracle")]
#[doc(hidden)]
pub mod oracle;

pub use dopoly::{DOPoly, SpreadBasis};
pub use error::{Error, Result};
pub use ext::{ExtElem, ExtFieldCtx};
pub use field::{compute_generator, finite_field_decide, FieldDecision, NotFieldWitness};
pub use fp::{fp_inv, FpScalar, PrimeModulus};
pub use linearized::LinearizedPoly;
pub use matrix::{span_membership, FpMatrix};
pub use poly::{find_irreducible, is_irreducible, FpPoly};
pub use quot::{
    decide_x2, quot_set, quot_upper_bound, rcf_multiset, twisted_quot_cardinality, QuotSet,
    RcfMultiset, X2Certificate, X2Failure,
};
pub use rcf::{rcf, similar, RcfForm};
