//! Cayley–Dickson doubling towers with exact arithmetic, a closed-form sign
//! map for basis products, and nonassociative quaternion algebras over
//! quadratic fields.
//!
//! The basis of the `t`-fold doubling `E_t` is `f_0 = 1, f_1, ..., f_(2^t - 1)`
//! with `f_(2^s + i) = (0, f_i)`. Basis products are single terms:
//!
//! ```
//! use cdtwist::twist::basis_product;
//!
//! let term = basis_product(3, 3, 5).unwrap();
//! assert_eq!(term.to_string(), "+g1 * f6");
//! ```
//!
//! The doubling oracle in [`algebra`] multiplies arbitrary elements and is the
//! reference every fast path is checked against.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod nonassoc;
pub mod scalar;
pub mod twist;

pub use algebra::{BaseInvolution, CdAlgebra, Element, Gammas, Variant};
pub use error::{Error, Result};
pub use nonassoc::NonAssocQuaternion;
pub use scalar::{QuadExt, QuadField, Rational, Scalar, SparsePoly};
pub use twist::{basis_product, theta, BasisIndex, Sign, TwistTerm};
