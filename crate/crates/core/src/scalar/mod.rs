//! Exact coefficient types.
//!
//! Three coefficient rings are supported: the rationals, quadratic fields
//! `Q(sqrt(d))` with their Galois involution, and sparse polynomials in the
//! doubling parameters `g1, g2, ...` over the rationals. All of them keep a
//! canonical zero-pruned representation so that `==` is structural equality.

use std::fmt;

mod poly;
mod quadext;
mod rational;

pub use poly::{Monomial, SparsePoly};
pub use quadext::{QuadExt, QuadField};
pub use rational::{parse_rational, parse_rational_list, Rational};

/// Coefficient ring used by the algebras in this crate.
///
/// Values that need a field context (the radicand of `Q(sqrt(d))`) get it
/// through [`Scalar::Field`]; the other rings use `()`.
pub trait Scalar: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync {
    type Field: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero_in(field: &Self::Field) -> Self;
    fn one_in(field: &Self::Field) -> Self;
    fn from_rational(field: &Self::Field, r: &Rational) -> Self;

    fn vanishes(&self) -> bool;
    fn belongs_to(&self, field: &Self::Field) -> bool;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    /// The field automorphism `sigma`. Identity unless the ring is a quadratic field.
    fn galois(&self) -> Self;

    /// Dimension of the ring as a vector space over `Q`, if finite.
    fn rational_dim(field: &Self::Field) -> Option<usize>;

    /// Coordinates over `Q` in the basis `1, sqrt(d)` (or just `1`).
    fn rational_coords(&self) -> Option<Vec<Rational>>;

    /// `k`-th basis element of the ring over `Q`.
    fn rational_basis(field: &Self::Field, k: usize) -> Self;
}

impl Scalar for Rational {
    type Field = ();

    fn zero_in(_: &()) -> Self {
        num_traits::Zero::zero()
    }
    fn one_in(_: &()) -> Self {
        num_traits::One::one()
    }
    fn from_rational(_: &(), r: &Rational) -> Self {
        r.clone()
    }
    fn vanishes(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn belongs_to(&self, _: &()) -> bool {
        true
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn galois(&self) -> Self {
        self.clone()
    }
    fn rational_dim(_: &()) -> Option<usize> {
        Some(1)
    }
    fn rational_coords(&self) -> Option<Vec<Rational>> {
        Some(vec![self.clone()])
    }
    fn rational_basis(_: &(), _k: usize) -> Self {
        num_traits::One::one()
    }
}
