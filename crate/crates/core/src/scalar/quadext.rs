use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// The quadratic field `Q(sqrt(d))`. Construction rejects perfect squares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    d: i64,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 {
            let root = (d as u64).sqrt();
            if root * root == d as u64 {
                return Err(Error::SquareRadicand(d));
            }
        }
        Ok(Self { d })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn element(&self, a: Rational, b: Rational) -> QuadExt {
        QuadExt { a, b, d: self.d }
    }

    pub fn rational(&self, a: Rational) -> QuadExt {
        self.element(a, Rational::zero())
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(&self) -> QuadExt {
        self.element(Rational::zero(), Rational::one())
    }

    pub fn from_ints(&self, a: i64, b: i64) -> QuadExt {
        self.element(Rational::from_integer(a.into()), Rational::from_integer(b.into()))
    }
}

/// `a + b*sqrt(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: i64,
}

impl QuadExt {
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn field(&self) -> QuadField {
        QuadField { d: self.d }
    }

    /// True when the element lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::FieldMismatch { left: self.d, right: other.d });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(QuadExt { a: &self.a + &other.a, b: &self.b + &other.b, d: self.d })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(QuadExt { a: &self.a - &other.a, b: &self.b - &other.b, d: self.d })
    }

    /// `(xa + xb s)(ya + yb s) = (xa ya + d xb yb) + (xa yb + xb ya) s`
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = Rational::from_integer(BigInt::from(self.d));
        Ok(QuadExt {
            a: &self.a * &other.a + d * &self.b * &other.b,
            b: &self.a * &other.b + &self.b * &other.a,
            d: self.d,
        })
    }

    /// `sigma(a + b s) = a - b s`.
    pub fn sigma(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    /// Field norm `x * sigma(x) = a^2 - d b^2`, a rational.
    pub fn field_norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(self.d.into()) * &self.b * &self.b
    }

    /// `sigma(x) / (x sigma(x))`.
    pub fn inv(&self) -> Result<Self> {
        let n = self.field_norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let s = self.sigma();
        Ok(QuadExt { a: s.a / &n, b: s.b / n, d: self.d })
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("sqrt({})", self.d);
        let radical = |b: &Rational| {
            if b.is_one() {
                root.clone()
            } else {
                format!("{b}*{root}")
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b.is_negative() => write!(f, "-{}", radical(&-&self.b)),
            (true, false) => write!(f, "{}", radical(&self.b)),
            (false, false) if self.b.is_negative() => {
                write!(f, "{} - {}", self.a, radical(&-&self.b))
            }
            (false, false) => write!(f, "{} + {}", self.a, radical(&self.b)),
        }
    }
}

impl super::Scalar for QuadExt {
    type Field = QuadField;

    fn zero_in(field: &QuadField) -> Self {
        field.rational(Rational::zero())
    }
    fn one_in(field: &QuadField) -> Self {
        field.rational(Rational::one())
    }
    fn from_rational(field: &QuadField, r: &Rational) -> Self {
        field.rational(r.clone())
    }
    fn vanishes(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn belongs_to(&self, field: &QuadField) -> bool {
        self.d == field.d
    }
    // Field contexts are validated at the algebra boundary; a mismatch here is a bug.
    fn add_ref(&self, other: &Self) -> Self {
        self.try_add(other).expect("quadratic field mismatch")
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.try_sub(other).expect("quadratic field mismatch")
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.try_mul(other).expect("quadratic field mismatch")
    }
    fn neg_ref(&self) -> Self {
        QuadExt { a: -&self.a, b: -&self.b, d: self.d }
    }
    fn galois(&self) -> Self {
        self.sigma()
    }
    fn rational_dim(_: &QuadField) -> Option<usize> {
        Some(2)
    }
    fn rational_coords(&self) -> Option<Vec<Rational>> {
        Some(vec![self.a.clone(), self.b.clone()])
    }
    fn rational_basis(field: &QuadField, k: usize) -> Self {
        if k == 0 {
            Self::one_in(field)
        } else {
            field.sqrt()
        }
    }
}
