//! Algebras obtained by repeated doubling
//!
//! ```text
//! (a1, a2)(b1, b2) = (a1 b1 + g (conj(b2) a2), a2 conj(b1) + b2 a1)
//! ```
//!
//! starting from a coefficient field with an involution (trivial on `Q`,
//! `sigma` on `Q(sqrt(d))`). The placement of `g` in the first component can
//! be varied (left, middle, right). Elements of the doubled algebra of
//! dimension `2n` use indices `0..n` for `(x, 0)` and `n + i` for `(0, f_i)`.
//!
//! This is the reference ("oracle") product: it recurses through every
//! doubling layer and works for arbitrary elements, not only basis vectors.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Rational, Scalar, SparsePoly};

mod element;
pub mod table;
pub mod verify;
pub mod zero_divisor;

pub use element::Element;

/// Where the doubling parameter sits in `g (conj(b2) a2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `g (conj(b2) a2)`
    L,
    /// `conj(b2) (g a2)`
    M,
    /// `(conj(b2) a2) g`
    R,
}

/// Involution of the coefficient field the tower starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseInvolution {
    Identity,
    /// The Galois automorphism of a quadratic field.
    Galois,
}

#[derive(Clone, Debug, PartialEq)]
struct Layer<S> {
    gamma: Element<S>,
    /// `Some(c)` when `gamma = c * 1`.
    scalar_gamma: Option<S>,
    variant: Variant,
}

/// A coefficient field followed by a sequence of doubling steps.
#[derive(Clone, Debug, PartialEq)]
pub struct CdAlgebra<S: Scalar> {
    field: S::Field,
    involution: BaseInvolution,
    layers: Vec<Layer<S>>,
}

/// Parameters of a tower `E_t`: symbolic `g1..gt` or concrete rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gammas {
    Symbolic,
    Concrete(Vec<Rational>),
}

impl fmt::Display for Gammas {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gammas::Symbolic => f.write_str("symbolic"),
            Gammas::Concrete(g) => {
                let parts: Vec<String> = g.iter().map(|r| r.to_string()).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl CdAlgebra<SparsePoly> {
    /// `E_t` over `Q(g1, ..., gt)` with symbolic parameters.
    pub fn symbolic_tower(t: u32) -> Result<Self> {
        crate::twist::BasisIndex::new(0, t)?;
        let mut alg = Self::base((), BaseInvolution::Identity);
        for m in 1..=t {
            alg = alg.double(Element::basis(0, SparsePoly::var(m)), Variant::L)?;
        }
        Ok(alg)
    }
}

impl CdAlgebra<Rational> {
    /// `E_t` over `Q` with `g_m = gammas[m - 1]`.
    pub fn rational_tower(gammas: &[Rational]) -> Result<Self> {
        crate::twist::BasisIndex::new(0, gammas.len() as u32)?;
        let mut alg = Self::base((), BaseInvolution::Identity);
        for (m, g) in gammas.iter().enumerate() {
            if Scalar::vanishes(g) {
                return Err(Error::InvalidParameter(format!("g{} must be nonzero", m + 1)));
            }
            alg = alg.double(Element::basis(0, g.clone()), Variant::L)?;
        }
        Ok(alg)
    }
}

impl<S: Scalar> CdAlgebra<S> {
    /// The coefficient field itself, a 1-dimensional algebra.
    pub fn base(field: S::Field, involution: BaseInvolution) -> Self {
        CdAlgebra { field, involution, layers: Vec::new() }
    }

    /// One doubling step with parameter `gamma`, an invertible element of `self`.
    pub fn double(&self, gamma: Element<S>, variant: Variant) -> Result<Self> {
        self.check(&gamma)?;
        if gamma.is_zero() {
            return Err(Error::InvalidParameter("doubling parameter must be nonzero".into()));
        }
        let scalar_gamma = gamma.as_scalar(S::zero_in(&self.field));
        if scalar_gamma.is_none() && !self.is_invertible(&gamma)? {
            return Err(Error::InvalidParameter(format!(
                "doubling parameter {gamma} is not invertible"
            )));
        }
        let mut layers = self.layers.clone();
        layers.push(Layer { gamma, scalar_gamma, variant });
        Ok(CdAlgebra { field: self.field.clone(), involution: self.involution, layers })
    }

    pub fn field(&self) -> &S::Field {
        &self.field
    }

    pub fn involution(&self) -> BaseInvolution {
        self.involution
    }

    /// Number of doubling steps.
    pub fn levels(&self) -> u32 {
        self.layers.len() as u32
    }

    /// Dimension over the coefficient field.
    pub fn dim(&self) -> u64 {
        1u64 << self.layers.len()
    }

    /// Parameter of doubling step `m` (1-based), as an element of the algebra below it.
    pub fn gamma(&self, m: u32) -> Option<&Element<S>> {
        self.layers.get(m.checked_sub(1)? as usize).map(|l| &l.gamma)
    }

    pub fn variant(&self, m: u32) -> Option<Variant> {
        self.layers.get(m.checked_sub(1)? as usize).map(|l| l.variant)
    }

    /// True for a tower `E_t` in the classical sense: trivial base involution
    /// and every parameter a scalar.
    pub fn is_scalar_tower(&self) -> bool {
        self.involution == BaseInvolution::Identity
            && self.layers.iter().all(|l| l.scalar_gamma.is_some())
    }

    /// The same algebra with every doubling step switched to `variant`.
    pub fn with_variant(&self, variant: Variant) -> Self {
        let mut out = self.clone();
        for l in &mut out.layers {
            l.variant = variant;
        }
        out
    }

    pub fn one(&self) -> Element<S> {
        Element::basis(0, S::one_in(&self.field))
    }

    pub fn scalar(&self, c: S) -> Element<S> {
        Element::basis(0, c)
    }

    pub fn basis(&self, index: u64) -> Result<Element<S>> {
        if index >= self.dim() {
            return Err(Error::IndexOutOfRange { index, level: self.levels() });
        }
        Ok(Element::basis(index, S::one_in(&self.field)))
    }

    pub fn check(&self, x: &Element<S>) -> Result<()> {
        if let Some(i) = x.max_index() {
            if i >= self.dim() {
                return Err(Error::ForeignElement(format!(
                    "index {i} in an algebra of dimension {}",
                    self.dim()
                )));
            }
        }
        if let Some((i, _)) = x.terms().find(|(_, c)| !c.belongs_to(&self.field)) {
            return Err(Error::ForeignElement(format!(
                "coefficient of f{i} lives in a different field"
            )));
        }
        Ok(())
    }

    pub fn mul(&self, x: &Element<S>, y: &Element<S>) -> Result<Element<S>> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_at(self.layers.len(), x, y))
    }

    fn mul_at(&self, level: usize, x: &Element<S>, y: &Element<S>) -> Element<S> {
        if x.is_zero() || y.is_zero() {
            return Element::zero();
        }
        if level == 0 {
            let c = x.coeff(0).expect("base element").mul_ref(y.coeff(0).expect("base element"));
            return Element::basis(0, c);
        }
        let half = 1u64 << (level - 1);
        let below = level - 1;
        let (a1, a2) = x.split(half);
        let (b1, b2) = y.split(half);

        let mut first = self.mul_at(below, &a1, &b1);
        if !a2.is_zero() && !b2.is_zero() {
            let b2c = self.conj_at(below, &b2);
            let layer = &self.layers[below];
            let twisted = match layer.variant {
                Variant::L => self.gamma_left(layer, below, &self.mul_at(below, &b2c, &a2)),
                Variant::M => self.mul_at(below, &b2c, &self.gamma_left(layer, below, &a2)),
                Variant::R => self.gamma_right(layer, below, &self.mul_at(below, &b2c, &a2)),
            };
            first = first.add(&twisted);
        }
        let second = if a2.is_zero() && b2.is_zero() {
            Element::zero()
        } else {
            let b1c = self.conj_at(below, &b1);
            self.mul_at(below, &a2, &b1c).add(&self.mul_at(below, &b2, &a1))
        };
        Element::join(first, second, half)
    }

    fn gamma_left(&self, layer: &Layer<S>, level: usize, x: &Element<S>) -> Element<S> {
        match (&layer.scalar_gamma, self.involution) {
            (Some(c), BaseInvolution::Identity) => x.scale(c),
            _ => self.mul_at(level, &layer.gamma, x),
        }
    }

    fn gamma_right(&self, layer: &Layer<S>, level: usize, x: &Element<S>) -> Element<S> {
        match (&layer.scalar_gamma, self.involution) {
            (Some(c), BaseInvolution::Identity) => x.scale(c),
            _ => self.mul_at(level, x, &layer.gamma),
        }
    }

    /// `conj(a1, a2) = (conj(a1), -a2)` unrolled: the `f_0` coefficient gets the
    /// base involution, every other coefficient is negated.
    fn conj_at(&self, _level: usize, x: &Element<S>) -> Element<S> {
        Element::from_terms(x.terms().map(|(i, c)| {
            let v = match (i, self.involution) {
                (0, BaseInvolution::Identity) => c.clone(),
                (0, BaseInvolution::Galois) => c.galois(),
                _ => c.neg_ref(),
            };
            (i, v)
        }))
    }

    pub fn conj(&self, x: &Element<S>) -> Result<Element<S>> {
        self.check(x)?;
        Ok(self.conj_at(self.layers.len(), x))
    }

    /// `x + conj(x)` as an element.
    pub fn trace_element(&self, x: &Element<S>) -> Result<Element<S>> {
        Ok(x.add(&self.conj(x)?))
    }

    /// `x conj(x)` as an element.
    pub fn norm_element(&self, x: &Element<S>) -> Result<Element<S>> {
        self.mul(x, &self.conj(x)?)
    }

    /// Trace `t(x) = x + conj(x)`, a multiple of the unit.
    pub fn trace(&self, x: &Element<S>) -> Result<S> {
        self.trace_element(x)?.as_scalar(S::zero_in(&self.field)).ok_or(Error::NotScalar)
    }

    /// Norm `n(x) = x conj(x)`, a multiple of the unit when the involution is scalar.
    pub fn norm(&self, x: &Element<S>) -> Result<S> {
        self.norm_element(x)?.as_scalar(S::zero_in(&self.field)).ok_or(Error::NotScalar)
    }

    /// `(xy)z - x(yz)`.
    pub fn associator(&self, x: &Element<S>, y: &Element<S>, z: &Element<S>) -> Result<Element<S>> {
        let left = self.mul(&self.mul(x, y)?, z)?;
        let right = self.mul(x, &self.mul(y, z)?)?;
        Ok(left.sub(&right))
    }

    /// Splits `x` into the pair `(a1, a2)` of the outermost doubling.
    pub fn halves(&self, x: &Element<S>) -> Result<(Element<S>, Element<S>)> {
        self.check(x)?;
        if self.layers.is_empty() {
            return Err(Error::InvalidParameter("the base field is not a doubling".into()));
        }
        Ok(x.split(self.dim() / 2))
    }

    /// The algebra before the outermost doubling step.
    pub fn parent(&self) -> Option<Self> {
        let mut out = self.clone();
        out.layers.pop()?;
        Some(out)
    }

    /// Dimension over `Q`, when the coefficients are finite-dimensional over `Q`.
    pub fn rational_dim(&self) -> Option<usize> {
        S::rational_dim(&self.field).map(|k| k * self.dim() as usize)
    }

    /// `j`-th basis vector over `Q`: `c_k f_i` with `j = i * k_dim + k`.
    pub fn rational_basis(&self, j: usize) -> Result<Element<S>> {
        let k = S::rational_dim(&self.field).ok_or(Error::NoRationalCoordinates)?;
        let index = (j / k) as u64;
        if index >= self.dim() {
            return Err(Error::IndexOutOfRange { index, level: self.levels() });
        }
        Ok(Element::basis(index, S::rational_basis(&self.field, j % k)))
    }

    /// Coordinates of `x` over `Q` in the basis of [`CdAlgebra::rational_basis`].
    pub fn rational_coords(&self, x: &Element<S>) -> Result<Vec<Rational>> {
        let n = self.rational_dim().ok_or(Error::NoRationalCoordinates)?;
        let k = n / self.dim() as usize;
        let mut out = vec![<Rational as Scalar>::zero_in(&()); n];
        for (i, c) in x.terms() {
            let coords = c.rational_coords().ok_or(Error::NoRationalCoordinates)?;
            for (off, v) in coords.into_iter().enumerate() {
                out[i as usize * k + off] = v;
            }
        }
        Ok(out)
    }

    /// Inverse of [`CdAlgebra::rational_coords`].
    pub fn from_rational_coords(&self, coords: &[Rational]) -> Result<Element<S>> {
        let n = self.rational_dim().ok_or(Error::NoRationalCoordinates)?;
        if coords.len() != n {
            return Err(Error::InvalidParameter(format!("expected {n} coordinates")));
        }
        let mut x = Element::zero();
        for (j, v) in coords.iter().enumerate() {
            if !Scalar::vanishes(v) {
                let b = self.rational_basis(j)?;
                x = x.add(&b.map(|c| c.mul_ref(&S::from_rational(&self.field, v))));
            }
        }
        Ok(x)
    }

    /// Matrix of `y -> x y` over `Q`; column `j` holds the coordinates of
    /// `x * b_j` for the `j`-th rational basis vector `b_j`.
    pub fn left_mult_matrix(&self, x: &Element<S>) -> Result<Matrix> {
        let n = self.rational_dim().ok_or(Error::NoRationalCoordinates)?;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            cols.push(self.rational_coords(&self.mul(x, &self.rational_basis(j)?)?)?);
        }
        Ok(Matrix::from_columns(&cols))
    }

    /// Left multiplication matrix together with its invertibility (exact determinant).
    pub fn left_mult_invertible(&self, x: &Element<S>) -> Result<(Matrix, bool)> {
        let m = self.left_mult_matrix(x)?;
        let invertible = !Scalar::vanishes(&m.determinant());
        Ok((m, invertible))
    }

    fn is_invertible(&self, x: &Element<S>) -> Result<bool> {
        Ok(self.left_mult_invertible(x)?.1)
    }
}
