//! Nonassociative quaternion algebras `H = E + E` over a quadratic field
//! `E = Q(sqrt(d))`, with product
//!
//! ```text
//! (a1, a2)(b1, b2) = (a1 b1 + g (sigma(b2) a2), a2 sigma(b1) + b2 a1),   g in E \ Q
//! ```
//!
//! Over `Q` the algebra is 4-dimensional with basis
//! `1 = (1, 0)`, `f1 = (sqrt(d), 0)`, `f2 = (0, 1)`, `f3 = (0, sqrt(d))`,
//! so `f1^2 = d`, `f2^2 = g`, `f3 = f1 f2`. Doubling `H` once more with a
//! parameter `delta in E` gives an 8-dimensional algebra with basis
//! `f_j = sqrt(d)^(j mod 2) e_(j/2)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BaseInvolution, CdAlgebra, Element, Variant};
use crate::error::{Error, Result};
use crate::scalar::{QuadExt, QuadField, Rational, Scalar};

/// Parameters of `H`: the radicand `d`, the doubling parameter `gamma`, and
/// `alpha = f1^2`, which the `E + E` realization forces to equal `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonAssocQuatSpec {
    pub d: i64,
    pub gamma: QuadExt,
    pub alpha: Rational,
}

#[derive(Clone, Debug)]
pub struct NonAssocQuaternion {
    spec: NonAssocQuatSpec,
    field: QuadField,
    algebra: CdAlgebra<QuadExt>,
}

/// `x x^2` and `x^2 x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThirdPower<S> {
    pub x_x2: Element<S>,
    pub x2_x: Element<S>,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlexFailure<S> {
    pub i: usize,
    pub k: usize,
    /// `f_i (f_k f_i)`
    pub left: Element<S>,
    /// `(f_i f_k) f_i`
    pub right: Element<S>,
}

/// Result of checking `f_i (f_k f_i) = (f_i f_k) f_i` over ordered pairs of
/// distinct non-unit basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlexReport<S> {
    pub pairs_checked: Vec<(usize, usize)>,
    pub failures: Vec<FlexFailure<S>>,
}

impl<S> FlexReport<S> {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn passed(&self) -> usize {
        self.pairs_checked.len() - self.failures.len()
    }
}

/// Which slot of the associator an element was tested in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// `(x, a, b)`
    First,
    /// `(a, x, b)`
    Middle,
    /// `(a, b, x)`
    Last,
}

impl NonAssocQuaternion {
    /// Builds `H` for `E = Q(sqrt(d))`. Rejects `gamma` in `Q`, where
    /// `sigma(gamma) = gamma`.
    pub fn new(d: i64, gamma: QuadExt) -> Result<Self> {
        let field = QuadField::new(d)?;
        if !gamma.belongs_to(&field) {
            return Err(Error::FieldMismatch { left: d, right: gamma.d() });
        }
        if gamma.is_rational() {
            return Err(Error::InvalidParameter(format!(
                "gamma = {gamma} lies in Q, so sigma(gamma) = gamma"
            )));
        }
        let algebra = CdAlgebra::base(field, BaseInvolution::Galois)
            .double(Element::basis(0, gamma.clone()), Variant::L)?;
        let alpha = Rational::from_integer(d.into());
        Ok(Self { spec: NonAssocQuatSpec { d, gamma, alpha }, field, algebra })
    }

    pub fn spec(&self) -> &NonAssocQuatSpec {
        &self.spec
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn algebra(&self) -> &CdAlgebra<QuadExt> {
        &self.algebra
    }

    /// Basis vector `f_i` over `Q`, `i` in `0..4`.
    pub fn basis(&self, i: usize) -> Result<Element<QuadExt>> {
        self.algebra.rational_basis(i)
    }

    /// The element `(a1, a2)` of `E + E`.
    pub fn from_pair(&self, a1: QuadExt, a2: QuadExt) -> Result<Element<QuadExt>> {
        let x = Element::from_terms([(0, a1), (1, a2)]);
        self.algebra.check(&x)?;
        Ok(x)
    }

    pub fn to_pair(&self, x: &Element<QuadExt>) -> Result<(QuadExt, QuadExt)> {
        self.algebra.check(x)?;
        let zero = QuadExt::zero_in(&self.field);
        let get = |i| x.coeff(i).cloned().unwrap_or_else(|| zero.clone());
        Ok((get(0), get(1)))
    }

    /// Coordinates in the basis `1, f1, f2, f3`.
    pub fn to_basis_coords(&self, x: &Element<QuadExt>) -> Result<Vec<Rational>> {
        self.algebra.rational_coords(x)
    }

    pub fn from_basis_coords(&self, coords: &[Rational]) -> Result<Element<QuadExt>> {
        self.algebra.from_rational_coords(coords)
    }

    /// `e` viewed as `(e, 0)`.
    pub fn embed(&self, e: QuadExt) -> Element<QuadExt> {
        Element::basis(0, e)
    }

    pub fn mul(&self, x: &Element<QuadExt>, y: &Element<QuadExt>) -> Result<Element<QuadExt>> {
        self.algebra.mul(x, y)
    }

    /// One more doubling with parameter `delta in E`, placed on the left.
    pub fn doubled(&self, delta: QuadExt) -> Result<CdAlgebra<QuadExt>> {
        if !delta.belongs_to(&self.field) {
            return Err(Error::FieldMismatch { left: self.spec.d, right: delta.d() });
        }
        self.algebra.double(self.embed(delta), Variant::L)
    }

    /// Whether `f_i (x 1) = (sigma(x) 1) f_i`.
    pub fn sigma_commutation_check(&self, i: usize, x: &QuadExt) -> Result<bool> {
        if !(1..=3).contains(&i) {
            return Err(Error::InvalidParameter(format!("basis index {i} not in 1..=3")));
        }
        let fi = self.basis(i)?;
        let left = self.mul(&fi, &self.embed(x.clone()))?;
        let right = self.mul(&self.embed(x.sigma()), &fi)?;
        Ok(left == right)
    }

    /// Whether `(e, 0)` associates with `trials` random pairs in every slot.
    pub fn nucleus_membership(&self, e: &QuadExt, trials: usize, seed: u64) -> Result<bool> {
        Ok(nucleus_witness(&self.algebra, &self.embed(e.clone()), trials, seed)?.is_none())
    }

    /// Renders `x` as `a1 + a2 j` with coefficients in `E`.
    pub fn display(&self, x: &Element<QuadExt>) -> String {
        display_e_view(x, &["1", "j"])
    }
}

/// `x x^2` and `x^2 x` in any algebra.
pub fn check_third_power_assoc<S: Scalar>(alg: &CdAlgebra<S>, x: &Element<S>) -> Result<ThirdPower<S>> {
    let x2 = alg.mul(x, x)?;
    let x_x2 = alg.mul(x, &x2)?;
    let x2_x = alg.mul(&x2, x)?;
    let equal = x_x2 == x2_x;
    Ok(ThirdPower { x_x2, x2_x, equal })
}

/// Checks `f_i (f_k f_i) = (f_i f_k) f_i` for all ordered pairs `i != k` of
/// non-unit basis vectors over `Q`.
pub fn check_flexible_basis_law<S: Scalar>(alg: &CdAlgebra<S>) -> Result<FlexReport<S>> {
    let n = alg.rational_dim().ok_or(Error::NoRationalCoordinates)?;
    let basis = (0..n).map(|j| alg.rational_basis(j)).collect::<Result<Vec<_>>>()?;
    let mut report = FlexReport { pairs_checked: Vec::new(), failures: Vec::new() };
    for i in 1..n {
        for k in 1..n {
            if i == k {
                continue;
            }
            let (fi, fk) = (&basis[i], &basis[k]);
            let left = alg.mul(fi, &alg.mul(fk, fi)?)?;
            let right = alg.mul(&alg.mul(fi, fk)?, fi)?;
            report.pairs_checked.push((i, k));
            if left != right {
                report.failures.push(FlexFailure { i, k, left, right });
            }
        }
    }
    Ok(report)
}

fn random_element(alg: &CdAlgebra<QuadExt>, rng: &mut ChaCha8Rng) -> Result<Element<QuadExt>> {
    let n = alg.rational_dim().expect("quadratic coefficients");
    let coords: Vec<Rational> =
        (0..n).map(|_| Rational::from_integer(rng.gen_range(-3i64..=3).into())).collect();
    alg.from_rational_coords(&coords)
}

/// A random nonzero element with small integer coordinates.
pub fn random_nonzero(alg: &CdAlgebra<QuadExt>, rng: &mut ChaCha8Rng) -> Result<Element<QuadExt>> {
    loop {
        let x = random_element(alg, rng)?;
        if !x.is_zero() {
            return Ok(x);
        }
    }
}

/// First `(slot, a, b)` with a nonzero associator involving `x`, over
/// `trials` random pairs.
#[allow(clippy::type_complexity)]
pub fn nucleus_witness(
    alg: &CdAlgebra<QuadExt>,
    x: &Element<QuadExt>,
    trials: usize,
    seed: u64,
) -> Result<Option<(Slot, Element<QuadExt>, Element<QuadExt>)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let a = random_element(alg, &mut rng)?;
        let b = random_element(alg, &mut rng)?;
        for slot in [Slot::First, Slot::Middle, Slot::Last] {
            let assoc = match slot {
                Slot::First => alg.associator(x, &a, &b)?,
                Slot::Middle => alg.associator(&a, x, &b)?,
                Slot::Last => alg.associator(&a, &b, x)?,
            };
            if !assoc.is_zero() {
                return Ok(Some((slot, a, b)));
            }
        }
    }
    Ok(None)
}

/// `c0 + c1 name1 + ...` with coefficients in `E`, e.g. `-sqrt(2) j`.
pub fn display_e_view(x: &Element<QuadExt>, names: &[&str]) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (i, c)) in x.terms().enumerate() {
        let name = names.get(i as usize).map_or_else(|| format!("e{i}"), |s| s.to_string());
        let coeff = c.to_string();
        let compound = coeff.trim_start_matches('-').contains([' ']);
        let term = match (i, coeff.as_str()) {
            (0, _) => coeff.clone(),
            (_, "1") => name,
            (_, "-1") => format!("-{name}"),
            _ if compound => format!("({coeff}) {name}"),
            _ => format!("{coeff} {name}"),
        };
        if k == 0 {
            out.push_str(&term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> NonAssocQuaternion {
        let k = QuadField::new(2).unwrap();
        NonAssocQuaternion::new(2, k.sqrt()).unwrap()
    }

    #[test]
    fn rejects_rational_gamma() {
        let k = QuadField::new(2).unwrap();
        assert!(matches!(
            NonAssocQuaternion::new(2, k.from_ints(3, 0)),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(NonAssocQuaternion::new(4, k.sqrt()), Err(Error::SquareRadicand(4))));
        let k3 = QuadField::new(3).unwrap();
        assert!(matches!(NonAssocQuaternion::new(2, k3.sqrt()), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn pair_view_round_trip() {
        let h = example();
        let k = h.field();
        let x = h.from_pair(k.from_ints(1, -1), k.from_ints(0, 3)).unwrap();
        assert_eq!(h.to_pair(&x).unwrap(), (k.from_ints(1, -1), k.from_ints(0, 3)));
        let c = h.to_basis_coords(&x).unwrap();
        assert_eq!(h.from_basis_coords(&c).unwrap(), x);
    }

    #[test]
    fn display_forms() {
        let h = example();
        let k = h.field();
        assert_eq!(h.display(&h.from_pair(k.zero_q(), k.from_ints(0, -1)).unwrap()), "-sqrt(2) j");
        assert_eq!(h.display(&h.from_pair(k.from_ints(2, 0), k.from_ints(1, 1)).unwrap()), "2 + (1 + sqrt(2)) j");
        assert_eq!(h.display(&h.from_pair(k.zero_q(), k.from_ints(-1, 0)).unwrap()), "-j");
        assert_eq!(h.display(&Element::zero()), "0");
    }

    trait ZeroQ {
        fn zero_q(&self) -> QuadExt;
    }
    impl ZeroQ for QuadField {
        fn zero_q(&self) -> QuadExt {
            self.from_ints(0, 0)
        }
    }

    #[test]
    fn unit_is_power_associative() {
        let h = example();
        assert!(check_third_power_assoc(h.algebra(), &h.basis(0).unwrap()).unwrap().equal);
    }
}
