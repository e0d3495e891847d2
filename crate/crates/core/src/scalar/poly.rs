use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// A monomial `g_{m1}^{e1} g_{m2}^{e2} ...` stored as `(m, e)` pairs sorted
/// by parameter index, with no zero exponents. The empty monomial is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// The single parameter `g_m` (1-based).
    pub fn var(m: u32) -> Self {
        assert!(m >= 1, "parameters are numbered from 1");
        Monomial(vec![(m, 1)])
    }

    /// Squarefree monomial from a bitmask: bit `m - 1` set means `g_m` present.
    pub fn from_mask(mask: u64) -> Self {
        Monomial((0..64).filter(|b| mask >> b & 1 == 1).map(|b| (b + 1, 1)).collect())
    }

    /// Inverse of [`Monomial::from_mask`]; `None` unless squarefree with indices <= 64.
    pub fn to_mask(&self) -> Option<u64> {
        self.0.iter().try_fold(0u64, |acc, &(m, e)| {
            (e == 1 && (1..=64).contains(&m)).then(|| acc | 1 << (m - 1))
        })
    }

    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, &(m, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "g{m}")?;
            } else {
                write!(f, "g{m}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial in `g1, g2, ...` with rational coefficients. Zero coefficients
/// are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SparsePoly { terms }
    }

    /// The parameter `g_m`.
    pub fn var(m: u32) -> Self {
        Self::term(Rational::one(), Monomial::var(m))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The only term, if the polynomial is a single nonzero term.
    pub fn as_single_term(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// The constant value, if the polynomial has no parameter dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = SparsePoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Substitutes `g_m = gammas[m - 1]`. Every entry of `gammas` must be
    /// nonzero and every parameter occurring in `self` must be covered.
    pub fn eval(&self, gammas: &[Rational]) -> Result<Rational> {
        if let Some(m) = gammas.iter().position(|g| g.is_zero()) {
            return Err(Error::InvalidParameter(format!("g{} must be nonzero", m + 1)));
        }
        let mut acc = Rational::zero();
        for (mono, c) in &self.terms {
            let mut v = c.clone();
            for &(m, e) in mono.exponents() {
                let g = gammas.get(m as usize - 1).ok_or_else(|| {
                    Error::InvalidParameter(format!("no value given for g{m}"))
                })?;
                v *= num_traits::pow(g.clone(), e as usize);
            }
            acc += v;
        }
        Ok(acc)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (mag.is_one(), m.is_one()) {
                (true, _) => write!(f, "{m}")?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

impl super::Scalar for SparsePoly {
    type Field = ();

    fn zero_in(_: &()) -> Self {
        SparsePoly::zero()
    }
    fn one_in(_: &()) -> Self {
        SparsePoly::constant(Rational::one())
    }
    fn from_rational(_: &(), r: &Rational) -> Self {
        SparsePoly::constant(r.clone())
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn belongs_to(&self, _: &()) -> bool {
        true
    }
    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_ref(&self) -> Self {
        SparsePoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
    fn galois(&self) -> Self {
        self.clone()
    }
    fn rational_dim(_: &()) -> Option<usize> {
        None
    }
    fn rational_coords(&self) -> Option<Vec<Rational>> {
        None
    }
    fn rational_basis(_: &(), _k: usize) -> Self {
        Self::one_in(&())
    }
}
