use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Sparse element `sum c_p f_p`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<S> {
    coeffs: BTreeMap<u64, S>,
}

impl<S> Default for Element<S> {
    fn default() -> Self {
        Element { coeffs: BTreeMap::new() }
    }
}

impl<S: Scalar> Element<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(index: u64, coeff: S) -> Self {
        let mut e = Self::zero();
        e.add_term(index, coeff);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u64, S)>) -> Self {
        let mut e = Self::zero();
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, index: u64) -> Option<&S> {
        self.coeffs.get(&index)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &S)> + '_ {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn max_index(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, index: u64, c: S) {
        use std::collections::btree_map::Entry;
        if c.vanishes() {
            return;
        }
        match self.coeffs.entry(index) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add_ref(&c);
                if sum.vanishes() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&i, c) in &other.coeffs {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&i, c) in &other.coeffs {
            out.add_term(i, c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Element { coeffs: self.coeffs.iter().map(|(&i, c)| (i, c.neg_ref())).collect() }
    }

    /// Coefficientwise `c * x`. Only a ring product when `c` is central.
    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&i, x)| (i, c.mul_ref(x))))
    }

    /// Applies `f` to every coefficient.
    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&i, x)| (i, f(x))))
    }

    /// Splits into the halves `(x_low, x_high)` of a doubling with half-size `half`.
    pub(crate) fn split(&self, half: u64) -> (Self, Self) {
        let mut low = BTreeMap::new();
        let mut high = BTreeMap::new();
        for (&i, c) in &self.coeffs {
            if i < half {
                low.insert(i, c.clone());
            } else {
                high.insert(i - half, c.clone());
            }
        }
        (Element { coeffs: low }, Element { coeffs: high })
    }

    pub(crate) fn join(low: Self, high: Self, half: u64) -> Self {
        let mut coeffs = low.coeffs;
        coeffs.extend(high.coeffs.into_iter().map(|(i, c)| (i + half, c)));
        Element { coeffs }
    }

    /// The coefficient of `f_0` if the element is a multiple of the unit.
    pub fn as_scalar(&self, zero: S) -> Option<S> {
        match self.coeffs.len() {
            0 => Some(zero),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }
}

impl<S: Scalar> fmt::Display for Element<S> {
    /// `1 + 2*f3 - f5`, `(1 - g1) + g2*f3`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (k, (i, c)) in self.coeffs.iter().enumerate() {
            let c = c.to_string();
            let (neg, body) = match c.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ => (false, c),
            };
            let lone = self.coeffs.len() == 1 && *i == 0;
            let body = if body.contains(' ') && !lone { format!("({body})") } else { body };
            let term = match (*i, body.as_str()) {
                (0, _) => body,
                (_, "1") => format!("f{i}"),
                _ => format!("{body}*f{i}"),
            };
            match (k, neg) {
                (0, true) => write!(f, "-{term}")?,
                (0, false) => f.write_str(&term)?,
                (_, true) => write!(f, " - {term}")?,
                (_, false) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}
