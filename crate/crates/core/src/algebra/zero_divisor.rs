//! Search for pairs of nonzero elements whose product vanishes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CdAlgebra, Element};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `(f_a ± f_b)(f_c ± f_d)` with `a < b`, `c < d`.
    Structured,
    /// Random `x` with small integer coordinates; `y` from the kernel of `L_x`.
    Random,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "structured" => Ok(Family::Structured),
            "random" => Ok(Family::Random),
            other => Err(Error::Parse(format!("unknown family {other:?} (structured, random)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Search<S: Scalar> {
    pub pair: Option<(Element<S>, Element<S>)>,
    /// Products (structured) or samples (random) examined.
    pub tried: u64,
    /// True when the structured family was exhausted without hitting the budget.
    pub exhausted: bool,
}

/// Searches `family` for a zero divisor pair. `budget` caps the number of
/// candidates; `None` means the whole structured family (random search needs
/// a budget, default 100 samples).
pub fn find_zero_divisor<S: Scalar>(
    alg: &CdAlgebra<S>,
    family: Family,
    budget: Option<u64>,
    seed: u64,
) -> Result<Search<S>> {
    if alg.rational_dim().is_none() {
        return Err(Error::NoRationalCoordinates);
    }
    match family {
        Family::Structured => structured(alg, budget),
        Family::Random => random(alg, budget.unwrap_or(100), seed),
    }
}

fn two_term_elements<S: Scalar>(alg: &CdAlgebra<S>) -> Vec<Element<S>> {
    let one = S::one_in(alg.field());
    let n = alg.dim();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for neg in [false, true] {
                let cb = if neg { one.neg_ref() } else { one.clone() };
                out.push(Element::from_terms([(a, one.clone()), (b, cb)]));
            }
        }
    }
    out
}

fn structured<S: Scalar>(alg: &CdAlgebra<S>, budget: Option<u64>) -> Result<Search<S>> {
    let candidates = two_term_elements(alg);
    let mut tried = 0;
    for x in &candidates {
        for y in &candidates {
            if budget.is_some_and(|b| tried >= b) {
                return Ok(Search { pair: None, tried, exhausted: false });
            }
            tried += 1;
            if alg.mul(x, y)?.is_zero() {
                return Ok(Search { pair: Some((x.clone(), y.clone())), tried, exhausted: false });
            }
        }
    }
    Ok(Search { pair: None, tried, exhausted: true })
}

fn random<S: Scalar>(alg: &CdAlgebra<S>, budget: u64, seed: u64) -> Result<Search<S>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = alg.rational_dim().expect("checked by caller");
    for tried in 1..=budget {
        let coords: Vec<Rational> =
            (0..n).map(|_| Rational::from_integer(rng.gen_range(-2i64..=2).into())).collect();
        let x = alg.from_rational_coords(&coords)?;
        if x.is_zero() {
            continue;
        }
        if let Some(v) = alg.left_mult_matrix(&x)?.kernel_vector() {
            let y = alg.from_rational_coords(&v)?;
            debug_assert!(alg.mul(&x, &y)?.is_zero());
            return Ok(Search { pair: Some((x, y)), tried, exhausted: false });
        }
    }
    Ok(Search { pair: None, tried: budget, exhausted: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(g: &[i64]) -> CdAlgebra<Rational> {
        let g: Vec<Rational> = g.iter().map(|&v| Rational::from_integer(v.into())).collect();
        CdAlgebra::rational_tower(&g).unwrap()
    }

    #[test]
    fn quaternions_have_none() {
        let h = tower(&[-1, -1]);
        let s = find_zero_divisor(&h, Family::Structured, None, 0).unwrap();
        assert!(s.pair.is_none());
        assert!(s.exhausted);
        assert_eq!(s.tried, 12 * 12);
    }

    #[test]
    fn split_quaternions_have_some() {
        let h = tower(&[1, -1]);
        let s = find_zero_divisor(&h, Family::Structured, None, 0).unwrap();
        let (x, y) = s.pair.unwrap();
        assert!(h.mul(&x, &y).unwrap().is_zero());
        let s = find_zero_divisor(&h, Family::Random, Some(50), 3).unwrap();
        let (x, y) = s.pair.unwrap();
        assert!(!x.is_zero() && !y.is_zero());
        assert!(h.mul(&x, &y).unwrap().is_zero());
    }

    #[test]
    fn budget_stops_search() {
        let o = tower(&[-1, -1, -1]);
        let s = find_zero_divisor(&o, Family::Structured, Some(10), 0).unwrap();
        assert_eq!(s.tried, 10);
        assert!(!s.exhausted);
    }

    #[test]
    fn symbolic_coefficients_rejected() {
        let e = CdAlgebra::symbolic_tower(2).unwrap();
        assert_eq!(
            find_zero_divisor(&e, Family::Structured, None, 0).unwrap_err(),
            Error::NoRationalCoordinates
        );
    }
}
