use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Parses `"3"`, `"-1"` or `"2/7"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |part: &str| {
        part.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Parses a comma-separated list such as `"-1,-1,1/2"`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("-3").unwrap(), Rational::from_integer((-3).into()));
        assert_eq!(
            parse_rational(" 4/6 ").unwrap(),
            Rational::new(2.into(), 3.into())
        );
        assert_eq!(parse_rational("1/-2").unwrap(), Rational::new((-1).into(), 2.into()));
        assert!(matches!(parse_rational("1/0"), Err(Error::DivisionByZero)));
        assert!(matches!(parse_rational("x"), Err(Error::Parse(_))));
        assert_eq!(parse_rational_list("1,-1").unwrap(), vec![Rational::one(), -Rational::one()]);
    }

    #[test]
    fn canonical_form() {
        let r = Rational::new(BigInt::from(-10), BigInt::from(-4));
        assert_eq!(r.numer(), &BigInt::from(5));
        assert_eq!(r.denom(), &BigInt::from(2));
        let z = Rational::new(BigInt::from(0), BigInt::from(-7));
        assert_eq!(z.denom(), &BigInt::from(1));
    }
}
