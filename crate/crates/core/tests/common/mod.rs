#![allow(dead_code)]

use cdtwist::{CdAlgebra, Element, Rational, Scalar, SparsePoly};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cdtwist").chain(args.iter().copied());
    let code = cdtwist::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Nonzero rational parameters for a tower of height `t`, with mixed signs
/// and denominators.
pub fn concrete_gammas(t: u32, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    (0..t)
        .map(|_| loop {
            let n = rng.gen_range(-5i64..=5);
            if n != 0 {
                break frac(n, rng.gen_range(1i64..=3));
            }
        })
        .collect()
}

/// Random element with small rational coefficients on a random subset of the basis.
pub fn random_rational(alg: &CdAlgebra<Rational>, rng: &mut ChaCha8Rng) -> Element<Rational> {
    let n = alg.dim();
    let mut x = Element::zero();
    for i in 0..n {
        if rng.gen_bool(0.6) {
            x.add_term(i, frac(rng.gen_range(-4..=4), rng.gen_range(1..=2)));
        }
    }
    x
}

/// Random element whose coefficients are small polynomials in the parameters.
pub fn random_symbolic(alg: &CdAlgebra<SparsePoly>, rng: &mut ChaCha8Rng) -> Element<SparsePoly> {
    let n = alg.dim();
    let t = alg.levels();
    let mut x = Element::zero();
    for i in 0..n {
        if rng.gen_bool(0.5) {
            let mut c = SparsePoly::constant(q(rng.gen_range(-3..=3)));
            if t > 0 && rng.gen_bool(0.3) {
                c = c.add_ref(&SparsePoly::var(rng.gen_range(1..=t)));
            }
            x.add_term(i, c);
        }
    }
    x
}
