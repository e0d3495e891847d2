//! Involution, trace and norm on general elements, and where the composition
//! law `n(xy) = n(x) n(y)` stops holding.

use cdtwist::algebra::zero_divisor::{find_zero_divisor, Family};
use cdtwist::{CdAlgebra, Element, Rational, Scalar};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn run_example() -> cdtwist::Result<()> {
    let octonions = CdAlgebra::rational_tower(&[q(-1), q(-1), q(-1)])?;
    let x = Element::from_terms([(0, q(1)), (3, q(2)), (5, q(-1))]);
    let y = Element::from_terms([(1, q(3)), (6, q(1)), (7, q(1))]);
    println!("x = {x}");
    println!("conj(x) = {}", octonions.conj(&x)?);
    println!("t(x) = {}, n(x) = {}", octonions.trace(&x)?, octonions.norm(&x)?);

    // x^2 - t(x) x + n(x) = 0
    let t = octonions.trace(&x)?;
    let n = octonions.norm(&x)?;
    let lhs = octonions.mul(&x, &x)?.sub(&x.scale(&t)).add(&octonions.scalar(n));
    println!("x^2 - t(x) x + n(x) = {lhs}");

    let xy = octonions.mul(&x, &y)?;
    let composes = octonions.norm(&xy)? == octonions.norm(&x)?.mul_ref(&octonions.norm(&y)?);
    println!("octonions: n(xy) = n(x) n(y)? {composes}");

    let assoc = octonions.associator(&octonions.basis(1)?, &octonions.basis(2)?, &octonions.basis(4)?)?;
    println!("(f1, f2, f4) = {assoc}");

    let sedenions = CdAlgebra::rational_tower(&[q(-1), q(-1), q(-1), q(-1)])?;
    if let Some((a, b)) = find_zero_divisor(&sedenions, Family::Structured, None, 0)?.pair {
        println!("sedenions: ({a}) ({b}) = {}", sedenions.mul(&a, &b)?);
        let na = sedenions.norm(&a)?;
        let nb = sedenions.norm(&b)?;
        println!("    n = {na} and {nb}, yet the product vanishes");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("invariants");
}
