//! Basis products `f_p f_q` in the doubling tower `E_t`, with the sign
//! recursion that produces each one.
//!
//! ```text
//! cargo run --example basis_products
//! ```

use cdtwist::twist::{self, Alpha};
use cdtwist::Rational;

pub fn run_example() -> cdtwist::Result<()> {
    let cases = [(3, 3, 5), (3, 6, 7), (3, 6, 2), (4, 4, 12), (4, 10, 3), (4, 9, 14)];
    for (t, p, q) in cases {
        let term = twist::basis_product(t, p, q)?;
        println!("t={t}: f{p} f{q} = {term}");
        println!("    {}", twist::theta_chain(t, p, q)?);
    }

    // the same coefficient, evaluated at concrete parameters
    let g: Vec<Rational> = [-1, 2, 3, -5].iter().map(|&v| Rational::from_integer(v.into())).collect();
    if let Alpha::Concrete(c) = twist::alpha_eval(4, 9, 14, Some(&g))? {
        println!("with g = (-1, 2, 3, -5): f9 f14 = {c} * f7");
    }

    // deep towers cost one pass over the bits
    let (p, q) = ((1u64 << 40) | 0b1011, (1u64 << 40) | 0b0110);
    println!("t=41: f{p} f{q} = {}", twist::basis_product(41, p, q)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("basis products");
}
