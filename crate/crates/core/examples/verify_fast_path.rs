//! Cross-checks the closed-form sign map against the recursive doubling
//! product, exhaustively for small towers and on random pairs for larger ones.

use cdtwist::algebra::verify::{verify_twist_vs_oracle, Mode};
use cdtwist::{Gammas, Rational};

pub fn run_example() -> cdtwist::Result<()> {
    for t in 1..=5 {
        let report = verify_twist_vs_oracle(t, &Gammas::Symbolic, Mode::Exhaustive)?;
        println!("t={t} symbolic exhaustive: {}", report.summary());
        assert!(report.passed);
    }
    let g: Vec<Rational> = (1..=8).map(|k| Rational::new((-k).into(), 2.into())).collect();
    let report = verify_twist_vs_oracle(8, &Gammas::Concrete(g), Mode::Random { n: 2_000, seed: 0 })?;
    println!("t=8 concrete random: {}", report.summary());
    assert!(report.passed);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("verification");
}
