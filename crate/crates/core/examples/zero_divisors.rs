//! Zero divisor search over the two-term family `(f_a ± f_b)(f_c ± f_d)`
//! and by random sampling with exact kernels.

use cdtwist::algebra::zero_divisor::{find_zero_divisor, Family};
use cdtwist::{CdAlgebra, Rational};

pub fn run_example() -> cdtwist::Result<()> {
    let cases: [(&str, Vec<i64>); 4] = [
        ("quaternions", vec![-1, -1]),
        ("split quaternions", vec![1, -1]),
        ("octonions", vec![-1, -1, -1]),
        ("sedenions", vec![-1, -1, -1, -1]),
    ];
    for (name, g) in cases {
        let g: Vec<Rational> = g.into_iter().map(|v| Rational::from_integer(v.into())).collect();
        let alg = CdAlgebra::rational_tower(&g)?;
        let s = find_zero_divisor(&alg, Family::Structured, None, 0)?;
        match s.pair {
            Some((x, y)) => println!(
                "{name}: ({}) ({}) = 0 after {} products",
                x,
                y,
                s.tried
            ),
            None => println!("{name}: none among {} products", s.tried),
        }
    }

    let split = CdAlgebra::rational_tower(&[Rational::from_integer(1.into()), Rational::from_integer((-1).into())])?;
    if let Some((x, y)) = find_zero_divisor(&split, Family::Random, Some(20), 7)?.pair {
        println!("random: ({}) ({}) = 0", x, y);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("zero divisors");
}
