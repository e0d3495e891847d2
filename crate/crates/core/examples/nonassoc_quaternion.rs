//! A nonassociative quaternion algebra `H = E + E j` over `E = Q(sqrt(2))`
//! with `j^2 = sqrt(2)`, and its 8-dimensional doubling.

use cdtwist::nonassoc::{self, NonAssocQuaternion};
use cdtwist::QuadField;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> cdtwist::Result<()> {
    let e = QuadField::new(2)?;
    let h = NonAssocQuaternion::new(2, e.sqrt())?;
    let alg = h.algebra();
    let names = ["1", "i", "j", "k"];
    let basis: Vec<_> = (0..4).map(|i| h.basis(i)).collect::<cdtwist::Result<_>>()?;

    println!("products over Q, in coordinates (1, i, j, k):");
    for (a, x) in basis.iter().enumerate() {
        let row: Vec<String> = basis
            .iter()
            .map(|y| {
                let c = h.to_basis_coords(&alg.mul(x, y)?)?;
                Ok(format!("{:?}", c.iter().map(|v| v.to_string()).collect::<Vec<_>>()))
            })
            .collect::<cdtwist::Result<_>>()?;
        println!("  {}: {}", names[a], row.join(" "));
    }

    let j = &basis[2];
    let w = nonassoc::check_third_power_assoc(alg, j)?;
    println!("j j^2 = {}, j^2 j = {}", h.display(&w.x_x2), h.display(&w.x2_x));

    let report = nonassoc::check_flexible_basis_law(alg)?;
    println!("f_i (f_k f_i) = (f_i f_k) f_i on {}/{} pairs", report.passed(), report.pairs_checked.len());
    for f in &report.failures {
        println!("  fails for ({}, {}): {} vs {}", names[f.i], names[f.k], h.display(&f.left), h.display(&f.right));
    }

    println!("sqrt(2) in the nucleus: {}", h.nucleus_membership(&e.sqrt(), 50, 0)?);
    if let Some((slot, _, _)) = nonassoc::nucleus_witness(alg, j, 50, 0)? {
        println!("j is not: nonzero associator with j in the {slot:?} slot");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut invertible = 0;
    for _ in 0..50 {
        let x = nonassoc::random_nonzero(alg, &mut rng)?;
        invertible += usize::from(alg.left_mult_invertible(&x)?.1);
    }
    println!("left multiplication invertible for {invertible}/50 random elements");

    let octo = h.doubled(e.sqrt())?;
    let report = nonassoc::check_flexible_basis_law(&octo)?;
    println!("doubled: {}/{} pairs satisfy the basis law", report.passed(), report.pairs_checked.len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("nonassociative quaternions");
}
