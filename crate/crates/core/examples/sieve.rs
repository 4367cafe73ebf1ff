//! The distinct-coordinate sieve on an explicit set and on a symmetric weight.

use num_rational::BigRational;

use borwein::charsieve::{li_wan_check, li_wan_symmetric, SieveInstance};

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn main() -> borwein::Result<()> {
    // X = {x in {0..3}^3 : x_0 <= x_2}, f(x) = (x_0 + 1) / (x_1 + 2)
    let mut inst = SieveInstance::new(4, 3);
    for a in 0..4 {
        for b in 0..4 {
            for c in a..4 {
                inst.insert(vec![a, b, c], q(a as i64 + 1, b as i64 + 2));
            }
        }
    }
    let (distinct, signed) = li_wan_check(&inst)?;
    println!("explicit set: distinct side {distinct}, signed side {signed}");

    let weights = [q(1, 2), q(-3, 1), q(2, 5)];
    for m in 0..=4 {
        let (lhs, rhs) = li_wan_symmetric(&weights, m)?;
        println!("symmetric, m = {m}: {lhs} = {rhs}");
    }
    Ok(())
}
