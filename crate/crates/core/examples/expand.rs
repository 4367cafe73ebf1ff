//! Expand a Borwein-type product and split it by residue class mod p.
//!
//! cargo run --example expand -- 3 1 4

use borwein::borwein::{borwein_poly, check_sign_pattern, decompose_mod_p, BorweinParams};

fn main() -> borwein::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (p, s, n) = match args[..] {
        [p, s, n] => (p, s, n),
        _ => (3, 1, 3),
    };
    let params = BorweinParams::new(p, s, n)?;
    let poly = borwein_poly(&params);
    println!("{params}: degree {}", params.degree());
    println!("{poly}");

    for (t, part) in decompose_mod_p(&poly, p).iter().enumerate() {
        println!("class {t}: {part}");
    }
    let pattern = check_sign_pattern(&params);
    match pattern.conjecture {
        Some(c) => println!("{c:?} conjecture pattern holds: {}", pattern.holds),
        None => println!("sign pattern holds: {} (no classical conjecture for this pair)", pattern.holds),
    }
    Ok(())
}
