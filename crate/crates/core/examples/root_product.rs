//! prod_{k=1}^{(p-1)/2} (1 - zeta_p^{kr})^2 against its closed form, for every r.

use borwein::borwein::is_prime;
use borwein::charsieve::lemma_d_product;

fn main() -> borwein::Result<()> {
    for p in (3..=23).filter(|&p| is_prime(p)) {
        let mut worst: f64 = 0.0;
        for r in 1..p {
            let l = lemma_d_product(p, r, 128)?;
            worst = worst.max(l.diff_up).max(l.modulus_dev_up);
        }
        let l = lemma_d_product(p, 1, 128)?;
        println!("p = {p:>2}: r = 1 gives {}, worst residual {worst:.1e}", l.lhs);
    }
    Ok(())
}
