//! Older bounds next to the 2pn bound, and the corollary thresholds.

use borwein::borwein::BorweinParams;
use borwein::progsum::{
    corollary_threshold, gp_records, li_bound, li_records, max_deviation, render_decimal,
    render_rational, theorem_main_records, zaharescu_bound, zaharescu_records,
};

fn main() -> borwein::Result<()> {
    println!("  n  dev(3n)  2^n   dev(pn)  dev(2pn)  3^(n/2)   dev(2q)  zaharescu(q=2)");
    for n in 2..=12 {
        let params = BorweinParams::new(3, 1, n)?;
        let li = max_deviation(&li_records(&params)?);
        let gp = max_deviation(&gp_records(&params)?);
        let main = max_deviation(&theorem_main_records(&params)?);
        let z = max_deviation(&zaharescu_records(&params, 2)?);
        let zb = zaharescu_bound(3, 2, 1, n)?;
        println!(
            "{n:>3}  {:>7}  {:>4}  {:>8}  {:>8}  {:>7.2}  {:>8}  {}",
            render_rational(&li),
            li_bound(n),
            render_rational(&gp),
            render_rational(&main),
            3f64.powf(n as f64 / 2.0),
            render_rational(&z),
            render_decimal(&zb, 4),
        );
    }

    for (p, s) in [(3, 1), (3, 2), (5, 1), (7, 1), (11, 3)] {
        println!(
            "p = {p}, s = {s}: signs settle from n = {} (p | b) and n = {} (p does not divide b)",
            corollary_threshold(p, s, true)?,
            corollary_threshold(p, s, false)?
        );
    }
    Ok(())
}
