//! S_{2pn,b} three ways: dense expansion, cyclic fold, and the character formula applied
//! to the shifted Laurent product.

use borwein::borwein::{shift_data, BorweinParams};
use borwein::charsieve::PrecisionPolicy;
use borwein::progsum::{progression_sums, progression_sums_dense, progression_sums_via_characters};

fn main() -> borwein::Result<()> {
    let params = BorweinParams::new(5, 2, 3)?;
    let d = params.group_order();

    let dense = progression_sums_dense(&params, d)?;
    let fold = progression_sums(&params, d)?;
    let chars = progression_sums_via_characters(&params, &PrecisionPolicy::for_params(&params))?;

    let shift = shift_data(&params);
    println!("{params}, d = {d}, shift e = {}, sign = {}", shift.e, shift.sign);
    for (b, sum) in fold.iter().enumerate() {
        println!("b = {b:>2}  S = {sum:>12}");
    }
    assert_eq!(dense, fold);
    assert_eq!(fold, chars);
    println!("all three routes agree");
    Ok(())
}
