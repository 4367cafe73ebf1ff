//! Character sums over the exponent set and the character formula for N_D(b).

use borwein::borwein::BorweinParams;
use borwein::charsieve::{
    characters, n_d_alternating_all_fold, n_d_char_formula_all, n_d_main_term, s_m_chi_brute,
    s_m_chi_closed, PrecisionPolicy,
};
use borwein::progsum::render_rational;

fn main() -> borwein::Result<()> {
    let params = BorweinParams::new(5, 1, 2)?;
    let policy = PrecisionPolicy::for_params(&params);

    for chi in characters(params.group_order()).into_iter().take(6) {
        let closed = s_m_chi_closed(&params, &chi, 2, &policy)?;
        let brute = s_m_chi_brute(&params, &chi, 2, &policy)?;
        println!("t = {} (order {:>2}): S_2 = {closed}   |closed - brute| <= {:.1e}",
            chi.index(), chi.order(), closed.distance_up(&brute));
    }

    let by_chars = n_d_char_formula_all(&params, &policy)?;
    let by_fold = n_d_alternating_all_fold(&params);
    for (b, (x, y)) in by_chars.iter().zip(&by_fold).enumerate() {
        let main = n_d_main_term(&params, b as i64);
        println!("N_D({b:>2}) = {x:>4} (fold {y:>4}), main term {}", render_rational(&main.value));
    }
    Ok(())
}
